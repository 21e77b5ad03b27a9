#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "teamcomp/partition.hpp"

using namespace teamcomp;
using testutil::agent;

TEST_CASE("quantity distribution worked cases") {
  CHECK(quantity_distribution(7, 2) == TeamCountPlan{{{1, 3}, {2, 2}}});
  CHECK(quantity_distribution(6, 3) == TeamCountPlan{{{2, 3}}});
  CHECK(quantity_distribution(11, 4) == TeamCountPlan{{{2, 4}, {1, 3}}});
  CHECK(quantity_distribution(24, 3) == TeamCountPlan{{{8, 3}}});

  SECTION("n below m is the sentinel") {
    const auto plan = quantity_distribution(3, 4);
    CHECK(plan.is_sentinel());
    CHECK(plan.entries == std::vector<PlanEntry>{{0, 4}});
  }

  SECTION("leftover teams below the size bounds collapse to the sentinel") {
    CHECK(quantity_distribution(6, 4).is_sentinel());
    CHECK(quantity_distribution(7, 5).is_sentinel());
  }

  SECTION("zero-count entries are dropped") {
    // 3 agents at m=2: one triplet, zero duets
    CHECK(quantity_distribution(3, 2) == TeamCountPlan{{{1, 3}}});
  }

  SECTION("arguments below two are contract violations") {
    CHECK_THROWS_AS(quantity_distribution(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(quantity_distribution(5, 1), std::invalid_argument);
  }
}

TEST_CASE("quantity distribution plans stay within the size rules") {
  for (int m = 2; m <= 6; ++m) {
    for (int n = m; n <= 40; ++n) {
      const auto plan = quantity_distribution(n, m);
      if (plan.is_sentinel()) continue;
      INFO("n=" << n << " m=" << m);
      CHECK(plan.agent_total() == n);
      int lo = 1 << 20, hi = 0;
      for (const auto& entry : plan.entries) {
        CHECK(entry.count > 0);
        CHECK(entry.size >= min_team_size(m));
        CHECK(entry.size <= max_team_size(m));
        lo = std::min(lo, entry.size);
        hi = std::max(hi, entry.size);
      }
      CHECK(hi - lo <= 1);
    }
  }
}

namespace {

Roster seven_agents() {
  Roster roster;
  for (int i = 1; i <= 7; ++i) {
    roster.agents.push_back(agent("s" + std::to_string(i), Gender::Man, {}));
  }
  return roster;
}

TeamPartition split(std::vector<std::vector<std::string>> groups) {
  TeamPartition partition;
  for (auto& group : groups) partition.teams.push_back(Team{std::move(group)});
  return partition;
}

}  // namespace

TEST_CASE("partition validation") {
  const Roster roster = seven_agents();

  SECTION("3/2/2 at m=2 is valid") {
    const auto partition =
        split({{"s1", "s2", "s3"}, {"s4", "s5"}, {"s6", "s7"}});
    CHECK(validate_partition(partition, roster, 2).empty());
  }

  SECTION("4/3 at m=2 breaks the size bound") {
    const auto partition = split({{"s1", "s2", "s3", "s4"}, {"s5", "s6", "s7"}});
    const auto violations = validate_partition(partition, roster, 2);
    REQUIRE_FALSE(violations.empty());
    bool size_violation = false;
    for (const auto& v : violations) {
      if (v.field == "size") size_violation = true;
    }
    CHECK(size_violation);
  }

  SECTION("4/2 at m=3 breaks the pairwise-difference rule") {
    Roster six;
    for (int i = 1; i <= 6; ++i) six.agents.push_back(agent("s" + std::to_string(i), Gender::Man, {}));
    const auto partition = split({{"s1", "s2", "s3", "s4"}, {"s5", "s6"}});
    const auto violations = validate_partition(partition, six, 3);
    REQUIRE_FALSE(violations.empty());
  }

  SECTION("missing and duplicated members are reported") {
    const auto missing = split({{"s1", "s2", "s3"}, {"s4", "s5"}});
    const auto violations = validate_partition(missing, roster, 2);
    REQUIRE_FALSE(violations.empty());

    const auto duplicate = split({{"s1", "s2", "s3"}, {"s3", "s4"}, {"s5", "s6", "s7"}});
    bool duped = false;
    for (const auto& v : validate_partition(duplicate, roster, 2)) {
      if (v.message.find("more than one team") != std::string::npos) duped = true;
    }
    CHECK(duped);
  }
}

TEST_CASE("synergistic value blends proficiency and congeniality") {
  CHECK(synergistic_value(0.955, 0.4, 1.0, 0.0) == Catch::Approx(0.955));
  CHECK(synergistic_value(0.955, 0.4, 0.0, 1.0) == Catch::Approx(0.4));
  CHECK(synergistic_value(0.955, 0.1, 0.8, 0.2) == Catch::Approx(0.784));
  // mu below zero can push the value negative
  CHECK(synergistic_value(0.0, 1.0, 0.5, -1.0) == Catch::Approx(-1.0));
}

TEST_CASE("partition values multiply team synergies") {
  ScoredPartition scored;
  scored.teams.resize(2);
  scored.teams[0].synergy = 0.9;
  scored.teams[1].synergy = 0.8;
  CHECK(partition_value(scored) == Catch::Approx(0.72));

  scored.teams.resize(1);
  scored.teams[0].synergy = 0.37;
  CHECK(partition_value(scored) == Catch::Approx(0.37));

  scored.teams.resize(3);
  scored.teams[1].synergy = 0.0;
  scored.teams[2].synergy = 0.5;
  CHECK(partition_value(scored) == 0.0);
  // the optimization objective clamps zero factors to the floor instead
  CHECK(clamped_partition_value(scored) == Catch::Approx(0.37 * kTeamValueFloor * 0.5));
}

TEST_CASE("scored partitions are internally consistent") {
  Roster roster;
  auto team_members = testutil::example_team();
  for (auto& member : team_members) roster.agents.push_back(member);
  roster.agents.push_back(agent("a4", Gender::Woman, {{"c1", 0.7}, {"c3", 0.5}}));
  roster.agents.push_back(agent("a5", Gender::Woman, {{"c2", 0.6}, {"c4", 0.9}}));
  roster.agents.push_back(agent("a6", Gender::Man, {{"c3", 0.3}}));
  roster.derive_universe();

  TaskType tt = testutil::example_task_type();
  tt.lambda = 0.8;
  tt.mu = 0.2;

  const auto partition = split({{"a1", "a2", "a3"}, {"a4", "a5", "a6"}});
  const auto scored = score_partition(roster, partition, tt, CongenialityParams{0.1});

  REQUIRE(scored.teams.size() == 2);
  double product = 1.0;
  for (const auto& team : scored.teams) {
    CHECK(team.synergy ==
          Catch::Approx(0.8 * team.proficiency + 0.2 * team.congeniality));
    product *= team.synergy;
  }
  CHECK(scored.product_value == Catch::Approx(product).epsilon(1e-9));
  CHECK(scored.teams[0].proficiency == Catch::Approx(0.955));  // the worked example team
}
