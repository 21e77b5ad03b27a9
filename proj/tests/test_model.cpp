#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "teamcomp/model.hpp"
#include "teamcomp/rng.hpp"

using namespace teamcomp;

namespace {

std::vector<bool> answers_of(const std::string& pattern) {
  std::vector<bool> answers;
  for (char c : pattern) answers.push_back(c == '1');
  return answers;
}

}  // namespace

TEST_CASE("questionnaire scoring extremes and splits") {
  const auto keying = default_keying();

  SECTION("all five TF questions toward thinking give tf = 1") {
    // blocks: EI, SN, TF, PJ
    const auto p = score_questionnaire(answers_of("00000" "00000" "11111" "00000"), keying);
    CHECK(p.tf == 1.0);
    CHECK(p.ei == -1.0);
  }

  SECTION("3-vs-2 split gives 0.2") {
    const auto p = score_questionnaire(answers_of("00000" "00000" "11100" "00000"), keying);
    CHECK(p.tf == Catch::Approx(0.2));
  }

  SECTION("2-vs-3 split on every dimension gives -0.2 everywhere") {
    const auto p = score_questionnaire(answers_of("11000" "11000" "11000" "11000"), keying);
    CHECK(p.sn == Catch::Approx(-0.2));
    CHECK(p.tf == Catch::Approx(-0.2));
    CHECK(p.ei == Catch::Approx(-0.2));
    CHECK(p.pj == Catch::Approx(-0.2));
  }

  SECTION("keying flips individual questions") {
    std::vector<int> keying_flipped(20, 1);
    keying_flipped[10] = -1;  // first TF question now scores "false" as thinking
    const auto p = score_questionnaire(answers_of("00000" "00000" "01111" "00000"), keying_flipped);
    CHECK(p.tf == 1.0);
  }

  SECTION("wrong answer count is rejected") {
    CHECK_THROWS_AS(score_questionnaire(std::vector<bool>(19, true), keying), ValidationError);
    CHECK_THROWS_AS(score_questionnaire(std::vector<bool>(21, true), keying), ValidationError);
    CHECK_THROWS_AS(score_questionnaire(std::vector<bool>(20, true), std::vector<int>(20, 2)),
                    ValidationError);
  }
}

TEST_CASE("questionnaire trait values are discrete fifths") {
  SeededRng rng(7);
  const auto keying = default_keying();
  for (int round = 0; round < 200; ++round) {
    std::vector<bool> answers;
    for (int q = 0; q < 20; ++q) answers.push_back(rng.next_unit() < 0.5);
    const auto p = score_questionnaire(answers, keying);
    for (double trait : {p.sn, p.tf, p.ei, p.pj}) {
      CHECK(trait >= -1.0);
      CHECK(trait <= 1.0);
      const double fifths = trait * 5.0;
      CHECK(fifths == Catch::Approx(std::round(fifths)));  // 5 * trait is an integer
      CHECK(static_cast<long long>(std::llround(fifths)) % 2 != 0);  // odd: 5 answers
    }
  }
}

TEST_CASE("questionnaire scoring is permutation-invariant within a block") {
  SeededRng rng(11);
  const auto keying = default_keying();
  for (int round = 0; round < 100; ++round) {
    std::vector<bool> answers;
    for (int q = 0; q < 20; ++q) answers.push_back(rng.next_unit() < 0.5);
    const auto base = score_questionnaire(answers, keying);

    std::vector<bool> permuted = answers;
    const std::size_t block = rng.next_below(4) * 5;
    std::vector<bool> slice(permuted.begin() + block, permuted.begin() + block + 5);
    std::vector<bool> shuffled = slice;
    rng.shuffle(shuffled);
    std::copy(shuffled.begin(), shuffled.end(), permuted.begin() + block);

    const auto same = score_questionnaire(permuted, keying);
    CHECK(same.sn == base.sn);
    CHECK(same.tf == base.tf);
    CHECK(same.ei == base.ei);
    CHECK(same.pj == base.pj);
  }
}

TEST_CASE("roster validation") {
  Roster roster;
  roster.agents = testutil::example_team();
  roster.derive_universe();

  SECTION("clean roster -> no violations") {
    CHECK(validate_roster(roster).empty());
  }

  SECTION("duplicate id is reported with the id") {
    roster.agents.push_back(roster.agents[0]);
    const auto violations = validate_roster(roster);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].subject == "a1");
    CHECK(violations[0].field == "id");
  }

  SECTION("competence level out of range") {
    roster.agents[1].competences["c2"] = 1.3;
    const auto violations = validate_roster(roster);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].subject == "a2");
    CHECK(violations[0].field == "competences.c2");
  }

  SECTION("personality trait out of range") {
    roster.agents[2].personality.pj = -1.5;
    const auto violations = validate_roster(roster);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == "personality.pj");
  }

  SECTION("competence outside the universe") {
    roster.agents[0].competences["c9"] = 0.5;
    const auto violations = validate_roster(roster);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == "competences.c9");
  }

  SECTION("single agent roster") {
    roster.agents.resize(1);
    const auto violations = validate_roster(roster);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == "agents");
  }

  SECTION("validation is idempotent") {
    roster.agents[1].competences["c2"] = 1.3;
    const auto first = validate_roster(roster);
    const auto second = validate_roster(roster);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].message == second[i].message);
    }
  }
}

TEST_CASE("task validation") {
  Task task;
  task.type = testutil::example_task_type();
  task.team_size = 3;
  CHECK(validate_task(task).empty());

  SECTION("weights must sum to one") {
    task.type.requests[0].weight = 0.3;
    CHECK_FALSE(validate_task(task).empty());
  }

  SECTION("duplicate competences rejected") {
    task.type.requests[1].competence = "c1";
    CHECK_FALSE(validate_task(task).empty());
  }

  SECTION("team size below two rejected") {
    task.team_size = 1;
    CHECK_FALSE(validate_task(task).empty());
  }

  SECTION("empty request list rejected") {
    task.type.requests.clear();
    CHECK_FALSE(validate_task(task).empty());
  }
}

TEST_CASE("missing competences read as level zero") {
  const auto team = testutil::example_team();
  CHECK(team[0].level("c3") == 0.0);
  CHECK(team[0].level("c1") == 0.9);
}
