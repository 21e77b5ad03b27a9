#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "teamcomp/assignment.hpp"
#include "teamcomp/congeniality.hpp"
#include "teamcomp/model.hpp"

namespace teamcomp {

// How many teams of which sizes partition n agents at target size m.
// {(0, m)} is the sentinel for "no valid plan".
struct PlanEntry {
  int count = 0;
  int size = 0;
  bool operator==(const PlanEntry& other) const {
    return count == other.count && size == other.size;
  }
};

struct TeamCountPlan {
  std::vector<PlanEntry> entries;

  bool is_sentinel() const {
    return entries.size() == 1 && entries[0].count == 0;
  }
  int team_count() const {
    int total = 0;
    for (const auto& e : entries) total += e.count;
    return total;
  }
  int agent_total() const {
    int total = 0;
    for (const auto& e : entries) total += e.count * e.size;
    return total;
  }
  int max_size() const {
    int best = 0;
    for (const auto& e : entries) best = std::max(best, e.size);
    return best;
  }
  bool operator==(const TeamCountPlan& other) const { return entries == other.entries; }
};

inline int min_team_size(int m) { return std::max(m - 1, 2); }
inline int max_team_size(int m) { return m + 1; }

namespace detail {

inline bool plan_fits_bounds(const TeamCountPlan& plan, int m) {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& entry : plan.entries) {
    if (entry.size < min_team_size(m) || entry.size > max_team_size(m)) return false;
    if (first) {
      lo = hi = entry.size;
      first = false;
    } else {
      lo = std::min(lo, entry.size);
      hi = std::max(hi, entry.size);
    }
  }
  return first || hi - lo <= 1;
}

}  // namespace detail

// Piecewise size plan: b = floor(n/m) full teams when m divides n; otherwise
// either promote n mod m teams to size m+1, or append one leftover team of
// size n mod m. Cases apply top-down, first match wins. A leftover team can
// undershoot the size bounds (e.g. n=6, m=4 leaves a pair where the minimum
// is a triple); such plans are rejected and the sentinel is returned, since
// no partition assembled from them would validate.
inline TeamCountPlan quantity_distribution(int n, int m) {
  if (n < 2 || m < 2) {
    throw std::invalid_argument("quantity_distribution needs n >= 2 and m >= 2");
  }
  const TeamCountPlan sentinel{{{0, m}}};
  if (n < m) return sentinel;

  const int b = n / m;
  const int r = n % m;
  TeamCountPlan plan;
  if (r == 0) {
    plan.entries = {{b, m}};
  } else if (r <= b) {
    plan.entries = {{r, m + 1}, {b - r, m}};
  } else {
    plan.entries = {{b, m}, {1, r}};
  }
  std::erase_if(plan.entries, [](const PlanEntry& e) { return e.count == 0; });
  if (!detail::plan_fits_bounds(plan, m)) return sentinel;
  return plan;
}

struct TeamPartition {
  std::vector<Team> teams;
};

// Canonical spelling: members sorted within teams, teams ordered by their
// member lists. Used for deterministic enumeration and tie-breaking.
inline TeamPartition canonicalize(TeamPartition partition) {
  for (auto& team : partition.teams) {
    std::sort(team.members.begin(), team.members.end());
  }
  std::sort(partition.teams.begin(), partition.teams.end(),
            [](const Team& a, const Team& b) { return a.members < b.members; });
  return partition;
}

inline std::string team_label(const Team& team) {
  std::string label = "{";
  for (std::size_t i = 0; i < team.members.size(); ++i) {
    if (i > 0) label += ",";
    label += team.members[i];
  }
  return label + "}";
}

inline std::vector<Violation> validate_partition(const TeamPartition& partition,
                                                 const Roster& roster, int m) {
  std::vector<Violation> out;
  std::set<std::string> roster_ids;
  for (const auto& agent : roster.agents) roster_ids.insert(agent.id);

  std::set<std::string> seen;
  for (const auto& team : partition.teams) {
    const std::string label = team_label(team);
    for (const auto& id : team.members) {
      if (roster_ids.count(id) == 0) {
        out.push_back({label, "members", "agent \"" + id + "\" is not in the roster"});
      }
      if (!seen.insert(id).second) {
        out.push_back({label, "members", "agent \"" + id + "\" appears in more than one team"});
      }
    }
    const int size = static_cast<int>(team.members.size());
    if (size < min_team_size(m) || size > max_team_size(m)) {
      out.push_back({label, "size",
                     "team size " + std::to_string(size) + " outside [" +
                         std::to_string(min_team_size(m)) + "," +
                         std::to_string(max_team_size(m)) + "]"});
    }
  }
  for (const auto& id : roster_ids) {
    if (seen.count(id) == 0) {
      out.push_back({"", "coverage", "agent \"" + id + "\" is not in any team"});
    }
  }
  for (std::size_t a = 0; a < partition.teams.size(); ++a) {
    for (std::size_t b = a + 1; b < partition.teams.size(); ++b) {
      const int sa = static_cast<int>(partition.teams[a].members.size());
      const int sb = static_cast<int>(partition.teams[b].members.size());
      if (std::abs(sa - sb) > 1) {
        out.push_back({team_label(partition.teams[a]) + "/" + team_label(partition.teams[b]),
                       "size", "team sizes " + std::to_string(sa) + " and " +
                                   std::to_string(sb) + " differ by more than 1"});
      }
    }
  }
  return out;
}

// lambda-weighted proficiency plus mu-weighted congeniality.
inline double synergistic_value(double proficiency_value, double congeniality_value,
                                double lambda, double mu) {
  return lambda * proficiency_value + mu * congeniality_value;
}

inline double synergistic_value(const std::vector<AgentProfile>& team, const TaskType& tt,
                                const CompetenceAssignment& assignment,
                                const CongenialityParams& params = {}) {
  return synergistic_value(proficiency(make_view(team), tt, assignment),
                           congeniality(team, params), tt.lambda, tt.mu);
}

struct ScoredTeam {
  Team team;
  CompetenceAssignment assignment;
  double proficiency = 0.0;
  double congeniality = 0.0;
  double synergy = 0.0;
};

struct ScoredPartition {
  std::vector<ScoredTeam> teams;
  double product_value = 0.0;    // plain product of team synergies
  double objective_value = 0.0;  // product of floor-clamped synergies
  int clamp_events = 0;
};

// The Bernoulli-Nash product is ill-behaved with negative factors (two bad
// teams would multiply into a good value), so the optimization objective
// clamps each factor to this floor. Reported product values stay unclamped.
inline constexpr double kTeamValueFloor = 1e-6;

inline double clamp_team_value(double synergy) {
  return synergy < kTeamValueFloor ? kTeamValueFloor : synergy;
}

inline double partition_value(const ScoredPartition& scored) {
  double product = 1.0;
  for (const auto& team : scored.teams) product *= team.synergy;
  return product;
}

inline double clamped_partition_value(const ScoredPartition& scored) {
  double product = 1.0;
  for (const auto& team : scored.teams) product *= clamp_team_value(team.synergy);
  return product;
}

namespace detail {

inline TeamView resolve_members(const Team& team,
                                const std::map<std::string, const AgentProfile*>& index) {
  TeamView view;
  view.reserve(team.members.size());
  for (const auto& id : team.members) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw std::invalid_argument("team member \"" + id + "\" is not in the roster");
    }
    view.push_back(it->second);
  }
  return view;
}

}  // namespace detail

inline std::map<std::string, const AgentProfile*> index_roster(const Roster& roster) {
  std::map<std::string, const AgentProfile*> index;
  for (const auto& agent : roster.agents) index[agent.id] = &agent;
  return index;
}

inline ScoredTeam score_team(const TeamView& members, const Team& team, const TaskType& tt,
                             const CongenialityParams& params) {
  ScoredTeam scored;
  scored.team = team;
  scored.assignment = solve_assignment(members, tt);
  scored.proficiency = proficiency(members, tt, scored.assignment);
  scored.congeniality = congeniality(members, params);
  scored.synergy = synergistic_value(scored.proficiency, scored.congeniality, tt.lambda, tt.mu);
  return scored;
}

inline ScoredPartition score_partition(const Roster& roster, const TeamPartition& partition,
                                       const TaskType& tt,
                                       const CongenialityParams& params = {}) {
  const auto index = index_roster(roster);
  ScoredPartition scored;
  for (const auto& team : partition.teams) {
    const TeamView members = detail::resolve_members(team, index);
    scored.teams.push_back(score_team(members, team, tt, params));
    if (scored.teams.back().synergy < kTeamValueFloor) ++scored.clamp_events;
  }
  scored.product_value = partition_value(scored);
  scored.objective_value = clamped_partition_value(scored);
  return scored;
}

}  // namespace teamcomp
