#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "teamcomp/errors.hpp"
#include "teamcomp/min_cost_flow.hpp"
#include "teamcomp/model.hpp"

namespace teamcomp {

// Which team member covers which requested competences. Valid assignments
// cover every request and give every member at least one competence.
struct CompetenceAssignment {
  std::map<std::string, std::set<std::string>> by_agent;

  bool operator==(const CompetenceAssignment& other) const { return by_agent == other.by_agent; }

  // The inverse map: agents assigned to cover `competence`.
  std::vector<std::string> covering(const std::string& competence) const {
    std::vector<std::string> out;
    for (const auto& [agent, competences] : by_agent) {
      if (competences.count(competence)) out.push_back(agent);
    }
    return out;
  }
};

// Transportation-arc cost: surplus is charged at (1-upsilon) * weight,
// shortfall at upsilon * weight, exact match is free. Costs are scaled by
// 1000 and rounded to nearest (ties to even) so the solver works on integers.
inline std::int64_t scaled_arc_cost(double agent_level, double required_level, double upsilon,
                                    double weight) {
  const double gap = agent_level - required_level;
  double cost = 0.0;
  if (gap > 0.0) {
    cost = gap * (1.0 - upsilon) * weight;
  } else if (gap < 0.0) {
    cost = -gap * upsilon * weight;
  }
  return static_cast<std::int64_t>(std::nearbyint(1000.0 * cost));
}

// Assignment network: source -> agents -> competence requests -> sink.
// Supply arcs carry a lower bound of 1 (every member covers something) and a
// capacity of ceil(requests/members); demand arcs pin each request to exactly
// one unit. Agents and requests are held in sorted-id order, which also fixes
// the lexicographic tie-break order.
struct FlowNetwork {
  struct NetArc {
    int from;
    int to;
    std::int64_t lower;
    std::int64_t capacity;
    std::int64_t unit_cost;
  };

  std::vector<std::string> agent_ids;    // sorted
  std::vector<std::string> request_ids;  // sorted competence ids
  std::vector<NetArc> supply_arcs;
  std::vector<NetArc> transport_arcs;  // agent-major, request-minor order
  std::vector<NetArc> demand_arcs;

  int agent_count() const { return static_cast<int>(agent_ids.size()); }
  int request_count() const { return static_cast<int>(request_ids.size()); }
  int node_count() const { return agent_count() + request_count() + 2; }
  int source() const { return 0; }
  int agent_node(int i) const { return 1 + i; }
  int request_node(int j) const { return 1 + agent_count() + j; }
  int sink() const { return agent_count() + request_count() + 1; }

  const NetArc& transport(int agent_index, int request_index) const {
    return transport_arcs[agent_index * request_count() + request_index];
  }
};

namespace detail {

struct Instance {
  TeamView agents;                     // sorted by id
  std::vector<CompetenceRequest> requests;  // sorted by competence id
  double upsilon = 0.0;

  int team_size() const { return static_cast<int>(agents.size()); }
  int request_size() const { return static_cast<int>(requests.size()); }
  std::int64_t per_agent_cap() const {
    return (request_size() + team_size() - 1) / team_size();
  }
  std::int64_t cost(int i, int j) const {
    return scaled_arc_cost(agents[i]->level(requests[j].competence), requests[j].level,
                           upsilon, requests[j].weight);
  }
};

inline Instance make_instance(const TeamView& team, const TaskType& tt) {
  if (team.size() < 2) {
    throw std::invalid_argument("assignment needs a team of at least 2 agents");
  }
  Instance inst;
  inst.agents = team;
  std::sort(inst.agents.begin(), inst.agents.end(),
            [](const AgentProfile* a, const AgentProfile* b) { return a->id < b->id; });
  inst.requests = tt.requests;
  std::sort(inst.requests.begin(), inst.requests.end(),
            [](const CompetenceRequest& a, const CompetenceRequest& b) {
              return a.competence < b.competence;
            });
  inst.upsilon = tt.upsilon;
  if (inst.request_size() < inst.team_size()) {
    throw InfeasibleError("cannot cover every agent: team has " +
                          std::to_string(inst.team_size()) + " agents but only " +
                          std::to_string(inst.request_size()) + " competence requests");
  }
  return inst;
}

}  // namespace detail

inline FlowNetwork build_network(const TeamView& team, const TaskType& tt) {
  const detail::Instance inst = detail::make_instance(team, tt);
  FlowNetwork net;
  for (const auto* agent : inst.agents) net.agent_ids.push_back(agent->id);
  for (const auto& request : inst.requests) net.request_ids.push_back(request.competence);

  const std::int64_t cap = inst.per_agent_cap();
  for (int i = 0; i < inst.team_size(); ++i) {
    net.supply_arcs.push_back({net.source(), net.agent_node(i), 1, cap, 0});
  }
  for (int i = 0; i < inst.team_size(); ++i) {
    for (int j = 0; j < inst.request_size(); ++j) {
      net.transport_arcs.push_back(
          {net.agent_node(i), net.request_node(j), 0, 1, inst.cost(i, j)});
    }
  }
  for (int j = 0; j < inst.request_size(); ++j) {
    net.demand_arcs.push_back({net.request_node(j), net.sink(), 0, 1, 0});
  }
  return net;
}

inline FlowNetwork build_network(const std::vector<AgentProfile>& team, const TaskType& tt) {
  return build_network(make_view(team), tt);
}

namespace detail {

// One flow solve over the instance. `forced` pairs are pushed through their
// arcs via the lower-bound transform (the arc disappears, its endpoints pick
// up the unit), `banned` arcs are dropped. `cost_scale`/`secondary` implement
// the lexicographic tie-break for the perturbed route. Returns the total
// base cost (forced arcs included) or nullopt when infeasible.
struct FlowOutcome {
  std::int64_t base_cost = 0;
  std::vector<std::pair<int, int>> chosen;  // (agent index, request index), forced included
};

inline std::optional<FlowOutcome> run_flow(const Instance& inst,
                                           const std::vector<std::pair<int, int>>& forced,
                                           const std::vector<char>& banned,
                                           std::int64_t cost_scale,
                                           const std::vector<std::int64_t>* secondary) {
  const int team = inst.team_size();
  const int requests = inst.request_size();
  const int nodes = team + requests + 2;
  const int source = 0;
  const int sink = nodes - 1;
  auto agent_node = [&](int i) { return 1 + i; };
  auto request_node = [&](int j) { return 1 + team + j; };

  MinCostFlow flow(nodes);
  // Supply arcs with lower bound 1: residual capacity cap-1, one mandatory
  // unit per agent moved into the node supplies.
  flow.add_supply(source, requests - team);
  flow.add_supply(sink, -static_cast<std::int64_t>(requests));
  const std::int64_t cap = inst.per_agent_cap();
  for (int i = 0; i < team; ++i) {
    flow.add_supply(agent_node(i), 1);
    flow.add_arc(source, agent_node(i), cap - 1, 0);
  }

  std::vector<char> is_forced(static_cast<std::size_t>(team) * requests, 0);
  std::int64_t forced_cost = 0;
  for (const auto& [i, j] : forced) {
    is_forced[static_cast<std::size_t>(i) * requests + j] = 1;
    forced_cost += inst.cost(i, j);
    flow.add_supply(agent_node(i), -1);
    flow.add_supply(request_node(j), 1);
  }

  std::vector<int> arc_of_pair(static_cast<std::size_t>(team) * requests, -1);
  for (int i = 0; i < team; ++i) {
    for (int j = 0; j < requests; ++j) {
      const std::size_t pair = static_cast<std::size_t>(i) * requests + j;
      if (is_forced[pair] || banned[pair]) continue;
      std::int64_t cost = inst.cost(i, j) * cost_scale;
      if (secondary) cost += (*secondary)[pair];
      arc_of_pair[pair] = flow.add_arc(agent_node(i), request_node(j), 1, cost);
    }
  }
  for (int j = 0; j < requests; ++j) {
    flow.add_arc(request_node(j), sink, 1, 0);
  }

  if (!flow.solve().has_value()) return std::nullopt;

  FlowOutcome outcome;
  outcome.base_cost = forced_cost;
  outcome.chosen = forced;
  for (int i = 0; i < team; ++i) {
    for (int j = 0; j < requests; ++j) {
      const std::size_t pair = static_cast<std::size_t>(i) * requests + j;
      if (arc_of_pair[pair] >= 0 && flow.flow_on(arc_of_pair[pair]) > 0) {
        outcome.base_cost += inst.cost(i, j);
        outcome.chosen.push_back({i, j});
      }
    }
  }
  return outcome;
}

// Tie-break route for small instances: give pair p (in ascending
// (agent, request) order) a bonus of 2^(P-1-rank(p)). The earliest pair in
// which two equal-cost assignments differ carries a bonus larger than all
// later bonuses combined, so maximizing the bonus sum picks the
// lexicographically smallest pair list. Costs become
// base * M + (2^P - bonus) with M above the maximal secondary spread, which
// keeps the primary objective intact and every arc cost non-negative.
inline constexpr int kMaxPerturbPairs = 40;

inline std::vector<std::pair<int, int>> solve_pairs(const Instance& inst) {
  const int team = inst.team_size();
  const int requests = inst.request_size();
  const int pair_count = team * requests;
  const std::vector<char> no_bans(static_cast<std::size_t>(pair_count), 0);

  if (pair_count <= kMaxPerturbPairs) {
    std::vector<std::int64_t> secondary(pair_count);
    const std::int64_t top = std::int64_t{1} << pair_count;
    for (int rank = 0; rank < pair_count; ++rank) {
      secondary[rank] = top - (std::int64_t{1} << (pair_count - 1 - rank));
    }
    const std::int64_t scale = static_cast<std::int64_t>(requests) * top + 1;
    auto outcome = run_flow(inst, {}, no_bans, scale, &secondary);
    if (!outcome) {
      throw InfeasibleError("assignment network is infeasible for team of " +
                            std::to_string(team) + " with " + std::to_string(requests) +
                            " requests");
    }
    std::sort(outcome->chosen.begin(), outcome->chosen.end());
    return outcome->chosen;
  }

  // Large instances: fix pairs one by one, keeping only choices that preserve
  // the optimal base cost.
  auto base = run_flow(inst, {}, no_bans, 1, nullptr);
  if (!base) {
    throw InfeasibleError("assignment network is infeasible for team of " +
                          std::to_string(team) + " with " + std::to_string(requests) +
                          " requests");
  }
  const std::int64_t optimal = base->base_cost;

  std::vector<std::pair<int, int>> forced;
  std::vector<char> banned(static_cast<std::size_t>(pair_count), 0);
  std::vector<char> request_taken(requests, 0);
  std::vector<int> agent_load(team, 0);
  const std::int64_t cap = inst.per_agent_cap();

  for (int rank = 0; rank < pair_count && static_cast<int>(forced.size()) < requests; ++rank) {
    const int i = rank / requests;
    const int j = rank % requests;
    if (request_taken[j] || agent_load[i] >= cap) {
      banned[rank] = 1;
      continue;
    }
    forced.push_back({i, j});
    auto attempt = run_flow(inst, forced, banned, 1, nullptr);
    if (attempt && attempt->base_cost == optimal) {
      request_taken[j] = 1;
      ++agent_load[i];
    } else {
      forced.pop_back();
      banned[rank] = 1;
    }
  }
  return forced;
}

}  // namespace detail

// Minimum-cost competence assignment; among cost ties the lexicographically
// smallest assignment by (agent-id, competence-id) is returned.
inline CompetenceAssignment solve_assignment(const TeamView& team, const TaskType& tt) {
  const detail::Instance inst = detail::make_instance(team, tt);
  CompetenceAssignment assignment;
  for (const auto& [i, j] : detail::solve_pairs(inst)) {
    assignment.by_agent[inst.agents[i]->id].insert(inst.requests[j].competence);
  }
  return assignment;
}

inline CompetenceAssignment solve_assignment(const std::vector<AgentProfile>& team,
                                             const TaskType& tt) {
  return solve_assignment(make_view(team), tt);
}

// Total scaled network cost of a given assignment (sum of its transportation
// arc costs); used to compare solver output against enumeration.
inline std::int64_t assignment_scaled_cost(const TeamView& team, const TaskType& tt,
                                           const CompetenceAssignment& assignment) {
  std::int64_t total = 0;
  for (const auto& [agent_id, competences] : assignment.by_agent) {
    const AgentProfile* agent = nullptr;
    for (const auto* candidate : team) {
      if (candidate->id == agent_id) agent = candidate;
    }
    if (agent == nullptr) throw std::invalid_argument("assignment names unknown agent " + agent_id);
    for (const auto& competence : competences) {
      for (const auto& request : tt.requests) {
        if (request.competence == competence) {
          total += scaled_arc_cost(agent->level(competence), request.level, tt.upsilon,
                                   request.weight);
        }
      }
    }
  }
  return total;
}

inline void require_valid_assignment(const TeamView& team, const TaskType& tt,
                                     const CompetenceAssignment& assignment) {
  std::set<std::string> member_ids;
  for (const auto* agent : team) member_ids.insert(agent->id);
  std::set<std::string> requested;
  for (const auto& request : tt.requests) requested.insert(request.competence);

  for (const auto& [agent_id, competences] : assignment.by_agent) {
    if (member_ids.count(agent_id) == 0) {
      throw std::invalid_argument("assignment names non-member agent \"" + agent_id + "\"");
    }
    if (competences.empty()) {
      throw std::invalid_argument("agent \"" + agent_id + "\" has an empty competence set");
    }
    for (const auto& competence : competences) {
      if (requested.count(competence) == 0) {
        throw std::invalid_argument("assigned competence \"" + competence +
                                    "\" is not requested by the task");
      }
    }
  }
  for (const auto& id : member_ids) {
    auto it = assignment.by_agent.find(id);
    if (it == assignment.by_agent.end() || it->second.empty()) {
      throw std::invalid_argument("agent \"" + id + "\" is not assigned any competence");
    }
  }
  for (const auto& competence : requested) {
    bool covered = false;
    for (const auto& [agent_id, competences] : assignment.by_agent) {
      (void)agent_id;
      if (competences.count(competence)) covered = true;
    }
    if (!covered) {
      throw std::invalid_argument("requested competence \"" + competence + "\" is uncovered");
    }
  }
}

namespace detail {

struct CompetenceDegrees {
  double under = 0.0;
  double over = 0.0;
};

inline CompetenceDegrees degrees(const TeamView& team, const TaskType& tt,
                                 const CompetenceAssignment& assignment) {
  CompetenceDegrees result;
  for (const auto& request : tt.requests) {
    double under_sum = 0.0, over_sum = 0.0;
    int under_count = 0, over_count = 0;
    for (const auto& [agent_id, competences] : assignment.by_agent) {
      if (competences.count(request.competence) == 0) continue;
      const AgentProfile* agent = nullptr;
      for (const auto* candidate : team) {
        if (candidate->id == agent_id) agent = candidate;
      }
      const double gap = agent->level(request.competence) - request.level;
      if (gap < 0.0) {
        under_sum += -gap;
        ++under_count;
      } else if (gap > 0.0) {
        over_sum += gap;
        ++over_count;
      }
    }
    // A competence with no under- (resp. over-) competent assignees
    // contributes zero to that degree.
    if (under_count > 0) result.under += request.weight * (under_sum / under_count);
    if (over_count > 0) result.over += request.weight * (over_sum / over_count);
  }
  return result;
}

}  // namespace detail

// Weighted mean shortfall of assigned agents below the required levels.
inline double undercompetence(const TeamView& team, const TaskType& tt,
                              const CompetenceAssignment& assignment) {
  require_valid_assignment(team, tt, assignment);
  return detail::degrees(team, tt, assignment).under;
}

inline double undercompetence(const std::vector<AgentProfile>& team, const TaskType& tt,
                              const CompetenceAssignment& assignment) {
  return undercompetence(make_view(team), tt, assignment);
}

// Weighted mean surplus of assigned agents above the required levels.
inline double overcompetence(const TeamView& team, const TaskType& tt,
                             const CompetenceAssignment& assignment) {
  require_valid_assignment(team, tt, assignment);
  return detail::degrees(team, tt, assignment).over;
}

inline double overcompetence(const std::vector<AgentProfile>& team, const TaskType& tt,
                             const CompetenceAssignment& assignment) {
  return overcompetence(make_view(team), tt, assignment);
}

// 1 - (upsilon * under + (1 - upsilon) * over); stays in [0,1].
inline double proficiency(const TeamView& team, const TaskType& tt,
                          const CompetenceAssignment& assignment) {
  require_valid_assignment(team, tt, assignment);
  const auto d = detail::degrees(team, tt, assignment);
  return 1.0 - (tt.upsilon * d.under + (1.0 - tt.upsilon) * d.over);
}

inline double proficiency(const std::vector<AgentProfile>& team, const TaskType& tt,
                          const CompetenceAssignment& assignment) {
  return proficiency(make_view(team), tt, assignment);
}

}  // namespace teamcomp
