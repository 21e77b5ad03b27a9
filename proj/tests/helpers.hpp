#pragma once

// Shared fixtures plus independent reference implementations the suites
// check the real code against. The references are deliberately straight-line
// re-derivations, not calls into the library code they verify.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "teamcomp/model.hpp"
#include "teamcomp/rng.hpp"

namespace testutil {

using teamcomp::AgentProfile;
using teamcomp::CompetenceRequest;
using teamcomp::Gender;
using teamcomp::Task;
using teamcomp::TaskType;

inline AgentProfile agent(std::string id, Gender gender,
                          std::map<std::string, double> competences,
                          teamcomp::PersonalityProfile personality = {}) {
  AgentProfile a;
  a.id = std::move(id);
  a.gender = gender;
  a.personality = personality;
  a.competences = std::move(competences);
  return a;
}

// The worked three-agent / four-request instance with upsilon = 0.6.
inline std::vector<AgentProfile> example_team() {
  return {
      agent("a1", Gender::Woman, {{"c1", 0.9}, {"c2", 0.5}}),
      agent("a2", Gender::Man, {{"c2", 0.2}, {"c3", 0.8}}),
      agent("a3", Gender::Man, {{"c2", 0.4}, {"c4", 0.6}}),
  };
}

inline TaskType example_task_type() {
  TaskType tt;
  tt.lambda = 1.0;
  tt.mu = 0.0;
  tt.upsilon = 0.6;
  tt.requests = {
      {"c1", 0.8, 0.25},
      {"c2", 0.6, 0.25},
      {"c3", 0.6, 0.25},
      {"c4", 0.6, 0.25},
  };
  return tt;
}

// Straight-line re-derivation of the congeniality formula.
inline double reference_congeniality(const std::vector<AgentProfile>& team, double gamma) {
  const double n = static_cast<double>(team.size());
  double sn_mean = 0.0, tf_mean = 0.0;
  for (const auto& a : team) {
    sn_mean += a.personality.sn;
    tf_mean += a.personality.tf;
  }
  sn_mean /= n;
  tf_mean /= n;
  double sn_var = 0.0, tf_var = 0.0;
  for (const auto& a : team) {
    sn_var += (a.personality.sn - sn_mean) * (a.personality.sn - sn_mean);
    tf_var += (a.personality.tf - tf_mean) * (a.personality.tf - tf_mean);
  }
  const double sigma_sn = std::sqrt(sn_var / n);
  const double sigma_tf = std::sqrt(tf_var / n);

  const double alpha = sigma_sn * sigma_tf / 3.0;
  const double beta = 3.0 * alpha;
  double term2 = 0.0, term3 = 0.0;
  for (const auto& a : team) {
    term2 = std::max(term2, alpha * (a.personality.tf + a.personality.ei + a.personality.pj));
    term3 = std::max(term3, -beta * a.personality.ei);
  }
  double women = 0.0;
  for (const auto& a : team) {
    if (a.gender == Gender::Woman) women += 1.0;
  }
  double term4 = 0.0;
  if (women > 0.0 && women < n) {
    term4 = gamma * std::sin(3.14159265358979323846 * (women / n));
  }
  return sigma_sn * sigma_tf + term2 + term3 + term4;
}

// Independent arc-cost line for the enumeration oracle.
inline std::int64_t reference_arc_cost(double have, double need, double upsilon, double weight) {
  double c = 0.0;
  if (have > need) c = (have - need) * (1.0 - upsilon) * weight;
  if (have < need) c = (need - have) * upsilon * weight;
  return static_cast<std::int64_t>(std::nearbyint(1000.0 * c));
}

struct OracleAssignment {
  std::int64_t cost = 0;
  // sorted (agent index, request index) pairs of the lex-min optimal solution
  std::vector<std::pair<int, int>> pairs;
  bool feasible = false;
};

// Exhaustive oracle over all single-agent-per-request assignments obeying the
// network's side constraints: per-agent load at most ceil(R/T), every agent
// covering at least one request. Ties resolve to the smallest sorted pair
// list, mirroring the documented tie-break.
inline OracleAssignment oracle_assignment(const std::vector<AgentProfile>& team,
                                          const TaskType& tt) {
  std::vector<const AgentProfile*> agents;
  for (const auto& a : team) agents.push_back(&a);
  std::sort(agents.begin(), agents.end(),
            [](const AgentProfile* x, const AgentProfile* y) { return x->id < y->id; });
  std::vector<CompetenceRequest> requests = tt.requests;
  std::sort(requests.begin(), requests.end(),
            [](const CompetenceRequest& x, const CompetenceRequest& y) {
              return x.competence < y.competence;
            });

  const int team_size = static_cast<int>(agents.size());
  const int request_size = static_cast<int>(requests.size());
  const int cap = (request_size + team_size - 1) / team_size;

  OracleAssignment best;
  std::vector<int> choice(request_size, 0);
  while (true) {
    std::vector<int> load(team_size, 0);
    for (int j = 0; j < request_size; ++j) ++load[choice[j]];
    bool ok = true;
    for (int i = 0; i < team_size; ++i) {
      if (load[i] < 1 || load[i] > cap) ok = false;
    }
    if (ok) {
      std::int64_t cost = 0;
      for (int j = 0; j < request_size; ++j) {
        cost += reference_arc_cost(agents[choice[j]]->level(requests[j].competence),
                                   requests[j].level, tt.upsilon, requests[j].weight);
      }
      std::vector<std::pair<int, int>> pairs;
      for (int j = 0; j < request_size; ++j) pairs.push_back({choice[j], j});
      std::sort(pairs.begin(), pairs.end());
      if (!best.feasible || cost < best.cost || (cost == best.cost && pairs < best.pairs)) {
        best.feasible = true;
        best.cost = cost;
        best.pairs = std::move(pairs);
      }
    }
    int j = request_size - 1;
    while (j >= 0 && choice[j] == team_size - 1) {
      choice[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++choice[j];
  }
  return best;
}

// Translates oracle pairs into the id-keyed shape the solver returns.
inline std::map<std::string, std::set<std::string>> oracle_by_agent(
    const std::vector<AgentProfile>& team, const TaskType& tt, const OracleAssignment& oracle) {
  std::vector<std::string> agent_ids;
  for (const auto& a : team) agent_ids.push_back(a.id);
  std::sort(agent_ids.begin(), agent_ids.end());
  std::vector<std::string> request_ids;
  for (const auto& r : tt.requests) request_ids.push_back(r.competence);
  std::sort(request_ids.begin(), request_ids.end());

  std::map<std::string, std::set<std::string>> by_agent;
  for (const auto& [i, j] : oracle.pairs) by_agent[agent_ids[i]].insert(request_ids[j]);
  return by_agent;
}

// Pair-by-pair Kendall Tau costing over bucket positions.
inline double reference_kendall(const std::vector<std::vector<std::string>>& r1,
                                const std::vector<std::vector<std::string>>& r2,
                                double penalty) {
  std::map<std::string, int> p1, p2;
  for (std::size_t b = 0; b < r1.size(); ++b) {
    for (const auto& id : r1[b]) p1[id] = static_cast<int>(b);
  }
  for (std::size_t b = 0; b < r2.size(); ++b) {
    for (const auto& id : r2[b]) p2[id] = static_cast<int>(b);
  }
  std::vector<std::string> ids;
  for (const auto& [id, pos] : p1) {
    (void)pos;
    ids.push_back(id);
  }
  double total = 0.0;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const int x1 = p1[ids[a]], y1 = p1[ids[b]];
      const int x2 = p2[ids[a]], y2 = p2[ids[b]];
      if (x1 == y1 && x2 == y2) continue;
      if (x1 == y1 || x2 == y2) {
        total += penalty;
      } else if ((x1 < y1) != (x2 < y2)) {
        total += 1.0;
      }
    }
  }
  const double n = static_cast<double>(ids.size());
  return total / (n * (n - 1.0) / 2.0);
}

// Random valid instance for the flow-vs-oracle and Prop.-1 style fuzzing.
struct RandomInstance {
  std::vector<AgentProfile> team;
  TaskType tt;
};

inline RandomInstance random_instance(teamcomp::SeededRng& rng, int team_size, int request_size) {
  RandomInstance inst;
  for (int i = 0; i < team_size; ++i) {
    AgentProfile a;
    a.id = "a" + std::to_string(i + 1);
    a.gender = rng.next_unit() < 0.5 ? Gender::Man : Gender::Woman;
    a.personality = {2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0,
                     2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
    inst.team.push_back(std::move(a));
  }
  inst.tt.lambda = rng.next_unit();
  inst.tt.mu = 2.0 * rng.next_unit() - 1.0;
  inst.tt.upsilon = rng.next_unit();
  std::vector<double> weights;
  double weight_sum = 0.0;
  for (int j = 0; j < request_size; ++j) {
    weights.push_back(rng.next_unit() + 1e-3);
    weight_sum += weights.back();
  }
  for (int j = 0; j < request_size; ++j) {
    CompetenceRequest request;
    request.competence = "c" + std::to_string(j + 1);
    request.level = rng.next_unit();
    request.weight = weights[j] / weight_sum;
    inst.tt.requests.push_back(std::move(request));
    for (auto& member : inst.team) {
      if (rng.next_unit() < 0.7) {
        member.competences["c" + std::to_string(j + 1)] = rng.next_unit();
      }
    }
  }
  return inst;
}

}  // namespace testutil
