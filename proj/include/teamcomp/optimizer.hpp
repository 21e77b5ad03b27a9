#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "teamcomp/errors.hpp"
#include "teamcomp/partition.hpp"
#include "teamcomp/rng.hpp"

namespace teamcomp {

struct AnnealConfig {
  double initial_heat = 10.0;  // the improvement loop runs while heat > 1
  double cooling_rate = 0.01;
  std::uint64_t rng_seed = 0;
  double acceptance_scale = 0.01;  // scales the Metropolis exponent
};

inline void validate_config(const AnnealConfig& cfg) {
  if (!(cfg.initial_heat > 1.0)) {
    throw ValidationError("initial heat must be greater than 1");
  }
  if (!(cfg.cooling_rate > 0.0)) {
    throw ValidationError("cooling rate must be positive");
  }
  if (!(cfg.acceptance_scale > 0.0)) {
    throw ValidationError("acceptance scale must be positive");
  }
}

inline std::int64_t anneal_iteration_count(double initial_heat, double cooling_rate) {
  return static_cast<std::int64_t>(std::ceil((initial_heat - 1.0) / cooling_rate));
}

struct OptimizeTrace {
  std::int64_t iterations = 0;
  std::int64_t improving_moves = 0;
  std::int64_t accepted_worse = 0;
  std::int64_t clamp_events = 0;
  std::vector<double> best_value_by_iteration;  // non-decreasing
};

struct OptimizeResult {
  ScoredPartition best;
  OptimizeTrace trace;
};

// Random size-constrained partition: shuffle the roster, then slice
// consecutive runs following the plan entries in order.
inline TeamPartition initial_partition(const Roster& roster, int m, SeededRng& rng) {
  const int n = static_cast<int>(roster.agents.size());
  const TeamCountPlan plan = quantity_distribution(n, m);
  if (plan.is_sentinel()) {
    throw InfeasibleError("no valid team partition for " + std::to_string(n) +
                          " agents at team size " + std::to_string(m));
  }
  std::vector<std::string> ids;
  ids.reserve(roster.agents.size());
  for (const auto& agent : roster.agents) ids.push_back(agent.id);
  rng.shuffle(ids);

  TeamPartition partition;
  std::size_t index = 0;
  for (const auto& entry : plan.entries) {
    for (int t = 0; t < entry.count; ++t) {
      Team team;
      for (int s = 0; s < entry.size; ++s) team.members.push_back(ids[index++]);
      partition.teams.push_back(std::move(team));
    }
  }
  return canonicalize(std::move(partition));
}

namespace detail {

template <class Fn>
void for_each_subset(const std::vector<std::string>& pool, std::size_t start,
                     std::size_t needed, std::vector<std::string>& chosen, Fn&& fn) {
  if (needed == 0) {
    fn(chosen);
    return;
  }
  for (std::size_t i = start; i + needed <= pool.size(); ++i) {
    chosen.push_back(pool[i]);
    for_each_subset(pool, i + 1, needed - 1, chosen, fn);
    chosen.pop_back();
  }
}

}  // namespace detail

// Every two-team split of k1 union k2 that respects the size bounds, minus
// the current split. Enumeration order is lexicographic over the sorted
// union, so it is deterministic.
inline std::vector<std::array<Team, 2>> crossover_candidates(const Team& k1, const Team& k2,
                                                             int m) {
  std::vector<std::string> pool = k1.members;
  pool.insert(pool.end(), k2.members.begin(), k2.members.end());
  std::sort(pool.begin(), pool.end());

  std::vector<std::string> current_first = k1.members;
  std::vector<std::string> current_second = k2.members;
  std::sort(current_first.begin(), current_first.end());
  std::sort(current_second.begin(), current_second.end());
  if (current_second < current_first) std::swap(current_first, current_second);

  const int total = static_cast<int>(pool.size());
  std::vector<std::array<Team, 2>> out;
  for (int size = min_team_size(m); size <= total - size; ++size) {
    const int other = total - size;
    if (other < min_team_size(m) || other > max_team_size(m)) continue;
    if (size > max_team_size(m) || other - size > 1) continue;

    const bool halves = size == other;
    std::vector<std::string> chosen;
    auto emit = [&](const std::vector<std::string>& first_members) {
      Team first{first_members};
      Team second;
      std::size_t take = 0;
      for (const auto& id : pool) {
        if (take < first_members.size() && first_members[take] == id) {
          ++take;
        } else {
          second.members.push_back(id);
        }
      }
      if (second.members < first.members) std::swap(first, second);
      if (first.members == current_first && second.members == current_second) return;
      out.push_back({std::move(first), std::move(second)});
    };
    if (halves) {
      // Pin the smallest id into the first half so each split appears once.
      chosen.push_back(pool[0]);
      detail::for_each_subset(pool, 1, size - 1, chosen, emit);
    } else {
      detail::for_each_subset(pool, 0, size, chosen, emit);
    }
  }
  return out;
}

namespace detail {

inline ScoredTeam score_team_checked(const TeamView& members, const Team& team,
                                     const TaskType& tt, const CongenialityParams& params) {
  try {
    return score_team(members, team, tt, params);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError("team " + team_label(team) + ": " + e.what());
  }
}

}  // namespace detail

// Annealed pairwise crossover search. Starts from a random valid partition,
// repeatedly replaces two random teams by their best crossover, accepts
// worsenings with probability exp(delta / (scale * heat)), and tracks the
// best partition ever seen. heat drops by cooling_rate every iteration, so
// the loop runs exactly ceil((initial_heat - 1) / cooling_rate) times.
// Deterministic for a fixed seed: the draws per iteration are the two team
// indices, then one acceptance draw when the best candidate did not improve.
inline OptimizeResult optimize(const Roster& roster, const Task& task,
                               const CongenialityParams& params, const AnnealConfig& cfg) {
  validate_config(cfg);
  const TaskType& tt = task.type;
  const auto index = index_roster(roster);

  OptimizeResult result;
  OptimizeTrace& trace = result.trace;

  SeededRng rng(cfg.rng_seed);
  TeamPartition partition = initial_partition(roster, task.team_size, rng);

  auto clamped = [&trace](double synergy) {
    if (synergy < kTeamValueFloor) {
      ++trace.clamp_events;
      return kTeamValueFloor;
    }
    return synergy;
  };

  std::vector<ScoredTeam> current;
  current.reserve(partition.teams.size());
  std::vector<double> current_clamped;
  for (const auto& team : partition.teams) {
    const TeamView members = detail::resolve_members(team, index);
    current.push_back(detail::score_team_checked(members, team, tt, params));
    current_clamped.push_back(clamped(current.back().synergy));
  }
  auto objective = [&]() {
    double product = 1.0;
    for (double v : current_clamped) product *= v;
    return product;
  };

  std::vector<ScoredTeam> best_teams = current;
  double best_value = objective();

  const std::int64_t iterations = anneal_iteration_count(cfg.initial_heat, cfg.cooling_rate);
  trace.iterations = iterations;
  trace.best_value_by_iteration.reserve(static_cast<std::size_t>(iterations));

  const std::size_t team_count = current.size();
  for (std::int64_t k = 0; k < iterations; ++k) {
    const double heat = cfg.initial_heat - static_cast<double>(k) * cfg.cooling_rate;
    if (team_count >= 2) {
      const std::size_t i = rng.next_below(team_count);
      std::size_t j = rng.next_below(team_count - 1);
      if (j >= i) ++j;
      const double contribution = current_clamped[i] * current_clamped[j];

      const auto candidates = crossover_candidates(current[i].team, current[j].team,
                                                   task.team_size);
      double best_candidate_value = 0.0;
      std::array<ScoredTeam, 2> best_candidate;
      bool have_candidate = false;
      for (const auto& candidate : candidates) {
        std::array<ScoredTeam, 2> scored;
        for (int half = 0; half < 2; ++half) {
          const TeamView members = detail::resolve_members(candidate[half], index);
          scored[half] = detail::score_team_checked(members, candidate[half], tt, params);
        }
        const double value = clamped(scored[0].synergy) * clamped(scored[1].synergy);
        if (value > best_candidate_value) {
          best_candidate_value = value;
          best_candidate = std::move(scored);
          have_candidate = true;
        }
      }

      bool accept = false;
      bool worse = false;
      if (have_candidate && best_candidate_value > contribution) {
        accept = true;
        ++trace.improving_moves;
      } else if (have_candidate) {
        const double exponent =
            (best_candidate_value - contribution) / (cfg.acceptance_scale * heat);
        const double probability = std::min(1.0, std::exp(exponent));
        worse = best_candidate_value < contribution;
        accept = probability >= rng.next_unit();
      }
      if (accept) {
        if (worse) ++trace.accepted_worse;
        const std::size_t lo = std::min(i, j);
        const std::size_t hi = std::max(i, j);
        current[lo] = std::move(best_candidate[0]);
        current[hi] = std::move(best_candidate[1]);
        current_clamped[lo] = clamped(current[lo].synergy);
        current_clamped[hi] = clamped(current[hi].synergy);
        const double value = objective();
        if (value > best_value) {
          best_value = value;
          best_teams = current;
        }
      }
    }
    trace.best_value_by_iteration.push_back(best_value);
  }

  // Re-solve assignments on the best partition before returning it.
  TeamPartition best_partition;
  for (const auto& scored : best_teams) best_partition.teams.push_back(scored.team);
  best_partition = canonicalize(std::move(best_partition));
  result.best = score_partition(roster, best_partition, tt, params);
  if (std::abs(result.best.objective_value - best_value) >
      1e-9 * std::max(1.0, std::abs(best_value))) {
    throw std::logic_error("re-scored best partition disagrees with tracked objective");
  }
  return result;
}

namespace detail {

template <class Fn>
void partitions_rec(const std::vector<std::string>& ids, std::vector<char>& used,
                    std::map<int, int>& remaining, std::vector<Team>& acc, Fn&& fn) {
  std::size_t first = ids.size();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!used[i]) {
      first = i;
      break;
    }
  }
  if (first == ids.size()) {
    TeamPartition partition;
    partition.teams = acc;
    fn(partition);
    return;
  }
  for (auto& [size, count] : remaining) {
    if (count == 0) continue;
    --count;
    used[first] = 1;

    std::vector<std::string> pool;
    std::vector<std::size_t> pool_index;
    for (std::size_t i = first + 1; i < ids.size(); ++i) {
      if (!used[i]) {
        pool.push_back(ids[i]);
        pool_index.push_back(i);
      }
    }
    std::vector<std::string> chosen;
    auto emit = [&](const std::vector<std::string>& rest) {
      Team team;
      team.members.push_back(ids[first]);
      team.members.insert(team.members.end(), rest.begin(), rest.end());
      std::size_t take = 0;
      std::vector<std::size_t> marked;
      for (std::size_t p = 0; p < pool.size() && take < rest.size(); ++p) {
        if (pool[p] == rest[take]) {
          used[pool_index[p]] = 1;
          marked.push_back(pool_index[p]);
          ++take;
        }
      }
      acc.push_back(std::move(team));
      partitions_rec(ids, used, remaining, acc, fn);
      acc.pop_back();
      for (std::size_t idx : marked) used[idx] = 0;
    };
    for_each_subset(pool, 0, static_cast<std::size_t>(size - 1), chosen, emit);

    used[first] = 0;
    ++count;
  }
}

}  // namespace detail

// Visits every partition of `ids` realizing the plan's size multiset, each
// exactly once, in a deterministic order. Teams come out with sorted members.
template <class Fn>
void for_each_partition(std::vector<std::string> ids, const TeamCountPlan& plan, Fn&& fn) {
  std::sort(ids.begin(), ids.end());
  std::map<int, int> remaining;
  for (const auto& entry : plan.entries) remaining[entry.size] += entry.count;
  std::vector<char> used(ids.size(), 0);
  std::vector<Team> acc;
  detail::partitions_rec(ids, used, remaining, acc, fn);
}

inline constexpr int kBruteForceLimit = 12;

// Exhaustive baseline: enumerate the whole search space, score every
// partition, return the argmax of the clamped product. Ties go to the
// lexicographically smallest partition.
inline ScoredPartition brute_force_optimum(const Roster& roster, const Task& task,
                                           const CongenialityParams& params = {}) {
  const int n = static_cast<int>(roster.agents.size());
  if (n > kBruteForceLimit) {
    throw std::invalid_argument("brute force enumeration is limited to " +
                                std::to_string(kBruteForceLimit) + " agents, got " +
                                std::to_string(n));
  }
  const TeamCountPlan plan = quantity_distribution(n, task.team_size);
  if (plan.is_sentinel()) {
    throw InfeasibleError("no valid team partition for " + std::to_string(n) +
                          " agents at team size " + std::to_string(task.team_size));
  }
  std::vector<std::string> ids;
  for (const auto& agent : roster.agents) ids.push_back(agent.id);

  bool found = false;
  ScoredPartition best;
  std::vector<std::vector<std::string>> best_key;
  for_each_partition(ids, plan, [&](const TeamPartition& partition) {
    const TeamPartition canonical = canonicalize(partition);
    ScoredPartition scored = score_partition(roster, canonical, task.type, params);
    std::vector<std::vector<std::string>> key;
    for (const auto& team : canonical.teams) key.push_back(team.members);
    if (!found || scored.objective_value > best.objective_value ||
        (scored.objective_value == best.objective_value && key < best_key)) {
      found = true;
      best = std::move(scored);
      best_key = std::move(key);
    }
  });
  return best;
}

}  // namespace teamcomp
