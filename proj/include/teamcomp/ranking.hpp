#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamcomp/errors.hpp"

namespace teamcomp {

// An ordering with ties: earlier bucket = better. Ids are unique across
// buckets and sorted within each bucket.
struct PartialRanking {
  std::vector<std::vector<std::string>> buckets;

  std::size_t item_count() const {
    std::size_t n = 0;
    for (const auto& bucket : buckets) n += bucket.size();
    return n;
  }
};

// Half-even decimal rounding; ties go to the even last digit.
inline double round_half_even(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::nearbyint(value * scale) / scale;
}

// Rounds scores to discretize them, then buckets equal values, best first.
inline PartialRanking ranking_from_scores(const std::map<std::string, double>& scores,
                                          int rounding_digits) {
  if (scores.empty()) {
    throw std::invalid_argument("ranking_from_scores needs at least one score");
  }
  std::map<double, std::vector<std::string>, std::greater<double>> grouped;
  for (const auto& [id, score] : scores) {
    grouped[round_half_even(score, rounding_digits)].push_back(id);
  }
  PartialRanking ranking;
  for (auto& [value, ids] : grouped) {
    (void)value;
    std::sort(ids.begin(), ids.end());
    ranking.buckets.push_back(std::move(ids));
  }
  return ranking;
}

// Standardized Kendall Tau distance for partial rankings: a discordant pair
// costs 1, a pair tied in exactly one ranking costs tie_penalty, a pair tied
// in both costs 0; normalized by n(n-1)/2.
inline double kendall_tau_partial(const PartialRanking& r1, const PartialRanking& r2,
                                  double tie_penalty = 0.5) {
  if (tie_penalty < 0.0 || tie_penalty > 1.0) {
    throw std::invalid_argument("tie penalty outside [0,1]");
  }
  std::map<std::string, std::size_t> pos1, pos2;
  for (std::size_t b = 0; b < r1.buckets.size(); ++b) {
    for (const auto& id : r1.buckets[b]) {
      if (!pos1.emplace(id, b).second) {
        throw ValidationError("id \"" + id + "\" appears twice in the first ranking");
      }
    }
  }
  for (std::size_t b = 0; b < r2.buckets.size(); ++b) {
    for (const auto& id : r2.buckets[b]) {
      if (!pos2.emplace(id, b).second) {
        throw ValidationError("id \"" + id + "\" appears twice in the second ranking");
      }
    }
  }
  if (pos1.size() != pos2.size()) {
    throw ValidationError("rankings cover different id sets (" + std::to_string(pos1.size()) +
                          " vs " + std::to_string(pos2.size()) + " ids)");
  }
  for (const auto& [id, bucket] : pos1) {
    (void)bucket;
    if (pos2.count(id) == 0) {
      throw ValidationError("id \"" + id + "\" is missing from the second ranking");
    }
  }
  const std::size_t n = pos1.size();
  if (n < 2) {
    throw std::invalid_argument("kendall_tau_partial needs at least 2 ids");
  }

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& [id, bucket] : pos1) {
    (void)bucket;
    ids.push_back(id);
  }

  double total = 0.0;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const std::size_t a1 = pos1[ids[a]], b1 = pos1[ids[b]];
      const std::size_t a2 = pos2[ids[a]], b2 = pos2[ids[b]];
      const bool tied1 = a1 == b1;
      const bool tied2 = a2 == b2;
      if (tied1 && tied2) continue;
      if (tied1 != tied2) {
        total += tie_penalty;
      } else if ((a1 < b1) != (a2 < b2)) {
        total += 1.0;
      }
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

}  // namespace teamcomp
