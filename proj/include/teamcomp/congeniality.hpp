#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "teamcomp/model.hpp"

namespace teamcomp {

struct CongenialityParams {
  double gamma = 0.1;  // gender-balance weight, [0,1]
};

// Population standard deviation. On values from [-1,1] this is at most 1
// (extreme two-point split), which is what keeps the congeniality terms
// commensurate.
inline double trait_dispersion(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("trait_dispersion needs at least 2 values");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double accum = 0.0;
  for (double v : values) accum += (v - mean) * (v - mean);
  return std::sqrt(accum / static_cast<double>(values.size()));
}

// Team congeniality: SN/TF diversity product, a bonus for the best
// extrovert-thinking-judging member, a bonus for the strongest introvert,
// and a sinusoidal gender-balance term. The bonus scales are derived from
// the team's own dispersions: alpha = sigma_sn * sigma_tf / 3, beta = 3 * alpha.
inline double congeniality(const TeamView& team, const CongenialityParams& params = {}) {
  if (team.size() < 2) {
    throw std::invalid_argument("congeniality needs a team of at least 2 agents");
  }
  if (params.gamma < 0.0 || params.gamma > 1.0) {
    throw std::invalid_argument("gamma outside [0,1]");
  }

  std::vector<double> sn_values, tf_values;
  sn_values.reserve(team.size());
  tf_values.reserve(team.size());
  for (const auto* agent : team) {
    sn_values.push_back(agent->personality.sn);
    tf_values.push_back(agent->personality.tf);
  }
  const double sigma_sn = trait_dispersion(sn_values);
  const double sigma_tf = trait_dispersion(tf_values);
  const double diversity = sigma_sn * sigma_tf;

  const double alpha = diversity / 3.0;
  const double beta = 3.0 * alpha;

  double etj_bonus = 0.0;
  double introvert_bonus = 0.0;
  std::size_t women = 0;
  for (const auto* agent : team) {
    const PersonalityProfile& p = agent->personality;
    etj_bonus = std::max(etj_bonus, alpha * (p.tf + p.ei + p.pj));
    introvert_bonus = std::max(introvert_bonus, -beta * p.ei);
    if (agent->gender == Gender::Woman) ++women;
  }

  double gender_term = 0.0;
  if (women > 0 && women < team.size()) {
    const double g = static_cast<double>(women) / static_cast<double>(team.size());
    gender_term = params.gamma * std::sin(std::numbers::pi * g);
  }

  return diversity + etj_bonus + introvert_bonus + gender_term;
}

inline double congeniality(const std::vector<AgentProfile>& team,
                           const CongenialityParams& params = {}) {
  return congeniality(make_view(team), params);
}

}  // namespace teamcomp
