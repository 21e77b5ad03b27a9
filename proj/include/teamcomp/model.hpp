#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "teamcomp/errors.hpp"

namespace teamcomp {

enum class Gender { Man, Woman };

inline const char* to_string(Gender g) { return g == Gender::Man ? "man" : "woman"; }

// Four traits, each in [-1, 1]. Negative tf means a feeling type, positive a
// thinking type; the other axes read the same way (sensing/intuition,
// extrovert/introvert, perceiving/judging).
struct PersonalityProfile {
  double sn = 0.0;
  double tf = 0.0;
  double ei = 0.0;
  double pj = 0.0;
};

struct AgentProfile {
  std::string id;
  Gender gender = Gender::Man;
  PersonalityProfile personality;
  // competence id -> level in [0,1]; an absent competence counts as level 0.
  std::map<std::string, double> competences;

  double level(const std::string& competence) const {
    auto it = competences.find(competence);
    return it == competences.end() ? 0.0 : it->second;
  }
};

struct Roster {
  std::vector<AgentProfile> agents;
  std::set<std::string> competence_universe;

  // Fills the universe with every competence any agent references.
  void derive_universe() {
    for (const auto& agent : agents) {
      for (const auto& [competence, level] : agent.competences) {
        (void)level;
        competence_universe.insert(competence);
      }
    }
  }

  const AgentProfile* find(const std::string& id) const {
    for (const auto& agent : agents) {
      if (agent.id == id) return &agent;
    }
    return nullptr;
  }
};

struct CompetenceRequest {
  std::string competence;
  double level = 0.0;   // required level in [0,1]
  double weight = 0.0;  // importance in [0,1]; weights sum to 1 over a task type
};

struct TaskType {
  double lambda = 1.0;   // importance of proficiency, [0,1]
  double mu = 0.0;       // importance of congeniality, [-1,1]
  double upsilon = 0.5;  // undercompetence penalty, [0,1]
  std::vector<CompetenceRequest> requests;
};

struct Task {
  TaskType type;
  int team_size = 2;  // target team size m >= 2
};

// Members are agent ids, kept sorted so a team has one canonical spelling.
struct Team {
  std::vector<std::string> members;
};

// Borrowed view of team members; the profiles live in a roster.
using TeamView = std::vector<const AgentProfile*>;

inline TeamView make_view(const std::vector<AgentProfile>& team) {
  TeamView view;
  view.reserve(team.size());
  for (const auto& agent : team) view.push_back(&agent);
  return view;
}

struct Violation {
  std::string subject;  // agent id / team label; empty for whole-input problems
  std::string field;
  std::string message;
};

inline std::string format_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    if (!v.subject.empty()) out += v.subject + ": ";
    out += v.message;
  }
  return out;
}

// Scores the 20-question instrument. Answers come in blocks of five per
// dimension, block order EI, SN, TF, PJ; keying flips individual questions
// so that "true" can point at either pole. Each trait is
// (#answers toward the positive pole - #answers toward the negative pole) / 5.
inline PersonalityProfile score_questionnaire(const std::vector<bool>& answers,
                                              const std::vector<int>& keying) {
  if (answers.size() != 20) {
    throw ValidationError("questionnaire needs exactly 20 answers, got " +
                          std::to_string(answers.size()));
  }
  if (keying.size() != 20) {
    throw ValidationError("questionnaire keying needs exactly 20 entries, got " +
                          std::to_string(keying.size()));
  }
  for (std::size_t q = 0; q < keying.size(); ++q) {
    if (keying[q] != 1 && keying[q] != -1) {
      throw ValidationError("keying entry " + std::to_string(q) + " must be +1 or -1");
    }
  }
  auto block = [&](std::size_t b) {
    int sum = 0;
    for (std::size_t q = 5 * b; q < 5 * b + 5; ++q) {
      sum += answers[q] ? keying[q] : -keying[q];
    }
    return static_cast<double>(sum) / 5.0;
  };
  PersonalityProfile p;
  p.ei = block(0);
  p.sn = block(1);
  p.tf = block(2);
  p.pj = block(3);
  return p;
}

inline std::vector<int> default_keying() { return std::vector<int>(20, 1); }

namespace detail {

inline bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }
inline bool in_signed_unit(double v) { return v >= -1.0 && v <= 1.0; }

inline void check_trait(const std::string& id, const std::string& name, double value,
                        std::vector<Violation>& out) {
  if (!in_signed_unit(value)) {
    out.push_back({id, "personality." + name,
                   "trait " + name + " = " + std::to_string(value) + " outside [-1,1]"});
  }
}

}  // namespace detail

// Violations are data, not failures: an empty list means the roster is valid.
inline std::vector<Violation> validate_roster(const Roster& roster) {
  std::vector<Violation> out;
  if (roster.agents.size() < 2) {
    out.push_back({"", "agents",
                   "roster needs at least 2 agents, got " + std::to_string(roster.agents.size())});
  }
  std::set<std::string> seen;
  for (const auto& agent : roster.agents) {
    if (agent.id.empty()) {
      out.push_back({agent.id, "id", "agent id must be non-empty"});
    }
    if (!seen.insert(agent.id).second) {
      out.push_back({agent.id, "id", "duplicate agent id \"" + agent.id + "\""});
    }
    detail::check_trait(agent.id, "sn", agent.personality.sn, out);
    detail::check_trait(agent.id, "tf", agent.personality.tf, out);
    detail::check_trait(agent.id, "ei", agent.personality.ei, out);
    detail::check_trait(agent.id, "pj", agent.personality.pj, out);
    for (const auto& [competence, level] : agent.competences) {
      if (!detail::in_unit(level)) {
        out.push_back({agent.id, "competences." + competence,
                       "level " + std::to_string(level) + " outside [0,1]"});
      }
      if (!roster.competence_universe.empty() &&
          roster.competence_universe.count(competence) == 0) {
        out.push_back({agent.id, "competences." + competence,
                       "competence \"" + competence + "\" not in the roster universe"});
      }
    }
  }
  return out;
}

inline std::vector<Violation> validate_task(const Task& task) {
  std::vector<Violation> out;
  const TaskType& tt = task.type;
  if (!detail::in_unit(tt.lambda)) {
    out.push_back({"", "lambda", "lambda outside [0,1]"});
  }
  if (!detail::in_signed_unit(tt.mu)) {
    out.push_back({"", "mu", "mu outside [-1,1]"});
  }
  if (!detail::in_unit(tt.upsilon)) {
    out.push_back({"", "upsilon", "upsilon outside [0,1]"});
  }
  if (task.team_size < 2) {
    out.push_back({"", "team_size",
                   "team size must be at least 2, got " + std::to_string(task.team_size)});
  }
  if (tt.requests.empty()) {
    out.push_back({"", "requests", "a task type needs at least one competence request"});
  }
  std::set<std::string> seen;
  double weight_sum = 0.0;
  for (const auto& request : tt.requests) {
    if (!seen.insert(request.competence).second) {
      out.push_back({request.competence, "requests",
                     "competence \"" + request.competence + "\" requested twice"});
    }
    if (!detail::in_unit(request.level)) {
      out.push_back({request.competence, "requests.level", "required level outside [0,1]"});
    }
    if (!detail::in_unit(request.weight)) {
      out.push_back({request.competence, "requests.weight", "weight outside [0,1]"});
    }
    weight_sum += request.weight;
  }
  if (!tt.requests.empty() && std::abs(weight_sum - 1.0) > 1e-9) {
    out.push_back({"", "requests.weight",
                   "request weights must sum to 1, got " + std::to_string(weight_sum)});
  }
  return out;
}

}  // namespace teamcomp
