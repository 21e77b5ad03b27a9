#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamcomp/marks.hpp"
#include "teamcomp/model.hpp"
#include "teamcomp/optimizer.hpp"
#include "teamcomp/partition.hpp"
#include "teamcomp/ranking.hpp"

namespace teamcomp {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Reports print every real with 6 significant digits; rounding the value
// itself (rather than formatting at dump time) keeps emitted JSON numbers
// identical to what a re-scoring run produces.
inline double round_sig(double value, int significant = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", significant, value);
  return std::strtod(buffer, nullptr);
}

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace detail

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open \"" + path + "\"");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ":" + std::to_string(detail::line_of_offset(text, e.byte)) +
                          ": " + e.what());
  }
}

inline Gender parse_gender(const Json& value, const std::string& agent_id) {
  if (!value.is_string()) {
    throw ValidationError("agent \"" + agent_id + "\": gender must be a string");
  }
  const std::string text = value.get<std::string>();
  if (text == "man") return Gender::Man;
  if (text == "woman") return Gender::Woman;
  throw ValidationError("agent \"" + agent_id + "\": gender must be \"man\" or \"woman\", got \"" +
                        text + "\"");
}

inline Roster parse_roster(const Json& doc) {
  const Json* agents_node = nullptr;
  std::vector<int> keying = default_keying();
  Roster roster;
  if (doc.is_array()) {
    agents_node = &doc;
  } else if (doc.is_object()) {
    if (!doc.contains("agents")) {
      throw ValidationError("roster object needs an \"agents\" array");
    }
    agents_node = &doc.at("agents");
    if (doc.contains("keying")) {
      keying = doc.at("keying").get<std::vector<int>>();
    }
    if (doc.contains("competence_universe")) {
      for (const auto& entry : doc.at("competence_universe")) {
        roster.competence_universe.insert(entry.get<std::string>());
      }
    }
  } else {
    throw ValidationError("roster must be an array of agents or an object with \"agents\"");
  }

  try {
    for (const auto& record : *agents_node) {
      AgentProfile agent;
      if (!record.contains("id")) {
        throw ValidationError("agent record without \"id\"");
      }
      agent.id = record.at("id").get<std::string>();
      if (!record.contains("gender")) {
        throw ValidationError("agent \"" + agent.id + "\": missing gender");
      }
      agent.gender = parse_gender(record.at("gender"), agent.id);

      const bool has_profile = record.contains("personality");
      const bool has_answers = record.contains("answers");
      if (has_profile == has_answers) {
        throw ValidationError("agent \"" + agent.id +
                              "\": give exactly one of \"personality\" or \"answers\"");
      }
      if (has_profile) {
        const auto traits = record.at("personality").get<std::vector<double>>();
        if (traits.size() != 4) {
          throw ValidationError("agent \"" + agent.id +
                                "\": personality needs 4 values [sn,tf,ei,pj]");
        }
        agent.personality = {traits[0], traits[1], traits[2], traits[3]};
      } else {
        const auto answers = record.at("answers").get<std::vector<bool>>();
        agent.personality = score_questionnaire(answers, keying);
      }
      if (record.contains("competences")) {
        for (const auto& [competence, level] : record.at("competences").items()) {
          agent.competences[competence] = level.get<double>();
        }
      }
      roster.agents.push_back(std::move(agent));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed roster: ") + e.what());
  }
  if (roster.competence_universe.empty()) roster.derive_universe();
  return roster;
}

inline Task parse_task(const Json& doc) {
  Task task;
  try {
    task.type.lambda = doc.at("lambda").get<double>();
    task.type.mu = doc.at("mu").get<double>();
    task.type.upsilon = doc.at("upsilon").get<double>();
    task.team_size = doc.at("team_size").get<int>();
    for (const auto& record : doc.at("requests")) {
      CompetenceRequest request;
      request.competence = record.at("competence").get<std::string>();
      request.level = record.at("level").get<double>();
      request.weight = record.at("weight").get<double>();
      task.type.requests.push_back(std::move(request));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed task: ") + e.what());
  }
  return task;
}

inline TeamPartition parse_partition(const Json& doc) {
  TeamPartition partition;
  try {
    for (const auto& members : doc.at("teams")) {
      Team team;
      for (const auto& id : members) team.members.push_back(id.get<std::string>());
      partition.teams.push_back(std::move(team));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed partition: ") + e.what());
  }
  return partition;
}

inline std::map<std::string, double> parse_scores(const Json& doc) {
  std::map<std::string, double> scores;
  if (!doc.is_object()) {
    throw ValidationError("scores file must be an object of {id: value}");
  }
  try {
    for (const auto& [id, value] : doc.items()) scores[id] = value.get<double>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed scores: ") + e.what());
  }
  return scores;
}

inline std::map<std::string, double> parse_marks(const Json& record) {
  std::map<std::string, double> marks;
  try {
    for (const auto& [subject, value] : record.items()) marks[subject] = value.get<double>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed marks: ") + e.what());
  }
  return marks;
}

inline OrderedJson team_to_json(const ScoredTeam& scored) {
  OrderedJson node;
  node["members"] = scored.team.members;
  OrderedJson assignment = OrderedJson::object();
  for (const auto& [agent, competences] : scored.assignment.by_agent) {
    assignment[agent] = std::vector<std::string>(competences.begin(), competences.end());
  }
  node["assignment"] = std::move(assignment);
  node["proficiency"] = round_sig(scored.proficiency);
  node["congeniality"] = round_sig(scored.congeniality);
  node["synergy"] = round_sig(scored.synergy);
  return node;
}

inline OrderedJson partition_to_json(const ScoredPartition& scored) {
  OrderedJson teams = OrderedJson::array();
  for (const auto& team : scored.teams) teams.push_back(team.team.members);
  OrderedJson node;
  node["teams"] = std::move(teams);
  return node;
}

inline OrderedJson scored_partition_to_json(const ScoredPartition& scored) {
  OrderedJson node;
  OrderedJson teams = OrderedJson::array();
  for (const auto& team : scored.teams) teams.push_back(team_to_json(team));
  node["teams"] = std::move(teams);
  node["partition"] = partition_to_json(scored);
  node["product_value"] = round_sig(scored.product_value);
  node["objective_value"] = round_sig(scored.objective_value);
  node["clamp_events"] = scored.clamp_events;
  return node;
}

inline OrderedJson ranking_to_json(const PartialRanking& ranking) {
  OrderedJson buckets = OrderedJson::array();
  for (const auto& bucket : ranking.buckets) buckets.push_back(bucket);
  return buckets;
}

inline void write_report(const OrderedJson& report, std::ostream& out) {
  out << report.dump(2) << "\n";
}

}  // namespace teamcomp
