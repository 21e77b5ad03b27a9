#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teamcomp/io.hpp"

namespace teamcomp {

enum ExitCode {
  kOk = 0,
  kValidationExit = 2,
  kInfeasibleExit = 3,
  kInternalExit = 4,
};

namespace cli {

struct ComposeOptions {
  std::string roster_path;
  std::string task_path;
  std::string out_path;
  std::uint64_t seed = 0;
  double heat = 10.0;
  double cooling_rate = 0.01;
  double acceptance_scale = 0.01;
  double gamma = 0.1;
  bool oracle = false;
};

struct ScoreOptions {
  std::string roster_path;
  std::string task_path;
  std::string partition_path;
  std::string out_path;
  double gamma = 0.1;
};

struct RankCompareOptions {
  std::string scores_a_path;
  std::string scores_b_path;
  std::string out_path;
  int digits = 2;
  double tie_penalty = 0.5;
};

struct DeriveOptions {
  std::string marks_path;
  std::string out_path;
};

inline void emit(const OrderedJson& report, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    write_report(report, out);
    return;
  }
  std::ofstream file(out_path);
  if (!file) {
    throw ValidationError("cannot write \"" + out_path + "\"");
  }
  write_report(report, file);
}

inline void require_clean(const std::vector<Violation>& violations, const std::string& what) {
  if (!violations.empty()) {
    throw ValidationError("invalid " + what + ": " + format_violations(violations));
  }
}

inline std::pair<Roster, Task> load_inputs(const std::string& roster_path,
                                           const std::string& task_path) {
  Roster roster = parse_roster(load_json(roster_path));
  Task task = parse_task(load_json(task_path));
  require_clean(validate_roster(roster), "roster (" + roster_path + ")");
  require_clean(validate_task(task), "task (" + task_path + ")");
  return {std::move(roster), std::move(task)};
}

// Shared up-front feasibility checks so failures carry the n and m involved.
inline TeamCountPlan require_plan(const Roster& roster, const Task& task) {
  const int n = static_cast<int>(roster.agents.size());
  const TeamCountPlan plan = quantity_distribution(n, task.team_size);
  if (plan.is_sentinel()) {
    throw InfeasibleError("no valid team partition for n=" + std::to_string(n) +
                          " agents at team size m=" + std::to_string(task.team_size));
  }
  const int requests = static_cast<int>(task.type.requests.size());
  if (plan.max_size() > requests) {
    throw InfeasibleError("task has " + std::to_string(requests) +
                          " competence requests but the plan needs teams of up to " +
                          std::to_string(plan.max_size()) + " agents");
  }
  return plan;
}

inline int cmd_compose(const ComposeOptions& opts, std::ostream& out) {
  auto [roster, task] = load_inputs(opts.roster_path, opts.task_path);
  require_plan(roster, task);

  const CongenialityParams params{opts.gamma};
  if (params.gamma < 0.0 || params.gamma > 1.0) {
    throw ValidationError("gamma outside [0,1]");
  }

  const auto started = std::chrono::steady_clock::now();
  OptimizeResult result;
  if (opts.oracle) {
    if (roster.agents.size() > static_cast<std::size_t>(kBruteForceLimit)) {
      throw ValidationError("--oracle is limited to " + std::to_string(kBruteForceLimit) +
                            " agents, roster has " + std::to_string(roster.agents.size()));
    }
    result.best = brute_force_optimum(roster, task, params);
  } else {
    AnnealConfig cfg;
    cfg.initial_heat = opts.heat;
    cfg.cooling_rate = opts.cooling_rate;
    cfg.acceptance_scale = opts.acceptance_scale;
    cfg.rng_seed = opts.seed;
    result = optimize(roster, task, params, cfg);
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();

  OrderedJson report;
  report["command"] = "compose";
  OrderedJson config;
  config["roster"] = opts.roster_path;
  config["task"] = opts.task_path;
  config["agents"] = roster.agents.size();
  config["team_size"] = task.team_size;
  config["lambda"] = round_sig(task.type.lambda);
  config["mu"] = round_sig(task.type.mu);
  config["upsilon"] = round_sig(task.type.upsilon);
  config["gamma"] = round_sig(opts.gamma);
  config["mode"] = opts.oracle ? "oracle" : "anneal";
  if (!opts.oracle) {
    config["seed"] = opts.seed;
    config["heat"] = round_sig(opts.heat);
    config["cooling_rate"] = round_sig(opts.cooling_rate);
    config["acceptance_scale"] = round_sig(opts.acceptance_scale);
  }
  report["config"] = std::move(config);
  report.update(scored_partition_to_json(result.best));
  OrderedJson trace;
  trace["iterations"] = result.trace.iterations;
  trace["improving_moves"] = result.trace.improving_moves;
  trace["accepted_worse"] = result.trace.accepted_worse;
  trace["clamp_events"] = result.trace.clamp_events;
  report["trace"] = std::move(trace);
  report["wall_clock_ms"] = round_sig(wall_ms);

  emit(report, opts.out_path, out);
  return kOk;
}

inline int cmd_score(const ScoreOptions& opts, std::ostream& out) {
  auto [roster, task] = load_inputs(opts.roster_path, opts.task_path);
  TeamPartition partition = parse_partition(load_json(opts.partition_path));
  require_clean(validate_partition(partition, roster, task.team_size),
                "partition (" + opts.partition_path + ")");

  const CongenialityParams params{opts.gamma};
  if (params.gamma < 0.0 || params.gamma > 1.0) {
    throw ValidationError("gamma outside [0,1]");
  }

  const auto started = std::chrono::steady_clock::now();
  const ScoredPartition scored =
      score_partition(roster, canonicalize(std::move(partition)), task.type, params);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();

  OrderedJson report;
  report["command"] = "score";
  OrderedJson config;
  config["roster"] = opts.roster_path;
  config["task"] = opts.task_path;
  config["partition"] = opts.partition_path;
  config["agents"] = roster.agents.size();
  config["team_size"] = task.team_size;
  config["lambda"] = round_sig(task.type.lambda);
  config["mu"] = round_sig(task.type.mu);
  config["upsilon"] = round_sig(task.type.upsilon);
  config["gamma"] = round_sig(opts.gamma);
  report["config"] = std::move(config);
  report.update(scored_partition_to_json(scored));
  report["wall_clock_ms"] = round_sig(wall_ms);

  emit(report, opts.out_path, out);
  return kOk;
}

inline int cmd_rank_compare(const RankCompareOptions& opts, std::ostream& out) {
  const auto scores_a = parse_scores(load_json(opts.scores_a_path));
  const auto scores_b = parse_scores(load_json(opts.scores_b_path));
  if (scores_a.size() < 2) {
    throw ValidationError("scores file \"" + opts.scores_a_path + "\" needs at least 2 entries");
  }
  if (opts.tie_penalty < 0.0 || opts.tie_penalty > 1.0) {
    throw ValidationError("tie penalty outside [0,1]");
  }
  const PartialRanking ranking_a = ranking_from_scores(scores_a, opts.digits);
  const PartialRanking ranking_b = ranking_from_scores(scores_b, opts.digits);
  const double distance = kendall_tau_partial(ranking_a, ranking_b, opts.tie_penalty);

  OrderedJson report;
  report["command"] = "rank-compare";
  OrderedJson config;
  config["scores_a"] = opts.scores_a_path;
  config["scores_b"] = opts.scores_b_path;
  config["digits"] = opts.digits;
  config["tie_penalty"] = round_sig(opts.tie_penalty);
  report["config"] = std::move(config);
  report["ranking_a"] = ranking_to_json(ranking_a);
  report["ranking_b"] = ranking_to_json(ranking_b);
  report["distance"] = round_sig(distance);

  emit(report, opts.out_path, out);
  return kOk;
}

inline int cmd_derive(const DeriveOptions& opts, std::ostream& out) {
  const Json doc = load_json(opts.marks_path);
  const Json* students = nullptr;
  if (doc.is_array()) {
    students = &doc;
  } else if (doc.is_object() && doc.contains("students")) {
    students = &doc.at("students");
  } else {
    throw ValidationError("marks file must be an array of students or an object with \"students\"");
  }

  const IntelligenceMatrix matrix = IntelligenceMatrix::defaults();
  OrderedJson agents = OrderedJson::array();
  try {
    for (const auto& record : *students) {
      const std::string id = record.at("id").get<std::string>();
      const auto marks = parse_marks(record.at("marks"));
      OrderedJson competences = OrderedJson::object();
      for (const auto& [intelligence, level] : derive_competences(marks, matrix)) {
        competences[intelligence] = round_sig(level);
      }
      OrderedJson agent;
      agent["id"] = id;
      agent["competences"] = std::move(competences);
      agents.push_back(std::move(agent));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed marks file: ") + e.what());
  }

  OrderedJson fragment;
  fragment["agents"] = std::move(agents);
  emit(fragment, opts.out_path, out);
  return kOk;
}

}  // namespace cli

// Entry point shared by the binary and the tests; args exclude the program
// name. Exit codes: 0 success, 2 validation error, 3 infeasible instance,
// 4 internal invariant breach.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition a roster into proficient, congenial teams"};
  app.require_subcommand(1);

  cli::ComposeOptions compose;
  CLI::App* compose_cmd =
      app.add_subcommand("compose", "Build an optimized team partition for a task");
  compose_cmd->add_option("roster", compose.roster_path, "Roster JSON file")->required();
  compose_cmd->add_option("task", compose.task_path, "Task JSON file")->required();
  compose_cmd->add_option("--seed", compose.seed, "RNG seed");
  compose_cmd->add_option("--heat", compose.heat, "Initial annealing heat");
  compose_cmd->add_option("--cooling-rate", compose.cooling_rate, "Heat decrease per iteration");
  compose_cmd->add_option("--acceptance-scale", compose.acceptance_scale,
                          "Scale of the worse-move acceptance probability");
  compose_cmd->add_option("--gamma", compose.gamma, "Gender balance weight");
  compose_cmd->add_flag("--oracle", compose.oracle,
                        "Exhaustive search instead of annealing (small rosters)");
  compose_cmd->add_option("--out", compose.out_path, "Write the report here instead of stdout");

  cli::ScoreOptions score;
  CLI::App* score_cmd = app.add_subcommand("score", "Score a given partition without optimizing");
  score_cmd->add_option("roster", score.roster_path, "Roster JSON file")->required();
  score_cmd->add_option("task", score.task_path, "Task JSON file")->required();
  score_cmd->add_option("partition", score.partition_path, "Partition JSON file")->required();
  score_cmd->add_option("--gamma", score.gamma, "Gender balance weight");
  score_cmd->add_option("--out", score.out_path, "Write the report here instead of stdout");

  cli::RankCompareOptions rank;
  CLI::App* rank_cmd =
      app.add_subcommand("rank-compare", "Kendall Tau distance between two score files");
  rank_cmd->add_option("scores_a", rank.scores_a_path, "First scores JSON file")->required();
  rank_cmd->add_option("scores_b", rank.scores_b_path, "Second scores JSON file")->required();
  rank_cmd->add_option("--digits", rank.digits, "Rounding digits before bucketing");
  rank_cmd->add_option("--tie-penalty", rank.tie_penalty, "Cost of a pair tied in one ranking");
  rank_cmd->add_option("--out", rank.out_path, "Write the report here instead of stdout");

  cli::DeriveOptions derive;
  CLI::App* derive_cmd =
      app.add_subcommand("derive", "Derive competence levels from subject marks");
  derive_cmd->add_option("marks", derive.marks_path, "Marks JSON file")->required();
  derive_cmd->add_option("--out", derive.out_path, "Write the fragment here instead of stdout");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (compose_cmd->parsed()) return cli::cmd_compose(compose, out);
    if (score_cmd->parsed()) return cli::cmd_score(score, out);
    if (rank_cmd->parsed()) return cli::cmd_rank_compare(rank, out);
    if (derive_cmd->parsed()) return cli::cmd_derive(derive, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasibleExit;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalExit;
  }
  return kInternalExit;
}

}  // namespace teamcomp
