#include "rra/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rra/cost_model.hpp"
#include "rra/errors.hpp"
#include "rra/path_enum.hpp"
#include "rra/rng.hpp"

namespace rra {

namespace {

constexpr double kCi95 = 1.959963984540054;

// Shortest round-trip decimal form, so parsing a CSV cell recovers the exact
// double that was written.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct MeanStd {
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ci95 = 0.0;
};

MeanStd summarize(const std::vector<double>& values) {
  MeanStd out;
  out.n = static_cast<int>(values.size());
  if (out.n == 0) return out;
  double acc = 0.0;
  for (double v : values) acc += v;
  out.mean = acc / out.n;
  if (out.n > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(sq / (out.n - 1));
    out.ci95 = kCi95 * out.stddev / std::sqrt(static_cast<double>(out.n));
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

nlohmann::json edges_to_json(const std::vector<AssignmentEdge>& edges) {
  nlohmann::json arr = nlohmann::json::array();
  for (const AssignmentEdge& e : edges) {
    arr.push_back({{"robot", e.robot}, {"goal", e.goal}, {"path", e.path}});
  }
  return arr;
}

const char* axis_name(SweepSpec::Axis axis) {
  switch (axis) {
    case SweepSpec::Axis::kDeploy:
      return "deploy";
    case SweepSpec::Axis::kKPaths:
      return "k";
    default:
      return "none";
  }
}

}  // namespace

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kHungarian:
      return "hungarian";
    case Strategy::kRandom:
      return "random";
    case Strategy::kRepeatedHungarian:
      return "repeated-hungarian";
    case Strategy::kGreedy:
      return "greedy";
    case Strategy::kBestAposteriori:
      return "best-aposteriori";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "hungarian") return Strategy::kHungarian;
  if (name == "random") return Strategy::kRandom;
  if (name == "repeated-hungarian") return Strategy::kRepeatedHungarian;
  if (name == "greedy") return Strategy::kGreedy;
  if (name == "best-aposteriori") return Strategy::kBestAposteriori;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
  };
  if (graph.node_count < 2) fail("nodes must be >= 2");
  if (graph.model == GraphModel::kGeometric && graph.connectivity_radius <= 0.0)
    fail("radius must be > 0");
  if (graph.hub_count < 1) fail("hubs must be >= 1");
  if (m_goals < 1) fail("goals must be >= 1");
  if (n_robots < m_goals) fail("robots must be >= goals");
  if (n_deploy < m_goals || n_deploy > n_robots)
    fail("deploy must satisfy goals <= deploy <= robots");
  if (k_paths < 1) fail("k-paths must be >= 1");
  if (sample_count < 1) fail("samples must be >= 1");
  if (run_count < 1) fail("runs must be >= 1");
  if (correlation_strength < 0.0 || correlation_strength > 1.0)
    fail("corr must be in [0, 1]");
  if (strategies.empty()) fail("strategies must not be empty");
  if (m_goals + graph.hub_count > graph.node_count)
    fail("goals + hubs must be <= nodes");
  if (sweep.axis != SweepSpec::Axis::kNone && sweep.values.empty())
    fail("sweep needs at least one value");
  for (int v : sweep.values) {
    if (sweep.axis == SweepSpec::Axis::kDeploy &&
        (v < m_goals || v > n_robots))
      fail("sweep deploy value outside [goals, robots]");
    if (sweep.axis == SweepSpec::Axis::kKPaths && v < 1)
      fail("sweep k value must be >= 1");
  }
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json doc;
  doc["graph"] = {
      {"nodes", graph.node_count},
      {"radius", graph.connectivity_radius},
      {"hubs", graph.hub_count},
      {"model",
       graph.model == GraphModel::kGeometric ? "geometric" : "erdos-renyi"},
      {"er_edge_prob", graph.er_edge_prob},
  };
  doc["robots"] = n_robots;
  doc["goals"] = m_goals;
  doc["deploy"] = n_deploy;
  doc["k_paths"] = k_paths;
  doc["samples"] = sample_count;
  doc["runs"] = run_count;
  doc["corr"] = correlation_strength;
  doc["seed"] = master_seed;
  doc["timing"] = timing;
  nlohmann::json strat = nlohmann::json::array();
  for (Strategy s : strategies) strat.push_back(to_string(s));
  doc["strategies"] = std::move(strat);
  doc["sweep"] = {{"axis", axis_name(sweep.axis)}, {"values", sweep.values}};
  return doc.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config document: ") + e.what());
  }
  // Results documents embed their config; accept those directly.
  if (doc.contains("config")) doc = doc.at("config");

  ExperimentConfig cfg;
  if (doc.contains("graph")) {
    const auto& g = doc.at("graph");
    if (g.contains("nodes")) cfg.graph.node_count = g.at("nodes").get<int>();
    if (g.contains("radius"))
      cfg.graph.connectivity_radius = g.at("radius").get<double>();
    if (g.contains("hubs")) cfg.graph.hub_count = g.at("hubs").get<int>();
    if (g.contains("model")) {
      const std::string m = g.at("model").get<std::string>();
      if (m == "geometric") {
        cfg.graph.model = GraphModel::kGeometric;
      } else if (m == "erdos-renyi") {
        cfg.graph.model = GraphModel::kErdosRenyi;
      } else {
        throw ParseError("config: unknown graph model '" + m + "'");
      }
    }
    if (g.contains("er_edge_prob"))
      cfg.graph.er_edge_prob = g.at("er_edge_prob").get<double>();
  }
  if (doc.contains("robots")) cfg.n_robots = doc.at("robots").get<int>();
  if (doc.contains("goals")) cfg.m_goals = doc.at("goals").get<int>();
  if (doc.contains("deploy")) cfg.n_deploy = doc.at("deploy").get<int>();
  if (doc.contains("k_paths")) cfg.k_paths = doc.at("k_paths").get<int>();
  if (doc.contains("samples")) cfg.sample_count = doc.at("samples").get<int>();
  if (doc.contains("runs")) cfg.run_count = doc.at("runs").get<int>();
  if (doc.contains("corr"))
    cfg.correlation_strength = doc.at("corr").get<double>();
  if (doc.contains("seed"))
    cfg.master_seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("timing")) cfg.timing = doc.at("timing").get<bool>();
  if (doc.contains("strategies")) {
    cfg.strategies.clear();
    for (const auto& s : doc.at("strategies")) {
      const auto parsed = parse_strategy(s.get<std::string>());
      if (!parsed) {
        throw ParseError("config: unknown strategy '" + s.get<std::string>() +
                         "'");
      }
      cfg.strategies.push_back(*parsed);
    }
  }
  if (doc.contains("sweep")) {
    const auto& sw = doc.at("sweep");
    const std::string axis =
        sw.contains("axis") ? sw.at("axis").get<std::string>() : "none";
    if (axis == "none") {
      cfg.sweep.axis = SweepSpec::Axis::kNone;
    } else if (axis == "deploy") {
      cfg.sweep.axis = SweepSpec::Axis::kDeploy;
    } else if (axis == "k") {
      cfg.sweep.axis = SweepSpec::Axis::kKPaths;
    } else {
      throw ParseError("config: unknown sweep axis '" + axis + "'");
    }
    if (sw.contains("values"))
      cfg.sweep.values = sw.at("values").get<std::vector<int>>();
  }
  return cfg;
}

std::uint64_t run_seed_for(std::uint64_t master_seed, int run_id) {
  return derive_seed(master_seed, 0x52554e00ULL + static_cast<std::uint64_t>(run_id));
}

namespace {

// Everything derived from one run seed; all strategies read the same bundle.
struct Scenario {
  TransportGraph graph;
  JointEdgeCostModel model;
  ScenarioPlacement placement;
  PathTable table;
  SampledObjective objective;
  ObservedCosts observed;
  InitialAssignment initial;
  double initial_realized = 0.0;
};

Scenario build_scenario(const ExperimentConfig& config, int k_paths,
                        const SingleRun& seeds) {
  Scenario sc;
  GraphGenConfig gc = config.graph;
  gc.seed = seeds.graph_seed;
  sc.graph = generate_random_graph(gc);
  sc.model = build_random_cost_model(sc.graph.edge_count(),
                                     config.correlation_strength,
                                     seeds.model_seed);
  sc.placement = select_placement(sc.graph, config.n_robots, config.m_goals,
                                  gc.hub_count, seeds.placement_seed);
  sc.table = build_path_table(sc.graph, sc.model, sc.placement, k_paths);
  const EdgeSampleMatrix edge_samples =
      sample_edge_costs(sc.model, config.sample_count, seeds.samples_seed);
  sc.objective = SampledObjective::from_paths(sc.table, edge_samples);
  sc.observed = draw_observed(sc.model, seeds.observed_seed);
  sc.initial = initial_assignment(sc.objective);
  sc.initial_realized =
      realized_waiting_time(sc.initial.set, sc.table, sc.observed);
  return sc;
}

SingleRun seeds_for(std::uint64_t run_seed) {
  SingleRun run;
  run.run_seed = run_seed;
  run.graph_seed = derive_seed(run_seed, 1);
  run.model_seed = derive_seed(run_seed, 2);
  run.placement_seed = derive_seed(run_seed, 3);
  run.samples_seed = derive_seed(run_seed, 4);
  run.observed_seed = derive_seed(run_seed, 5);
  run.strategy_seed = derive_seed(run_seed, 6);
  return run;
}

void solve_strategies(const ExperimentConfig& config, const Scenario& sc,
                      int budget, SingleRun& run) {
  for (Strategy strategy : config.strategies) {
    StrategyOutcome outcome;
    outcome.strategy = strategy;
    const auto start = std::chrono::steady_clock::now();
    switch (strategy) {
      case Strategy::kHungarian:
        outcome.set = sc.initial.set;
        break;
      case Strategy::kRandom:
        outcome.set = baseline_random(sc.objective, sc.initial.set.initial,
                                      budget, run.strategy_seed);
        break;
      case Strategy::kRepeatedHungarian:
        outcome.set = baseline_repeated_hungarian(
            sc.objective, sc.initial.set.initial, budget);
        break;
      case Strategy::kGreedy: {
        GreedyResult greedy = greedy_redundant_assignment(
            sc.objective, sc.initial.set.initial, budget);
        outcome.set = std::move(greedy.assignment);
        outcome.eval_count = greedy.evaluation_count;
        outcome.marginal_decreases = std::move(greedy.marginal_decreases);
        break;
      }
      case Strategy::kBestAposteriori:
        outcome.set = best_aposteriori(sc.table, sc.observed);
        break;
    }
    const double wall_ms = config.timing ? elapsed_ms(start) : 0.0;
    outcome.sampled_objective = objective_value(outcome.set, sc.objective);
    outcome.result =
        evaluate_assignment(to_string(strategy), outcome.set, sc.table,
                            sc.observed, sc.objective, sc.initial_realized,
                            wall_ms);
    run.outcomes.push_back(std::move(outcome));
  }
}

}  // namespace

SingleRun execute_single_run(const ExperimentConfig& config, int n_deploy,
                             int k_paths, std::uint64_t run_seed) {
  SingleRun run = seeds_for(run_seed);
  const Scenario sc = build_scenario(config, k_paths, run);
  run.baseline_cost = sc.initial.baseline_cost;
  run.initial_realized = sc.initial_realized;
  solve_strategies(config, sc, n_deploy - config.m_goals, run);
  return run;
}

ExperimentResults run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResults results;
  results.config = config;

  std::vector<std::pair<int, int>> points;  // (n_deploy, k_paths)
  switch (config.sweep.axis) {
    case SweepSpec::Axis::kNone:
      points.emplace_back(config.n_deploy, config.k_paths);
      break;
    case SweepSpec::Axis::kDeploy:
      for (int v : config.sweep.values) points.emplace_back(v, config.k_paths);
      break;
    case SweepSpec::Axis::kKPaths:
      for (int v : config.sweep.values) points.emplace_back(config.n_deploy, v);
      break;
  }

  for (const auto& [n_deploy, k_paths] : points) {
    const std::size_t first_row = results.runs.size();
    for (int run_id = 0; run_id < config.run_count; ++run_id) {
      const std::uint64_t run_seed = run_seed_for(config.master_seed, run_id);
      SingleRun run;
      try {
        run = execute_single_run(config, n_deploy, k_paths, run_seed);
      } catch (const std::exception& e) {
        throw std::runtime_error("run " + std::to_string(run_id) + " (seed " +
                                 std::to_string(run_seed) +
                                 ") failed: " + e.what());
      }
      for (const StrategyOutcome& outcome : run.outcomes) {
        RunRecord record;
        record.run_id = run_id;
        record.seed = run_seed;
        record.strategy = outcome.strategy;
        record.n_robots = config.n_robots;
        record.m_goals = config.m_goals;
        record.n_deploy = n_deploy;
        record.k_paths = k_paths;
        record.sample_count = config.sample_count;
        record.waiting_time_s = outcome.result.realized_waiting;
        record.normalized_waiting = outcome.result.normalized_waiting;
        record.coalition_correlation = outcome.result.coalition_correlation;
        record.deployed = outcome.result.deployed;
        record.wall_ms = outcome.result.wall_ms;
        record.eval_count = outcome.eval_count;
        results.runs.push_back(record);
      }
    }

    for (Strategy strategy : config.strategies) {
      std::vector<double> normalized;
      std::vector<double> waiting;
      std::vector<double> correlations;
      std::vector<double> evals;
      std::uint64_t max_evals = 0;
      for (std::size_t r = first_row; r < results.runs.size(); ++r) {
        const RunRecord& record = results.runs[r];
        if (record.strategy != strategy) continue;
        normalized.push_back(record.normalized_waiting);
        waiting.push_back(record.waiting_time_s);
        if (record.coalition_correlation)
          correlations.push_back(*record.coalition_correlation);
        evals.push_back(static_cast<double>(record.eval_count));
        max_evals = std::max(max_evals, record.eval_count);
      }
      const MeanStd norm = summarize(normalized);
      const MeanStd wait = summarize(waiting);
      const MeanStd corr = summarize(correlations);
      const MeanStd eval = summarize(evals);
      AggregateRecord agg;
      agg.strategy = strategy;
      agg.n_deploy = n_deploy;
      agg.k_paths = k_paths;
      agg.run_count = norm.n;
      agg.mean_normalized = norm.mean;
      agg.std_normalized = norm.stddev;
      agg.ci95_normalized = norm.ci95;
      agg.mean_waiting_s = wait.mean;
      agg.correlation_count = corr.n;
      agg.mean_correlation = corr.mean;
      agg.std_correlation = corr.stddev;
      agg.ci95_correlation = corr.ci95;
      agg.max_eval_count = max_evals;
      agg.mean_eval_count = eval.mean;
      results.aggregates.push_back(agg);
    }
  }
  return results;
}

std::string results_to_csv(const ExperimentResults& results) {
  std::string out =
      "run_id,seed,strategy,n_robots,m_goals,n_deploy,k_paths,sample_count,"
      "waiting_time_s,normalized_waiting,coalition_correlation,deployed,"
      "wall_ms\n";
  for (const RunRecord& r : results.runs) {
    out += std::to_string(r.run_id);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += to_string(r.strategy);
    out += ',';
    out += std::to_string(r.n_robots);
    out += ',';
    out += std::to_string(r.m_goals);
    out += ',';
    out += std::to_string(r.n_deploy);
    out += ',';
    out += std::to_string(r.k_paths);
    out += ',';
    out += std::to_string(r.sample_count);
    out += ',';
    out += format_double(r.waiting_time_s);
    out += ',';
    out += format_double(r.normalized_waiting);
    out += ',';
    if (r.coalition_correlation) out += format_double(*r.coalition_correlation);
    out += ',';
    out += std::to_string(r.deployed);
    out += ',';
    out += format_double(r.wall_ms);
    out += '\n';
  }
  return out;
}

std::string results_to_json(const ExperimentResults& results) {
  nlohmann::json doc;
  doc["config"] = nlohmann::json::parse(results.config.to_json());
  auto& runs = doc["runs"] = nlohmann::json::array();
  for (const RunRecord& r : results.runs) {
    nlohmann::json row;
    row["run_id"] = r.run_id;
    row["seed"] = r.seed;
    row["strategy"] = to_string(r.strategy);
    row["n_robots"] = r.n_robots;
    row["m_goals"] = r.m_goals;
    row["n_deploy"] = r.n_deploy;
    row["k_paths"] = r.k_paths;
    row["sample_count"] = r.sample_count;
    row["waiting_time_s"] = r.waiting_time_s;
    row["normalized_waiting"] = r.normalized_waiting;
    if (r.coalition_correlation) {
      row["coalition_correlation"] = *r.coalition_correlation;
    } else {
      row["coalition_correlation"] = nullptr;
    }
    row["deployed"] = r.deployed;
    row["wall_ms"] = r.wall_ms;
    runs.push_back(std::move(row));
  }
  auto& aggregates = doc["aggregates"] = nlohmann::json::array();
  for (const AggregateRecord& a : results.aggregates) {
    nlohmann::json row;
    row["strategy"] = to_string(a.strategy);
    row["n_deploy"] = a.n_deploy;
    row["k_paths"] = a.k_paths;
    row["runs"] = a.run_count;
    row["normalized_waiting"] = {{"mean", a.mean_normalized},
                                 {"std", a.std_normalized},
                                 {"ci95", a.ci95_normalized}};
    row["waiting_time_s"] = {{"mean", a.mean_waiting_s}};
    row["coalition_correlation"] = {{"count", a.correlation_count},
                                    {"mean", a.mean_correlation},
                                    {"std", a.std_correlation},
                                    {"ci95", a.ci95_correlation}};
    row["greedy_evaluations"] = {{"max", a.max_eval_count},
                                 {"mean", a.mean_eval_count}};
    aggregates.push_back(std::move(row));
  }
  return doc.dump(2);
}

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_csv(const ExperimentResults& results, const std::string& path) {
  write_file(path, results_to_csv(results));
}

void emit_json(const ExperimentResults& results, const std::string& path) {
  write_file(path, results_to_json(results));
}

std::string replay_run(const ExperimentConfig& config, std::uint64_t run_seed) {
  config.validate();
  SingleRun run = seeds_for(run_seed);
  const Scenario sc = build_scenario(config, config.k_paths, run);
  run.baseline_cost = sc.initial.baseline_cost;
  run.initial_realized = sc.initial_realized;
  solve_strategies(config, sc, config.n_deploy - config.m_goals, run);

  nlohmann::json doc;
  doc["run_seed"] = run.run_seed;
  doc["seeds"] = {
      {"graph", run.graph_seed},       {"model", run.model_seed},
      {"placement", run.placement_seed}, {"samples", run.samples_seed},
      {"observed", run.observed_seed}, {"strategy", run.strategy_seed},
  };
  doc["placement"] = {
      {"robot_locations", sc.placement.robot_locations},
      {"goal_locations", sc.placement.goal_locations},
      {"hub_nodes", sc.placement.hub_nodes},
  };
  // Candidate paths per (robot, goal) as node-index sequences, so a solution
  // can be audited without regenerating the scenario.
  auto& paths = doc["paths"] = nlohmann::json::array();
  for (int i = 0; i < sc.table.robot_count(); ++i) {
    nlohmann::json per_robot = nlohmann::json::array();
    for (int j = 0; j < sc.table.goal_count(); ++j) {
      nlohmann::json per_goal = nlohmann::json::array();
      for (const CandidatePath& p : sc.table.paths(i, j)) {
        per_goal.push_back(p.nodes);
      }
      per_robot.push_back(std::move(per_goal));
    }
    paths.push_back(std::move(per_robot));
  }
  doc["baseline_cost"] = run.baseline_cost;
  doc["initial_realized_waiting"] = run.initial_realized;
  auto& strategies = doc["strategies"] = nlohmann::json::array();
  for (const StrategyOutcome& outcome : run.outcomes) {
    nlohmann::json s;
    s["strategy"] = to_string(outcome.strategy);
    s["initial"] = edges_to_json(outcome.set.initial);
    s["redundant"] = edges_to_json(outcome.set.redundant);
    s["sampled_objective"] = outcome.sampled_objective;
    s["realized_waiting"] = outcome.result.realized_waiting;
    s["normalized_waiting"] = outcome.result.normalized_waiting;
    if (outcome.result.coalition_correlation) {
      s["coalition_correlation"] = *outcome.result.coalition_correlation;
    } else {
      s["coalition_correlation"] = nullptr;
    }
    s["marginal_decreases"] = outcome.marginal_decreases;
    s["evaluation_count"] = outcome.eval_count;
    strategies.push_back(std::move(s));
  }
  return doc.dump(2);
}

}  // namespace rra
