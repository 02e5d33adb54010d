#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rra/assignment.hpp"
#include "rra/metrics.hpp"
#include "rra/transport_graph.hpp"

namespace rra {

enum class Strategy {
  kHungarian,
  kRandom,
  kRepeatedHungarian,
  kGreedy,
  kBestAposteriori,
};

std::string to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

struct SweepSpec {
  enum class Axis { kNone, kDeploy, kKPaths };
  Axis axis = Axis::kNone;
  std::vector<int> values;
};

struct ExperimentConfig {
  GraphGenConfig graph;  // per-run seed is derived, graph.seed is unused
  int n_robots = 25;
  int m_goals = 5;
  int n_deploy = 20;
  int k_paths = 4;
  int sample_count = 200;
  int run_count = 500;
  double correlation_strength = 0.5;
  std::vector<Strategy> strategies{
      Strategy::kHungarian, Strategy::kRandom, Strategy::kRepeatedHungarian,
      Strategy::kGreedy, Strategy::kBestAposteriori};
  std::uint64_t master_seed = 42;
  SweepSpec sweep;
  // Timing is opt-in so that default outputs are byte-reproducible.
  bool timing = false;

  void validate() const;  // throws naming the offending field
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& document);
};

// One CSV data row.
struct RunRecord {
  int run_id = 0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::kHungarian;
  int n_robots = 0;
  int m_goals = 0;
  int n_deploy = 0;
  int k_paths = 0;
  int sample_count = 0;
  double waiting_time_s = 0.0;
  double normalized_waiting = 0.0;
  std::optional<double> coalition_correlation;
  int deployed = 0;
  double wall_ms = 0.0;
  std::uint64_t eval_count = 0;  // greedy only; reported in the JSON aggregates
};

struct AggregateRecord {
  Strategy strategy = Strategy::kHungarian;
  int n_deploy = 0;
  int k_paths = 0;
  int run_count = 0;
  double mean_normalized = 0.0;
  double std_normalized = 0.0;
  double ci95_normalized = 0.0;
  double mean_waiting_s = 0.0;
  int correlation_count = 0;
  double mean_correlation = 0.0;
  double std_correlation = 0.0;
  double ci95_correlation = 0.0;
  std::uint64_t max_eval_count = 0;
  double mean_eval_count = 0.0;
};

struct ExperimentResults {
  ExperimentConfig config;
  std::vector<RunRecord> runs;
  std::vector<AggregateRecord> aggregates;
};

// Per-strategy outcome of one instance, kept for replay and tests.
struct StrategyOutcome {
  Strategy strategy = Strategy::kHungarian;
  AssignmentSet set;
  RunResult result;
  double sampled_objective = 0.0;
  std::uint64_t eval_count = 0;
  std::vector<double> marginal_decreases;
};

struct SingleRun {
  std::uint64_t run_seed = 0;
  std::uint64_t graph_seed = 0;
  std::uint64_t model_seed = 0;
  std::uint64_t placement_seed = 0;
  std::uint64_t samples_seed = 0;
  std::uint64_t observed_seed = 0;
  std::uint64_t strategy_seed = 0;
  double baseline_cost = 0.0;      // sampled cost of the initial assignment
  double initial_realized = 0.0;   // normalization denominator
  std::vector<StrategyOutcome> outcomes;
};

std::uint64_t run_seed_for(std::uint64_t master_seed, int run_id);

// Builds one instance (graph, cost model, placement, paths, shared samples,
// observed draw) from the run seed and executes every configured strategy on
// it. n_deploy/k_paths override the config when a sweep is active.
SingleRun execute_single_run(const ExperimentConfig& config, int n_deploy,
                             int k_paths, std::uint64_t run_seed);

ExperimentResults run_experiment(const ExperimentConfig& config);

std::string results_to_csv(const ExperimentResults& results);
std::string results_to_json(const ExperimentResults& results);
void emit_csv(const ExperimentResults& results, const std::string& path);
void emit_json(const ExperimentResults& results, const std::string& path);

// Re-executes one run and renders the full solution document (assignments,
// costs, per-pick marginal decreases, seeds) as JSON.
std::string replay_run(const ExperimentConfig& config, std::uint64_t run_seed);

}  // namespace rra
