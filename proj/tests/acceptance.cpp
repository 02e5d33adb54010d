// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rra/assignment.hpp"
#include "rra/bench.hpp"
#include "rra/metrics.hpp"
#include "rra/path_enum.hpp"
#include "rra/rng.hpp"
#include "rra/transport_graph.hpp"
#include "test_support.hpp"

using namespace rra;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] %2d. %s — %s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// Instances for the solver-level criteria: a mix of synthetic sample tables
// and full graph-pipeline scenarios.
struct Instance {
  SampledObjective objective;
  InitialAssignment initial;
  int budget = 0;
};

Instance synthetic_instance(Rng& rng, int max_n = 6, int max_m = 2,
                            int max_k = 2, int max_budget = 3,
                            int max_s = 50) {
  const int m = 1 + static_cast<int>(rng.bounded(max_m));
  const int n =
      std::max<int>(m, 2 + static_cast<int>(rng.bounded(max_n - 1)));
  const int k = 1 + static_cast<int>(rng.bounded(max_k));
  const int s = 2 + static_cast<int>(rng.bounded(max_s - 1));
  Instance inst;
  inst.objective = test::random_objective(n, m, k, s, rng);
  inst.initial = initial_assignment(inst.objective);
  inst.budget = static_cast<int>(rng.bounded(max_budget + 1));
  return inst;
}

Instance graph_instance(Rng& rng) {
  GraphGenConfig cfg;
  cfg.node_count = 8 + static_cast<int>(rng.bounded(6));
  cfg.connectivity_radius = rng.uniform(0.4, 0.7);
  cfg.hub_count = 2;
  cfg.seed = rng.next_u64();
  const TransportGraph g = generate_random_graph(cfg);
  const int m = 1 + static_cast<int>(rng.bounded(2));
  const int n = m + 1 + static_cast<int>(rng.bounded(3));
  const ScenarioPlacement placement =
      select_placement(g, n, m, 2, rng.next_u64());
  const JointEdgeCostModel model =
      build_random_cost_model(g.edge_count(), rng.uniform01(), rng.next_u64());
  const int k = 1 + static_cast<int>(rng.bounded(2));
  const PathTable table = build_path_table(g, model, placement, k);
  const EdgeSampleMatrix samples = sample_edge_costs(
      model, 2 + static_cast<int>(rng.bounded(49)), rng.next_u64());
  Instance inst;
  inst.objective = SampledObjective::from_paths(table, samples);
  inst.initial = initial_assignment(inst.objective);
  inst.budget = static_cast<int>(rng.bounded(4));
  return inst;
}

ExperimentConfig desk_profile() {
  ExperimentConfig cfg;
  cfg.graph.node_count = 50;
  cfg.graph.connectivity_radius = 0.25;
  cfg.graph.hub_count = 10;
  cfg.n_robots = 25;
  cfg.m_goals = 5;
  cfg.n_deploy = 20;
  cfg.k_paths = 4;
  cfg.sample_count = 200;
  cfg.run_count = 100;
  cfg.correlation_strength = 0.5;
  cfg.master_seed = 42;
  return cfg;
}

const AggregateRecord& aggregate_at(const ExperimentResults& results,
                                    Strategy strategy, int n_deploy,
                                    int k_paths) {
  for (const AggregateRecord& a : results.aggregates) {
    if (a.strategy == strategy && a.n_deploy == n_deploy &&
        a.k_paths == k_paths) {
      return a;
    }
  }
  throw std::logic_error("missing aggregate");
}

// ---- criterion 1: greedy stays within the half bound of the exact optimum

void criterion_oracle_bound() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(0xACCE01);
  int violations = 0;
  double worst_slack = 1e18;
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst =
        trial % 4 == 3 ? graph_instance(rng) : synthetic_instance(rng);
    const GreedyResult greedy = greedy_redundant_assignment(
        inst.objective, inst.initial.set.initial, inst.budget);
    const BruteForceResult oracle = brute_force_optimal(
        inst.objective, inst.initial.set.initial, inst.budget);
    const double bound =
        0.5 * (oracle.objective + inst.initial.baseline_cost) + 1e-9;
    worst_slack = std::min(worst_slack, bound - greedy.objective);
    if (greedy.objective > bound) ++violations;
  }
  const double secs = elapsed_s(start);
  report(1, "greedy within the half bound of the brute-force optimum",
         violations == 0 && secs < 60.0,
         fmt("200 instances, %d violations, min slack %.3g, %.1fs", violations,
             worst_slack, secs));
}

// ---- criterion 2: incremental task state equals the from-scratch objective

void criterion_dp_equivalence() {
  Rng rng(0xACCE02);
  int violations = 0;
  int comparisons = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = trial % 4 == 3 ? graph_instance(rng)
                                   : synthetic_instance(rng, 8, 3, 3, 5);
    inst.budget = std::max(inst.budget, 2);
    const GreedyResult greedy = greedy_redundant_assignment(
        inst.objective, inst.initial.set.initial, inst.budget);

    TaskState state(inst.objective, inst.initial.set.initial);
    AssignmentSet replay = inst.initial.set;
    for (const AssignmentEdge& pick : greedy.assignment.redundant) {
      state.apply(inst.objective, pick);
      replay.redundant.push_back(pick);
      for (int j = 0; j < inst.objective.goal_count(); ++j) {
        ++comparisons;
        if (state.row_mean(j) != per_goal_objective(replay, inst.objective, j)) {
          ++violations;
        }
      }
    }
  }
  report(2, "task-state objective equals the from-scratch value bit for bit",
         violations == 0,
         fmt("100 instances, %d bitwise comparisons, %d violations",
             comparisons, violations));
}

// ---- criterion 3: the sampled objective is supermodular

void criterion_supermodularity() {
  Rng rng(0xACCE03);
  int checked = 0;
  int violations = 0;
  while (checked < 10000) {
    const Instance inst = synthetic_instance(rng, 6, 2, 2, 3, 30);
    const auto ground = eligible_set({}, MatroidSpec{1 << 20},
                                     inst.initial.set.initial, inst.objective);
    if (ground.size() < 2) continue;
    for (int rep = 0; rep < 40 && checked < 10000; ++rep) {
      const AssignmentEdge x = ground[rng.bounded(ground.size())];
      std::vector<AssignmentEdge> small, large;
      for (const AssignmentEdge& e : ground) {
        if (e == x || e.robot == x.robot) continue;
        const auto conflicts = [&](const std::vector<AssignmentEdge>& set) {
          for (const AssignmentEdge& s : set) {
            if (s.robot == e.robot) return true;
          }
          return false;
        };
        const auto roll = rng.bounded(3);
        if (roll <= 1 && !conflicts(large)) {
          large.push_back(e);
          if (roll == 0) small.push_back(e);
        }
      }
      AssignmentSet base = inst.initial.set;
      auto delta_given = [&](const std::vector<AssignmentEdge>& redundant) {
        base.redundant = redundant;
        const double before = objective_value(base, inst.objective);
        base.redundant.push_back(x);
        const double after = objective_value(base, inst.objective);
        base.redundant.pop_back();
        return before - after;
      };
      if (delta_given(small) < delta_given(large) - 1e-9) ++violations;
      ++checked;
    }
  }
  report(3, "marginal decreases shrink on supersets", violations == 0,
         fmt("%d nested triples, %d violations", checked, violations));
}

// ---- criterion 4: matroid axioms, exhaustively on small ground sets

void criterion_matroid_axioms() {
  Rng rng(0xACCE04);
  int instances = 0;
  int violations = 0;
  while (instances < 50) {
    const int m = 1 + static_cast<int>(rng.bounded(2));
    const int n = m + 1 + static_cast<int>(rng.bounded(2));
    const int k = 1 + static_cast<int>(rng.bounded(2));
    SampledObjective objective = test::random_objective(n, m, k, 4, rng);
    const InitialAssignment init = initial_assignment(objective);
    const int budget = 1 + static_cast<int>(rng.bounded(3));
    const MatroidSpec matroid{budget};
    const auto ground =
        eligible_set({}, MatroidSpec{1 << 20}, init.set.initial, objective);
    if (ground.size() > 12 || ground.empty()) continue;
    ++instances;

    std::vector<std::vector<AssignmentEdge>> independent;
    for (std::size_t bits = 0; bits < (std::size_t{1} << ground.size());
         ++bits) {
      std::vector<AssignmentEdge> set;
      for (std::size_t e = 0; e < ground.size(); ++e) {
        if (bits & (std::size_t{1} << e)) set.push_back(ground[e]);
      }
      if (!is_independent(set, matroid, init.set.initial)) continue;
      for (std::size_t drop = 0; drop < set.size(); ++drop) {
        std::vector<AssignmentEdge> smaller = set;
        smaller.erase(smaller.begin() + drop);
        if (!is_independent(smaller, matroid, init.set.initial)) ++violations;
      }
      independent.push_back(std::move(set));
    }
    for (const auto& a : independent) {
      for (const auto& b : independent) {
        if (a.size() <= b.size()) continue;
        bool augmented = false;
        for (const AssignmentEdge& x : a) {
          if (std::find(b.begin(), b.end(), x) != b.end()) continue;
          std::vector<AssignmentEdge> grown = b;
          grown.push_back(x);
          if (is_independent(grown, matroid, init.set.initial)) {
            augmented = true;
            break;
          }
        }
        if (!augmented) ++violations;
      }
    }
  }
  report(4, "downward closure and augmentation hold exhaustively",
         violations == 0, fmt("50 instances, %d violations", violations));
}

// ---- criteria 5 + 7: deployment-size trends and coalition correlations

ExperimentResults run_deploy_sweep() {
  ExperimentConfig cfg = desk_profile();
  cfg.sweep.axis = SweepSpec::Axis::kDeploy;
  cfg.sweep.values = {5, 10, 15, 20};
  return run_experiment(cfg);
}

void criterion_deploy_trend(const ExperimentResults& results) {
  std::vector<double> greedy_means;
  for (int nd : {5, 10, 15, 20}) {
    greedy_means.push_back(
        aggregate_at(results, Strategy::kGreedy, nd, 4).mean_normalized);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < greedy_means.size(); ++i) {
    if (greedy_means[i] > greedy_means[i - 1] + 1e-12) monotone = false;
  }
  const AggregateRecord& greedy = aggregate_at(results, Strategy::kGreedy, 20, 4);
  const AggregateRecord& repeated =
      aggregate_at(results, Strategy::kRepeatedHungarian, 20, 4);
  const AggregateRecord& random =
      aggregate_at(results, Strategy::kRandom, 20, 4);
  const bool ordered = greedy.mean_normalized < repeated.mean_normalized &&
                       repeated.mean_normalized < random.mean_normalized &&
                       random.mean_normalized < 1.0;
  const bool disjoint = greedy.mean_normalized + greedy.ci95_normalized <
                        random.mean_normalized - random.ci95_normalized;
  report(5, "waiting time falls with deployment size, strategies ordered",
         monotone && ordered && disjoint,
         fmt("greedy %.3f/%.3f/%.3f/%.3f; at Nd=20 greedy %.3f < repeated "
             "%.3f < random %.3f < 1; CIs disjoint=%d",
             greedy_means[0], greedy_means[1], greedy_means[2],
             greedy_means[3], greedy.mean_normalized,
             repeated.mean_normalized, random.mean_normalized,
             disjoint ? 1 : 0));
}

void criterion_correlation_trend(const ExperimentResults& results) {
  const AggregateRecord& greedy = aggregate_at(results, Strategy::kGreedy, 20, 4);
  const AggregateRecord& repeated =
      aggregate_at(results, Strategy::kRepeatedHungarian, 20, 4);
  const AggregateRecord& random =
      aggregate_at(results, Strategy::kRandom, 20, 4);
  const bool ordered = greedy.mean_correlation < repeated.mean_correlation &&
                       greedy.mean_correlation < random.mean_correlation;
  const bool disjoint = greedy.mean_correlation + greedy.ci95_correlation <
                        random.mean_correlation - random.ci95_correlation;
  report(7, "greedy coalitions use less correlated paths", ordered && disjoint,
         fmt("corr greedy %.4f vs repeated %.4f vs random %.4f; CIs "
             "disjoint=%d (n=%d/%d/%d)",
             greedy.mean_correlation, repeated.mean_correlation,
             random.mean_correlation, disjoint ? 1 : 0,
             greedy.correlation_count, repeated.correlation_count,
             random.correlation_count));
}

// ---- criterion 6: diminishing returns in the number of path options

void criterion_k_trend() {
  ExperimentConfig cfg = desk_profile();
  cfg.strategies = {Strategy::kGreedy};
  cfg.sweep.axis = SweepSpec::Axis::kKPaths;
  cfg.sweep.values = {1, 2, 4, 8};
  const ExperimentResults results = run_experiment(cfg);
  const double k1 = aggregate_at(results, Strategy::kGreedy, 20, 1).mean_normalized;
  const double k4 = aggregate_at(results, Strategy::kGreedy, 20, 4).mean_normalized;
  const double k8 = aggregate_at(results, Strategy::kGreedy, 20, 8).mean_normalized;
  const bool improves = k4 < k1;
  const bool flattens = std::abs(k8 - k4) < (k1 - k4) / 2.0;
  report(6, "more path options help initially, then flatten out",
         improves && flattens,
         fmt("mean normalized: K1 %.4f, K4 %.4f, K8 %.4f", k1, k4, k8));
}

// ---- criterion 8: evaluation counts and linear scaling in S

void criterion_complexity(const ExperimentResults& deploy_results) {
  bool count_ok = true;
  for (const RunRecord& r : deploy_results.runs) {
    if (r.strategy != Strategy::kGreedy) continue;
    const std::uint64_t cap =
        static_cast<std::uint64_t>(r.n_deploy - r.m_goals) * r.n_robots *
        r.m_goals * r.k_paths;
    if (r.eval_count > cap) count_ok = false;
  }

  // Fixed desk-scale instance, doubled sample count, median of repeats.
  ExperimentConfig cfg = desk_profile();
  auto greedy_ms = [&cfg](int samples) {
    const std::uint64_t run_seed = run_seed_for(cfg.master_seed, 0);
    GraphGenConfig gc = cfg.graph;
    gc.seed = derive_seed(run_seed, 1);
    const TransportGraph graph = generate_random_graph(gc);
    const JointEdgeCostModel model = build_random_cost_model(
        graph.edge_count(), cfg.correlation_strength, derive_seed(run_seed, 2));
    const ScenarioPlacement placement =
        select_placement(graph, cfg.n_robots, cfg.m_goals, gc.hub_count,
                         derive_seed(run_seed, 3));
    const PathTable table =
        build_path_table(graph, model, placement, cfg.k_paths);
    const EdgeSampleMatrix samples_matrix =
        sample_edge_costs(model, samples, derive_seed(run_seed, 4));
    const SampledObjective objective =
        SampledObjective::from_paths(table, samples_matrix);
    const InitialAssignment init = initial_assignment(objective);
    const int budget = cfg.n_deploy - cfg.m_goals;

    std::vector<double> times;
    for (int rep = 0; rep < 15; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      const GreedyResult r =
          greedy_redundant_assignment(objective, init.set.initial, budget);
      times.push_back(elapsed_s(start) * 1e3);
      if (r.assignment.redundant.empty()) times.back() = -1.0;
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };
  const double t1 = greedy_ms(1000);
  const double t2 = greedy_ms(2000);
  const double ratio = t2 / t1;
  const bool scaling_ok = ratio >= 1.0 && ratio <= 3.0;

  report(8, "evaluation budget respected and solve time linear in S",
         count_ok && scaling_ok,
         fmt("eval counts within (Nd-M)NMK on all runs=%d; S 1000->2000 "
             "median %.2fms -> %.2fms, ratio %.2f",
             count_ok ? 1 : 0, t1, t2, ratio));
}

// ---- criterion 9: the CLI is byte-deterministic

void criterion_cli_determinism() {
  const std::string bench = BENCH_EXECUTABLE;
  const std::string args =
      " run --nodes 30 --radius 0.32 --hubs 5 --robots 8 --goals 2 --deploy 6"
      " --k-paths 2 --samples 50 --runs 3 --seed 99";
  const std::string out1 = "acceptance_det_1.csv";
  const std::string out2 = "acceptance_det_2.csv";
  const int rc1 =
      std::system((bench + args + " --out " + out1 + " > /dev/null").c_str());
  const int rc2 =
      std::system((bench + args + " --out " + out2 + " > /dev/null").c_str());

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  const bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  report(9, "two identical bench invocations emit byte-identical CSV", ok,
         fmt("exit codes %d/%d, %zu bytes, equal=%d", rc1, rc2, a.size(),
             a == b ? 1 : 0));
}

// ---- criterion 10: path enumeration and matching against brute force

void criterion_search_correctness() {
  Rng rng(0xACCE10);
  int path_mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const TransportGraph g = test::random_small_graph(rng);
    const std::vector<double> means = test::random_means(g.edge_count(), rng);
    const int source = static_cast<int>(rng.bounded(g.node_count()));
    int target = static_cast<int>(rng.bounded(g.node_count()));
    if (target == source) target = (target + 1) % g.node_count();
    const auto all = test::enumerate_simple_paths(g, means, source, target);
    for (int k = 1; k <= 5; ++k) {
      const auto got = k_shortest_paths(g, means, source, target, k);
      const std::size_t expect = std::min<std::size_t>(k, all.size());
      if (got.size() != expect) {
        ++path_mismatches;
        continue;
      }
      for (std::size_t p = 0; p < expect; ++p) {
        if (got[p].nodes != all[p].nodes ||
            got[p].expected_cost != all[p].expected_cost) {
          ++path_mismatches;
        }
      }
    }
  }

  int matching_mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng.bounded(5));
    const int cols = rows + static_cast<int>(rng.bounded(4));
    CostMatrix cost(rows, cols);
    for (double& v : cost.data) v = rng.uniform(0.0, 50.0);
    const auto match = hungarian(cost);
    double total = 0.0;
    std::set<int> used;
    for (int r = 0; r < rows; ++r) {
      total += cost.at(r, match[r]);
      used.insert(match[r]);
    }
    const test::BruteMatch oracle = test::brute_force_matching(cost);
    if (static_cast<int>(used.size()) != rows ||
        std::abs(total - oracle.total) > 1e-9) {
      ++matching_mismatches;
    }
  }
  report(10, "path enumeration and matching agree with brute force",
         path_mismatches == 0 && matching_mismatches == 0,
         fmt("100 graphs x k=1..5: %d mismatches; 200 matchings: %d mismatches",
             path_mismatches, matching_mismatches));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_oracle_bound();
  criterion_dp_equivalence();
  criterion_supermodularity();
  criterion_matroid_axioms();
  const ExperimentResults deploy_results = run_deploy_sweep();
  criterion_deploy_trend(deploy_results);
  criterion_k_trend();
  criterion_correlation_trend(deploy_results);
  criterion_complexity(deploy_results);
  criterion_cli_determinism();
  criterion_search_correctness();
  std::printf("%d criterion failure(s), %.1fs total\n", g_failures,
              elapsed_s(start));
  return g_failures == 0 ? 0 : 1;
}
