#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "rra/cost_model.hpp"
#include "rra/path_enum.hpp"

namespace rra {

// One robot-to-goal assignment through a concrete path choice.
struct AssignmentEdge {
  int robot = 0;
  int goal = 0;
  int path = 0;
  auto operator<=>(const AssignmentEdge&) const = default;
};

// `initial` covers every goal exactly once; `redundant` holds the extra
// deployments in pick order. A robot appears at most once across both.
struct AssignmentSet {
  std::vector<AssignmentEdge> initial;
  std::vector<AssignmentEdge> redundant;

  int deployed() const {
    return static_cast<int>(initial.size() + redundant.size());
  }
};

// Deployment budget for the redundant set; independence additionally demands
// distinct robots across initial and redundant edges.
struct MatroidSpec {
  int budget = 0;
};

// Pre-drawn cost samples for every (robot, goal, path) edge. All strategies
// and every greedy iteration within a run read this one fixed draw, so the
// sampled objective is a fixed set function for the whole solve.
class SampledObjective {
 public:
  SampledObjective() = default;

  static SampledObjective from_paths(const PathTable& table,
                                     const EdgeSampleMatrix& samples);

  int robot_count() const { return robots_; }
  int goal_count() const { return goals_; }
  int sample_count() const { return s_; }
  int path_count(int robot, int goal) const {
    return counts_[static_cast<std::size_t>(robot) * goals_ + goal];
  }
  // Total number of (robot, goal, path) edges.
  int edge_count() const { return static_cast<int>(means_.size()); }

  std::span<const double> samples(int robot, int goal, int path) const {
    return {data_.data() + row(robot, goal, path) * s_,
            static_cast<std::size_t>(s_)};
  }
  std::span<const double> samples(const AssignmentEdge& e) const {
    return samples(e.robot, e.goal, e.path);
  }
  double sample_mean(int robot, int goal, int path) const {
    return means_[row(robot, goal, path)];
  }
  double sample_mean(const AssignmentEdge& e) const {
    return sample_mean(e.robot, e.goal, e.path);
  }

  // Assembles synthetic instances directly from sample vectors.
  class Builder {
   public:
    Builder(int robots, int goals, int sample_count);
    Builder& add_path(int robot, int goal, std::vector<double> path_samples);
    SampledObjective build();

   private:
    int robots_;
    int goals_;
    int s_;
    std::vector<std::vector<std::vector<double>>> rows_;
  };

 private:
  std::size_t row(int robot, int goal, int path) const {
    return offsets_[static_cast<std::size_t>(robot) * goals_ + goal] + path;
  }

  int robots_ = 0;
  int goals_ = 0;
  int s_ = 0;
  std::vector<int> counts_;
  std::vector<std::size_t> offsets_;
  std::vector<double> data_;   // one row of s_ samples per edge
  std::vector<double> means_;  // per-edge sample mean, summed left to right
};

// Running per-goal minima over the fixed samples; the value for an enlarged
// assignment is computable from the old value and the new edge alone.
class TaskState {
 public:
  TaskState(const SampledObjective& objective,
            std::span<const AssignmentEdge> initial);

  int goal_count() const { return goals_; }
  int sample_count() const { return s_; }
  std::span<const double> row(int goal) const {
    return {state_.data() + static_cast<std::size_t>(goal) * s_,
            static_cast<std::size_t>(s_)};
  }
  double row_mean(int goal) const;

  void apply(const SampledObjective& objective, const AssignmentEdge& edge);

 private:
  int goals_ = 0;
  int s_ = 0;
  std::vector<double> state_;
};

struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  CostMatrix() = default;
  CostMatrix(int r, int c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

// Minimum-cost matching of every row to a distinct column (rows <= cols),
// O(rows^2 * cols). Requires finite nonnegative costs. Returns row -> column.
std::vector<int> hungarian(const CostMatrix& cost);

struct InitialAssignment {
  AssignmentSet set;  // redundant empty
  double baseline_cost = 0.0;
};

// One robot per goal by the Hungarian method over per-pair costs
// min_k sample_mean(i, j, k); the minimizing path is recorded.
InitialAssignment initial_assignment(const SampledObjective& objective);

bool is_independent(std::span<const AssignmentEdge> candidate,
                    const MatroidSpec& matroid,
                    std::span<const AssignmentEdge> initial);

// Edges whose addition keeps `current` independent: unused robots, any goal,
// any available path, in (robot, goal, path) order. Empty once the budget is
// exhausted or no free robot remains.
std::vector<AssignmentEdge> eligible_set(std::span<const AssignmentEdge> current,
                                         const MatroidSpec& matroid,
                                         std::span<const AssignmentEdge> initial,
                                         const SampledObjective& objective);

// Element-wise minimum of a state row and a candidate's samples.
std::vector<double> aggregate_min(std::span<const double> state_row,
                                  std::span<const double> candidate_samples);

// mean(state row) - mean(element-wise min with the candidate); >= 0.
double marginal_decrease(const TaskState& state, int goal,
                         std::span<const double> candidate_samples);

struct GreedyResult {
  AssignmentSet assignment;
  std::vector<double> marginal_decreases;  // one per pick
  std::uint64_t evaluation_count = 0;
  double objective = 0.0;
};

// Greedy selection with incremental task-state updates: each round scans the
// eligible set, picks the edge with the largest marginal decrease (first of
// equals in scan order), and folds it into the running minima. Stops early
// when no robot is left.
GreedyResult greedy_redundant_assignment(const SampledObjective& objective,
                                         std::span<const AssignmentEdge> initial,
                                         int budget);

// From-scratch average over goals of the mean per-sample minimum; reference
// implementation the incremental path is checked against.
double objective_value(const AssignmentSet& assignment,
                       const SampledObjective& objective);
double per_goal_objective(const AssignmentSet& assignment,
                          const SampledObjective& objective, int goal);

AssignmentSet baseline_random(const SampledObjective& objective,
                              std::span<const AssignmentEdge> initial,
                              int budget, std::uint64_t seed);

// Repeated Hungarian rounds over the still-unused robots, each round
// assigning up to one robot per goal; a final short round keeps its
// cheapest matched pairs.
AssignmentSet baseline_repeated_hungarian(const SampledObjective& objective,
                                          std::span<const AssignmentEdge> initial,
                                          int budget);

// Hindsight-optimal one-robot-per-goal matching under realized edge costs.
AssignmentSet best_aposteriori(const PathTable& table,
                               const ObservedCosts& observed);

struct BruteForceResult {
  AssignmentSet assignment;
  double objective = 0.0;
};

// Exhaustive minimum over all independent redundant sets of size <= budget.
// Guards against instances with more than ~1e6 subsets.
BruteForceResult brute_force_optimal(const SampledObjective& objective,
                                     std::span<const AssignmentEdge> initial,
                                     int budget);

}  // namespace rra
