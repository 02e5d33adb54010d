#pragma once

#include <vector>

#include "rra/cost_model.hpp"
#include "rra/transport_graph.hpp"

namespace rra {

// Simple path between one robot location and one goal. expected_cost is the
// sum of the model means over edge_indices, accumulated along the path.
struct CandidatePath {
  std::vector<int> nodes;
  std::vector<int> edge_indices;
  double expected_cost = 0.0;

  bool operator==(const CandidatePath&) const = default;
};

// Up to K candidate paths per (robot, goal), sorted by expected cost with
// lexicographic node-sequence tie-breaking.
class PathTable {
 public:
  PathTable() = default;
  PathTable(int robot_count, int goal_count)
      : robot_count_(robot_count),
        goal_count_(goal_count),
        entries_(static_cast<std::size_t>(robot_count) * goal_count) {}

  int robot_count() const { return robot_count_; }
  int goal_count() const { return goal_count_; }
  const std::vector<CandidatePath>& paths(int robot, int goal) const {
    return entries_[static_cast<std::size_t>(robot) * goal_count_ + goal];
  }
  int path_count(int robot, int goal) const {
    return static_cast<int>(paths(robot, goal).size());
  }
  void set_paths(int robot, int goal, std::vector<CandidatePath> paths) {
    entries_[static_cast<std::size_t>(robot) * goal_count_ + goal] =
        std::move(paths);
  }

 private:
  int robot_count_ = 0;
  int goal_count_ = 0;
  std::vector<std::vector<CandidatePath>> entries_;
};

// Minimum expected-cost simple path under nonnegative means; among equal-cost
// paths, the lexicographically smallest node sequence.
CandidatePath shortest_expected_path(const TransportGraph& graph,
                                     const std::vector<double>& means,
                                     int source, int target);

// The k cheapest distinct loopless paths in nondecreasing cost order
// (deviation enumeration). Returns fewer when the graph admits fewer.
std::vector<CandidatePath> k_shortest_paths(const TransportGraph& graph,
                                            const std::vector<double>& means,
                                            int source, int target, int k);

PathTable build_path_table(const TransportGraph& graph,
                           const JointEdgeCostModel& model,
                           const ScenarioPlacement& placement, int k);

}  // namespace rra
