#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rra {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// One connection between two distinct nodes. Its position in
// TransportGraph::edges() is the cost index shared by both traversal
// directions when the graph is undirected.
struct Edge {
  int u = 0;
  int v = 0;
  bool operator==(const Edge&) const = default;
};

enum class GraphModel { kGeometric, kErdosRenyi };

struct GraphGenConfig {
  int node_count = 200;
  double connectivity_radius = 0.13;
  int hub_count = 10;
  std::uint64_t seed = 0;
  GraphModel model = GraphModel::kGeometric;
  double er_edge_prob = 0.05;  // only used by kErdosRenyi
};

// Weighted transport network. Nodes are dense indices [0, node_count);
// coordinates are kept for generation and plotting only.
class TransportGraph {
 public:
  struct Arc {
    int to = 0;
    int cost_index = 0;
  };

  TransportGraph() = default;
  TransportGraph(int node_count, std::vector<Edge> edges,
                 std::vector<Vec2> coords = {}, bool directed = false);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vec2>& coords() const { return coords_; }
  const std::vector<Arc>& arcs_from(int node) const { return adjacency_[node]; }

  // Cost index of the arc u->v, or -1 if absent.
  int cost_index_between(int u, int v) const;

  // All nodes reachable from node 0 (undirected reachability when the graph
  // is undirected, forward reachability otherwise).
  bool is_connected() const;

  std::string to_json() const;
  static TransportGraph from_json(const std::string& document);

  bool operator==(const TransportGraph& other) const;

 private:
  int node_count_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<Vec2> coords_;
  std::vector<std::vector<Arc>> adjacency_;
};

struct ScenarioPlacement {
  std::vector<int> robot_locations;
  std::vector<int> goal_locations;
  std::vector<int> hub_nodes;
};

// Random connected graph in the unit square. Geometric model: nodes placed
// uniformly, pairs within connectivity_radius connected, components repaired
// with minimum-length bridging edges. Deterministic for a fixed config.
TransportGraph generate_random_graph(const GraphGenConfig& config);

// Hubs are hub_count distinct nodes; robots are drawn from hubs with
// replacement; goals are m_goals distinct nodes disjoint from the hubs.
ScenarioPlacement select_placement(const TransportGraph& graph, int n_robots,
                                   int m_goals, int hub_count,
                                   std::uint64_t seed);

}  // namespace rra
