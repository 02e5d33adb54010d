#include "rra/transport_graph.hpp"

#include "rra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "rra/rng.hpp"

namespace rra {

namespace {

std::uint64_t pair_key(int u, int v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

// Union-find over node indices.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

TransportGraph::TransportGraph(int node_count, std::vector<Edge> edges,
                               std::vector<Vec2> coords, bool directed)
    : node_count_(node_count),
      directed_(directed),
      edges_(std::move(edges)),
      coords_(std::move(coords)) {
  if (node_count_ < 0) throw std::invalid_argument("node_count must be >= 0");
  if (!coords_.empty() && static_cast<int>(coords_.size()) != node_count_) {
    throw std::invalid_argument("coords size must match node_count");
  }
  std::unordered_set<std::uint64_t> seen;
  adjacency_.assign(node_count_, {});
  for (int idx = 0; idx < static_cast<int>(edges_.size()); ++idx) {
    const Edge& e = edges_[idx];
    if (e.u < 0 || e.u >= node_count_ || e.v < 0 || e.v >= node_count_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
    if (!seen.insert(pair_key(e.u, e.v)).second ||
        (!directed_ && !seen.insert(pair_key(e.v, e.u)).second)) {
      throw std::invalid_argument("duplicate edge");
    }
    adjacency_[e.u].push_back({e.v, idx});
    if (!directed_) adjacency_[e.v].push_back({e.u, idx});
  }
}

int TransportGraph::cost_index_between(int u, int v) const {
  for (const Arc& a : adjacency_[u]) {
    if (a.to == v) return a.cost_index;
  }
  return -1;
}

bool TransportGraph::is_connected() const {
  if (node_count_ == 0) return true;
  std::vector<char> visited(node_count_, 0);
  std::vector<int> stack{0};
  visited[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const Arc& a : adjacency_[u]) {
      if (!visited[a.to]) {
        visited[a.to] = 1;
        ++reached;
        stack.push_back(a.to);
      }
    }
  }
  return reached == node_count_;
}

bool TransportGraph::operator==(const TransportGraph& other) const {
  if (node_count_ != other.node_count_ || directed_ != other.directed_ ||
      edges_ != other.edges_ || coords_.size() != other.coords_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].x != other.coords_[i].x || coords_[i].y != other.coords_[i].y)
      return false;
  }
  return true;
}

std::string TransportGraph::to_json() const {
  nlohmann::json doc;
  doc["directed"] = directed_;
  auto& nodes = doc["nodes"] = nlohmann::json::array();
  for (int i = 0; i < node_count_; ++i) {
    nlohmann::json n;
    n["id"] = i;
    n["x"] = coords_.empty() ? 0.0 : coords_[i].x;
    n["y"] = coords_.empty() ? 0.0 : coords_[i].y;
    nodes.push_back(std::move(n));
  }
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const Edge& e : edges_) {
    edges.push_back({{"u", e.u}, {"v", e.v}});
  }
  return doc.dump();
}

TransportGraph TransportGraph::from_json(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }
  auto require = [&doc](const char* key) -> const nlohmann::json& {
    if (!doc.contains(key)) {
      throw ParseError(std::string("graph document: missing field '") + key +
                       "'");
    }
    return doc.at(key);
  };
  const auto& nodes = require("nodes");
  const auto& edges = require("edges");
  const auto& directed = require("directed");
  if (!nodes.is_array()) throw ParseError("graph document: field 'nodes' must be an array");
  if (!edges.is_array()) throw ParseError("graph document: field 'edges' must be an array");
  if (!directed.is_boolean()) throw ParseError("graph document: field 'directed' must be a boolean");

  std::vector<Vec2> coords(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (!n.contains("id") || !n.contains("x") || !n.contains("y")) {
      throw ParseError("graph document: node entry requires 'id', 'x', 'y'");
    }
    const int id = n.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(nodes.size())) {
      throw ParseError("graph document: node 'id' out of range");
    }
    coords[id] = {n.at("x").get<double>(), n.at("y").get<double>()};
  }
  std::vector<Edge> edge_list;
  edge_list.reserve(edges.size());
  for (const auto& e : edges) {
    if (!e.contains("u") || !e.contains("v")) {
      throw ParseError("graph document: edge entry requires 'u', 'v'");
    }
    edge_list.push_back({e.at("u").get<int>(), e.at("v").get<int>()});
  }
  return TransportGraph(static_cast<int>(nodes.size()), std::move(edge_list),
                        std::move(coords), directed.get<bool>());
}

TransportGraph generate_random_graph(const GraphGenConfig& config) {
  if (config.node_count < 2) {
    throw std::invalid_argument("node_count must be >= 2");
  }
  if (config.hub_count < 1 || config.hub_count > config.node_count) {
    throw std::invalid_argument("hub_count must be in [1, node_count]");
  }
  if (config.model == GraphModel::kGeometric && config.connectivity_radius <= 0.0) {
    throw std::invalid_argument("connectivity_radius must be positive");
  }

  Rng rng(derive_seed(config.seed, 0x67656f));
  const int n = config.node_count;
  std::vector<Vec2> coords(n);
  for (int i = 0; i < n; ++i) {
    coords[i].x = rng.uniform01();
    coords[i].y = rng.uniform01();
  }

  auto sq_dist = [&coords](int a, int b) {
    const double dx = coords[a].x - coords[b].x;
    const double dy = coords[a].y - coords[b].y;
    return dx * dx + dy * dy;
  };

  std::vector<Edge> edges;
  DisjointSets components(n);
  int component_count = n;
  auto add_edge = [&](int u, int v) {
    edges.push_back({u, v});
    if (components.unite(u, v)) --component_count;
  };

  if (config.model == GraphModel::kGeometric) {
    const double r2 = config.connectivity_radius * config.connectivity_radius;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (sq_dist(u, v) <= r2) add_edge(u, v);
      }
    }
  } else {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform01() < config.er_edge_prob) add_edge(u, v);
      }
    }
  }

  // Repair connectivity: repeatedly add the shortest edge joining two
  // components, ties broken by (u, v).
  while (component_count > 1) {
    double best = std::numeric_limits<double>::infinity();
    int best_u = -1;
    int best_v = -1;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (components.find(u) == components.find(v)) continue;
        const double d = sq_dist(u, v);
        if (d < best) {
          best = d;
          best_u = u;
          best_v = v;
        }
      }
    }
    add_edge(best_u, best_v);
  }

  return TransportGraph(n, std::move(edges), std::move(coords), false);
}

ScenarioPlacement select_placement(const TransportGraph& graph, int n_robots,
                                   int m_goals, int hub_count,
                                   std::uint64_t seed) {
  const int n = graph.node_count();
  if (n_robots < 1 || m_goals < 1 || hub_count < 1) {
    throw std::invalid_argument("n_robots, m_goals and hub_count must be >= 1");
  }
  if (n_robots < m_goals) {
    throw std::invalid_argument("n_robots must be >= m_goals");
  }
  if (m_goals + hub_count > n) {
    throw std::invalid_argument("m_goals + hub_count exceeds node_count");
  }

  Rng rng(derive_seed(seed, 0x706c6163));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: first hub_count entries become hubs, the next
  // m_goals entries become goals, so goals are uniform over non-hub nodes.
  for (int i = 0; i < hub_count + m_goals; ++i) {
    const int j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
  }

  ScenarioPlacement placement;
  placement.hub_nodes.assign(order.begin(), order.begin() + hub_count);
  placement.goal_locations.assign(order.begin() + hub_count,
                                  order.begin() + hub_count + m_goals);
  placement.robot_locations.reserve(n_robots);
  for (int i = 0; i < n_robots; ++i) {
    placement.robot_locations.push_back(
        placement.hub_nodes[rng.bounded(static_cast<std::uint64_t>(hub_count))]);
  }
  return placement;
}

}  // namespace rra
