#include "rra/path_enum.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace rra {

namespace {

std::uint64_t arc_key(int u, int v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

// Arcs entering each node. Undirected adjacency is already symmetric and the
// shared cost index makes arcs_from(v) usable as-is.
class ReverseArcs {
 public:
  explicit ReverseArcs(const TransportGraph& g) : graph_(g) {
    if (g.directed()) {
      rev_.assign(g.node_count(), {});
      for (int u = 0; u < g.node_count(); ++u) {
        for (const TransportGraph::Arc& a : g.arcs_from(u)) {
          rev_[a.to].push_back({u, a.cost_index});
        }
      }
    }
  }
  const std::vector<TransportGraph::Arc>& into(int node) const {
    return graph_.directed() ? rev_[node] : graph_.arcs_from(node);
  }

 private:
  const TransportGraph& graph_;
  std::vector<std::vector<TransportGraph::Arc>> rev_;
};

struct SearchMask {
  const std::vector<char>* blocked_nodes = nullptr;
  const std::unordered_set<std::uint64_t>* blocked_arcs = nullptr;

  bool node_blocked(int v) const {
    return blocked_nodes && (*blocked_nodes)[v];
  }
  bool arc_blocked(int u, int v) const {
    return blocked_arcs && blocked_arcs->contains(arc_key(u, v));
  }
};

// Min expected-cost path under the mask; among ties, the lexicographically
// smallest node sequence. Backward Dijkstra gives distance-to-target, then a
// forward walk picks the smallest next node whose arc lies on a shortest
// path (exact equality holds because the same sum is compared).
std::optional<std::vector<int>> lex_shortest(const TransportGraph& graph,
                                             const ReverseArcs& rev,
                                             const std::vector<double>& means,
                                             int source, int target,
                                             const SearchMask& mask) {
  const int n = graph.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[target] = 0.0;
  queue.push({0.0, target});
  while (!queue.empty()) {
    const auto [d, y] = queue.top();
    queue.pop();
    if (d != dist[y]) continue;
    for (const TransportGraph::Arc& a : rev.into(y)) {
      const int x = a.to;
      if (mask.node_blocked(x) || mask.arc_blocked(x, y)) continue;
      const double nd = d + means[a.cost_index];
      if (nd < dist[x]) {
        dist[x] = nd;
        queue.push({nd, x});
      }
    }
  }
  if (dist[source] == inf) return std::nullopt;

  std::vector<int> path{source};
  int u = source;
  while (u != target) {
    int best = -1;
    for (const TransportGraph::Arc& a : graph.arcs_from(u)) {
      const int v = a.to;
      if (mask.node_blocked(v) || mask.arc_blocked(u, v)) continue;
      if (dist[v] == inf) continue;
      if (means[a.cost_index] + dist[v] == dist[u] && (best == -1 || v < best)) {
        best = v;
      }
    }
    if (best == -1) throw std::logic_error("shortest-path reconstruction failed");
    path.push_back(best);
    u = best;
  }
  return path;
}

CandidatePath make_candidate(const TransportGraph& graph,
                             const std::vector<double>& means,
                             std::vector<int> nodes) {
  CandidatePath path;
  path.edge_indices.reserve(nodes.size() - 1);
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const int idx = graph.cost_index_between(nodes[i], nodes[i + 1]);
    if (idx < 0) throw std::logic_error("path uses a missing arc");
    path.edge_indices.push_back(idx);
    cost += means[idx];
  }
  path.expected_cost = cost;
  path.nodes = std::move(nodes);
  return path;
}

struct RankedSeq {
  double cost;
  std::vector<int> nodes;
  bool operator<(const RankedSeq& other) const {
    if (cost != other.cost) return cost < other.cost;
    return nodes < other.nodes;
  }
};

double sequence_cost(const TransportGraph& graph,
                     const std::vector<double>& means,
                     const std::vector<int>& nodes) {
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const int idx = graph.cost_index_between(nodes[i], nodes[i + 1]);
    if (idx < 0) throw std::logic_error("path uses a missing arc");
    cost += means[idx];
  }
  return cost;
}

void validate_endpoints(const TransportGraph& graph,
                        const std::vector<double>& means, int source,
                        int target) {
  if (source < 0 || source >= graph.node_count() || target < 0 ||
      target >= graph.node_count()) {
    throw std::invalid_argument("path endpoint out of range");
  }
  if (source == target) {
    throw std::invalid_argument("source and target must differ");
  }
  if (static_cast<int>(means.size()) != graph.edge_count()) {
    throw std::invalid_argument("means size must match edge count");
  }
}

}  // namespace

CandidatePath shortest_expected_path(const TransportGraph& graph,
                                     const std::vector<double>& means,
                                     int source, int target) {
  validate_endpoints(graph, means, source, target);
  const ReverseArcs rev(graph);
  auto nodes = lex_shortest(graph, rev, means, source, target, {});
  if (!nodes) throw std::runtime_error("target unreachable from source");
  return make_candidate(graph, means, std::move(*nodes));
}

std::vector<CandidatePath> k_shortest_paths(const TransportGraph& graph,
                                            const std::vector<double>& means,
                                            int source, int target, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  validate_endpoints(graph, means, source, target);
  const ReverseArcs rev(graph);

  auto first = lex_shortest(graph, rev, means, source, target, {});
  if (!first) throw std::runtime_error("target unreachable from source");

  std::vector<std::vector<int>> selected{std::move(*first)};
  std::set<RankedSeq> candidates;
  std::set<std::vector<int>> known{selected.front()};

  while (static_cast<int>(selected.size()) < k) {
    const std::vector<int> prev = selected.back();

    // Deviate at every node of the latest path: block the arcs that selected
    // paths with the same root prefix take next, hide the root interior, and
    // find the best spur completion.
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      std::vector<char> blocked_nodes(graph.node_count(), 0);
      for (std::size_t r = 0; r < i; ++r) blocked_nodes[prev[r]] = 1;

      std::unordered_set<std::uint64_t> blocked_arcs;
      for (const std::vector<int>& sel : selected) {
        if (sel.size() > i + 1 &&
            std::equal(sel.begin(), sel.begin() + i + 1, prev.begin())) {
          blocked_arcs.insert(arc_key(sel[i], sel[i + 1]));
        }
      }

      SearchMask mask{&blocked_nodes, &blocked_arcs};
      auto spur = lex_shortest(graph, rev, means, prev[i], target, mask);
      if (!spur) continue;

      std::vector<int> total(prev.begin(), prev.begin() + i);
      total.insert(total.end(), spur->begin(), spur->end());
      if (known.insert(total).second) {
        candidates.insert({sequence_cost(graph, means, total), std::move(total)});
      }
    }

    if (candidates.empty()) break;
    auto it = candidates.begin();
    selected.push_back(it->nodes);
    candidates.erase(it);
  }

  std::vector<CandidatePath> out;
  out.reserve(selected.size());
  for (std::vector<int>& nodes : selected) {
    out.push_back(make_candidate(graph, means, std::move(nodes)));
  }
  return out;
}

PathTable build_path_table(const TransportGraph& graph,
                           const JointEdgeCostModel& model,
                           const ScenarioPlacement& placement, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (model.edge_count() != graph.edge_count()) {
    throw std::invalid_argument("cost model size must match edge count");
  }
  const int robots = static_cast<int>(placement.robot_locations.size());
  const int goals = static_cast<int>(placement.goal_locations.size());
  PathTable table(robots, goals);

  // Robots sharing a hub share path lists; enumerate each node pair once.
  std::map<std::pair<int, int>, std::vector<CandidatePath>> memo;
  for (int i = 0; i < robots; ++i) {
    for (int j = 0; j < goals; ++j) {
      const std::pair<int, int> key{placement.robot_locations[i],
                                    placement.goal_locations[j]};
      auto it = memo.find(key);
      if (it == memo.end()) {
        it = memo.emplace(key, k_shortest_paths(graph, model.mean, key.first,
                                                key.second, k))
                 .first;
      }
      table.set_paths(i, j, it->second);
    }
  }
  return table;
}

}  // namespace rra
