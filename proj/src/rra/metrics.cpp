#include "rra/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rra {

namespace {

double realized_path_cost(const CandidatePath& path,
                          const ObservedCosts& observed) {
  double acc = 0.0;
  for (int e : path.edge_indices) acc += observed.realized[e];
  return acc;
}

}  // namespace

double realized_waiting_time(const AssignmentSet& assignment,
                             const PathTable& table,
                             const ObservedCosts& observed) {
  const int m = table.goal_count();
  std::vector<double> per_goal(m, std::numeric_limits<double>::infinity());
  auto fold = [&](const AssignmentEdge& e) {
    if (e.robot < 0 || e.robot >= table.robot_count() || e.goal < 0 ||
        e.goal >= m || e.path < 0 || e.path >= table.path_count(e.robot, e.goal)) {
      throw std::invalid_argument("assignment edge out of range");
    }
    const double c =
        realized_path_cost(table.paths(e.robot, e.goal)[e.path], observed);
    per_goal[e.goal] = std::min(per_goal[e.goal], c);
  };
  for (const AssignmentEdge& e : assignment.initial) fold(e);
  for (const AssignmentEdge& e : assignment.redundant) fold(e);

  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    if (!std::isfinite(per_goal[j])) {
      throw std::invalid_argument("assignment leaves a goal uncovered");
    }
    acc += per_goal[j];
  }
  return acc / static_cast<double>(m);
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("pearson length mismatch");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> coalition_path_correlation(
    const AssignmentSet& assignment, const SampledObjective& objective) {
  const int m = objective.goal_count();
  std::vector<std::vector<AssignmentEdge>> coalitions(m);
  for (const AssignmentEdge& e : assignment.initial) {
    coalitions[e.goal].push_back(e);
  }
  for (const AssignmentEdge& e : assignment.redundant) {
    coalitions[e.goal].push_back(e);
  }

  double acc = 0.0;
  int coalition_count = 0;
  for (const auto& members : coalitions) {
    if (members.size() < 2) continue;
    double pair_acc = 0.0;
    int pair_count = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto r = pearson(objective.samples(members[a]),
                               objective.samples(members[b]));
        if (!r) continue;  // zero-variance pair carries no signal
        pair_acc += *r;
        ++pair_count;
      }
    }
    if (pair_count == 0) continue;
    acc += pair_acc / pair_count;
    ++coalition_count;
  }
  if (coalition_count == 0) return std::nullopt;
  return acc / coalition_count;
}

RunResult evaluate_assignment(std::string strategy, const AssignmentSet& set,
                              const PathTable& table,
                              const ObservedCosts& observed,
                              const SampledObjective& objective,
                              double initial_realized, double wall_ms) {
  RunResult result;
  result.strategy = std::move(strategy);
  result.realized_waiting = realized_waiting_time(set, table, observed);
  result.normalized_waiting = result.realized_waiting / initial_realized;
  result.coalition_correlation = coalition_path_correlation(set, objective);
  result.deployed = set.deployed();
  result.wall_ms = wall_ms;
  return result;
}

}  // namespace rra
