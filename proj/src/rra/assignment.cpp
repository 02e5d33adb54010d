#include "rra/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "rra/rng.hpp"

namespace rra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_left_to_right(std::span<const double> values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

std::vector<char> robot_occupancy(int robot_count,
                                  std::span<const AssignmentEdge> initial) {
  std::vector<char> used(robot_count, 0);
  for (const AssignmentEdge& e : initial) {
    if (e.robot < 0 || e.robot >= robot_count) {
      throw std::invalid_argument("initial assignment robot out of range");
    }
    used[e.robot] = 1;
  }
  return used;
}

void validate_edge(const SampledObjective& objective, const AssignmentEdge& e) {
  if (e.goal < 0 || e.goal >= objective.goal_count() || e.robot < 0 ||
      e.robot >= objective.robot_count() || e.path < 0 ||
      e.path >= objective.path_count(e.robot, e.goal)) {
    throw std::invalid_argument("assignment edge out of range");
  }
}

void validate_initial(const SampledObjective& objective,
                      std::span<const AssignmentEdge> initial) {
  std::vector<int> goal_cover(objective.goal_count(), 0);
  std::vector<char> robot_seen(objective.robot_count(), 0);
  for (const AssignmentEdge& e : initial) {
    validate_edge(objective, e);
    if (robot_seen[e.robot]) {
      throw std::invalid_argument("initial assignment reuses a robot");
    }
    robot_seen[e.robot] = 1;
    ++goal_cover[e.goal];
  }
  for (int j = 0; j < objective.goal_count(); ++j) {
    if (goal_cover[j] != 1) {
      throw std::invalid_argument("initial assignment must cover every goal once");
    }
  }
}

// Per-pair cost of the best path by sample mean, plus the minimizing path.
struct BestPath {
  double cost = kInf;
  int path = -1;
};

BestPath best_path_by_mean(const SampledObjective& objective, int robot,
                           int goal) {
  BestPath best;
  for (int k = 0; k < objective.path_count(robot, goal); ++k) {
    const double m = objective.sample_mean(robot, goal, k);
    if (m < best.cost) best = {m, k};
  }
  return best;
}

}  // namespace

SampledObjective SampledObjective::from_paths(const PathTable& table,
                                              const EdgeSampleMatrix& samples) {
  SampledObjective o;
  o.robots_ = table.robot_count();
  o.goals_ = table.goal_count();
  o.s_ = samples.sample_count;
  o.counts_.resize(static_cast<std::size_t>(o.robots_) * o.goals_);
  o.offsets_.resize(o.counts_.size());

  std::size_t rows = 0;
  for (int i = 0; i < o.robots_; ++i) {
    for (int j = 0; j < o.goals_; ++j) {
      const std::size_t cell = static_cast<std::size_t>(i) * o.goals_ + j;
      o.offsets_[cell] = rows;
      o.counts_[cell] = table.path_count(i, j);
      rows += static_cast<std::size_t>(o.counts_[cell]);
    }
  }
  o.data_.resize(rows * o.s_);
  o.means_.resize(rows);
  for (int i = 0; i < o.robots_; ++i) {
    for (int j = 0; j < o.goals_; ++j) {
      for (int k = 0; k < o.counts_[static_cast<std::size_t>(i) * o.goals_ + j];
           ++k) {
        const std::vector<double> costs =
            path_cost_samples(samples, table.paths(i, j)[k].edge_indices);
        const std::size_t r = o.row(i, j, k);
        std::copy(costs.begin(), costs.end(), o.data_.begin() + r * o.s_);
        o.means_[r] = mean_left_to_right(costs);
      }
    }
  }
  return o;
}

SampledObjective::Builder::Builder(int robots, int goals, int sample_count)
    : robots_(robots), goals_(goals), s_(sample_count) {
  if (robots < 1 || goals < 1 || sample_count < 1) {
    throw std::invalid_argument("builder dimensions must be positive");
  }
  rows_.resize(static_cast<std::size_t>(robots) * goals);
}

SampledObjective::Builder& SampledObjective::Builder::add_path(
    int robot, int goal, std::vector<double> path_samples) {
  if (robot < 0 || robot >= robots_ || goal < 0 || goal >= goals_) {
    throw std::invalid_argument("builder index out of range");
  }
  if (static_cast<int>(path_samples.size()) != s_) {
    throw std::invalid_argument("sample vector length mismatch");
  }
  rows_[static_cast<std::size_t>(robot) * goals_ + goal].push_back(
      std::move(path_samples));
  return *this;
}

SampledObjective SampledObjective::Builder::build() {
  SampledObjective o;
  o.robots_ = robots_;
  o.goals_ = goals_;
  o.s_ = s_;
  o.counts_.resize(rows_.size());
  o.offsets_.resize(rows_.size());
  std::size_t rows = 0;
  for (std::size_t cell = 0; cell < rows_.size(); ++cell) {
    o.offsets_[cell] = rows;
    o.counts_[cell] = static_cast<int>(rows_[cell].size());
    rows += rows_[cell].size();
  }
  o.data_.resize(rows * s_);
  o.means_.resize(rows);
  std::size_t r = 0;
  for (const auto& cell : rows_) {
    for (const auto& vec : cell) {
      std::copy(vec.begin(), vec.end(), o.data_.begin() + r * s_);
      o.means_[r] = mean_left_to_right(vec);
      ++r;
    }
  }
  return o;
}

TaskState::TaskState(const SampledObjective& objective,
                     std::span<const AssignmentEdge> initial)
    : goals_(objective.goal_count()), s_(objective.sample_count()) {
  validate_initial(objective, initial);
  state_.resize(static_cast<std::size_t>(goals_) * s_);
  for (const AssignmentEdge& e : initial) {
    const auto src = objective.samples(e);
    std::copy(src.begin(), src.end(),
              state_.begin() + static_cast<std::size_t>(e.goal) * s_);
  }
}

double TaskState::row_mean(int goal) const { return mean_left_to_right(row(goal)); }

void TaskState::apply(const SampledObjective& objective,
                      const AssignmentEdge& edge) {
  const auto candidate = objective.samples(edge);
  double* r = state_.data() + static_cast<std::size_t>(edge.goal) * s_;
  for (int z = 0; z < s_; ++z) r[z] = std::min(r[z], candidate[z]);
}

std::vector<int> hungarian(const CostMatrix& cost) {
  const int n = cost.rows;
  const int m = cost.cols;
  if (n < 1 || m < n) {
    throw std::invalid_argument("cost matrix needs 1 <= rows <= cols");
  }
  for (double v : cost.data) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("cost matrix entries must be finite and >= 0");
    }
  }

  // Potentials-based Kuhn-Munkres on a rows <= cols matrix, 1-indexed
  // internally; p[j] is the row matched to column j.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

InitialAssignment initial_assignment(const SampledObjective& objective) {
  const int n = objective.robot_count();
  const int m = objective.goal_count();
  if (n < m) throw std::invalid_argument("need at least one robot per goal");

  CostMatrix cost(m, n);
  std::vector<int> best_k(static_cast<std::size_t>(m) * n, -1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      const BestPath best = best_path_by_mean(objective, i, j);
      if (best.path < 0) {
        throw std::invalid_argument("every robot-goal pair needs a path");
      }
      cost.at(j, i) = best.cost;
      best_k[static_cast<std::size_t>(j) * n + i] = best.path;
    }
  }

  const std::vector<int> match = hungarian(cost);
  InitialAssignment result;
  result.set.initial.reserve(m);
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const int i = match[j];
    const int k = best_k[static_cast<std::size_t>(j) * n + i];
    result.set.initial.push_back({i, j, k});
    acc += objective.sample_mean(i, j, k);
  }
  result.baseline_cost = acc / static_cast<double>(m);
  return result;
}

bool is_independent(std::span<const AssignmentEdge> candidate,
                    const MatroidSpec& matroid,
                    std::span<const AssignmentEdge> initial) {
  if (static_cast<int>(candidate.size()) > matroid.budget) return false;
  std::vector<int> seen;
  seen.reserve(initial.size() + candidate.size());
  for (const AssignmentEdge& e : initial) seen.push_back(e.robot);
  for (const AssignmentEdge& e : candidate) seen.push_back(e.robot);
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

std::vector<AssignmentEdge> eligible_set(std::span<const AssignmentEdge> current,
                                         const MatroidSpec& matroid,
                                         std::span<const AssignmentEdge> initial,
                                         const SampledObjective& objective) {
  std::vector<AssignmentEdge> out;
  if (static_cast<int>(current.size()) >= matroid.budget) return out;
  std::vector<char> used = robot_occupancy(objective.robot_count(), initial);
  for (const AssignmentEdge& e : current) used[e.robot] = 1;
  for (int i = 0; i < objective.robot_count(); ++i) {
    if (used[i]) continue;
    for (int j = 0; j < objective.goal_count(); ++j) {
      for (int k = 0; k < objective.path_count(i, j); ++k) {
        out.push_back({i, j, k});
      }
    }
  }
  return out;
}

std::vector<double> aggregate_min(std::span<const double> state_row,
                                  std::span<const double> candidate_samples) {
  if (state_row.size() != candidate_samples.size()) {
    throw std::invalid_argument("aggregate_min length mismatch");
  }
  std::vector<double> out(state_row.begin(), state_row.end());
  for (std::size_t z = 0; z < out.size(); ++z) {
    out[z] = std::min(out[z], candidate_samples[z]);
  }
  return out;
}

double marginal_decrease(const TaskState& state, int goal,
                         std::span<const double> candidate_samples) {
  const auto row = state.row(goal);
  double acc = 0.0;
  for (std::size_t z = 0; z < row.size(); ++z) {
    acc += std::min(row[z], candidate_samples[z]);
  }
  return state.row_mean(goal) - acc / static_cast<double>(row.size());
}

GreedyResult greedy_redundant_assignment(const SampledObjective& objective,
                                         std::span<const AssignmentEdge> initial,
                                         int budget) {
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
  TaskState state(objective, initial);
  std::vector<char> used = robot_occupancy(objective.robot_count(), initial);

  GreedyResult result;
  result.assignment.initial.assign(initial.begin(), initial.end());

  for (int d = 0; d < budget; ++d) {
    double best_delta = -kInf;
    std::optional<AssignmentEdge> best;
    for (int i = 0; i < objective.robot_count(); ++i) {
      if (used[i]) continue;
      for (int j = 0; j < objective.goal_count(); ++j) {
        for (int k = 0; k < objective.path_count(i, j); ++k) {
          ++result.evaluation_count;
          const double delta =
              marginal_decrease(state, j, objective.samples(i, j, k));
          if (delta > best_delta) {
            best_delta = delta;
            best = AssignmentEdge{i, j, k};
          }
        }
      }
    }
    if (!best) break;  // every robot deployed
    used[best->robot] = 1;
    state.apply(objective, *best);
    result.assignment.redundant.push_back(*best);
    result.marginal_decreases.push_back(best_delta);
  }

  double acc = 0.0;
  for (int j = 0; j < objective.goal_count(); ++j) acc += state.row_mean(j);
  result.objective = acc / static_cast<double>(objective.goal_count());
  return result;
}

double per_goal_objective(const AssignmentSet& assignment,
                          const SampledObjective& objective, int goal) {
  const int s = objective.sample_count();
  double acc = 0.0;
  for (int z = 0; z < s; ++z) {
    double lowest = kInf;
    for (const AssignmentEdge& e : assignment.initial) {
      if (e.goal == goal) lowest = std::min(lowest, objective.samples(e)[z]);
    }
    for (const AssignmentEdge& e : assignment.redundant) {
      if (e.goal == goal) lowest = std::min(lowest, objective.samples(e)[z]);
    }
    acc += lowest;
  }
  return acc / static_cast<double>(s);
}

double objective_value(const AssignmentSet& assignment,
                       const SampledObjective& objective) {
  validate_initial(objective, assignment.initial);
  for (const AssignmentEdge& e : assignment.redundant) {
    validate_edge(objective, e);
  }
  double acc = 0.0;
  for (int j = 0; j < objective.goal_count(); ++j) {
    acc += per_goal_objective(assignment, objective, j);
  }
  return acc / static_cast<double>(objective.goal_count());
}

AssignmentSet baseline_random(const SampledObjective& objective,
                              std::span<const AssignmentEdge> initial,
                              int budget, std::uint64_t seed) {
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
  std::vector<char> used = robot_occupancy(objective.robot_count(), initial);
  std::vector<int> free_robots;
  for (int i = 0; i < objective.robot_count(); ++i) {
    if (!used[i]) free_robots.push_back(i);
  }

  Rng rng(derive_seed(seed, 0x726e64));
  AssignmentSet set;
  set.initial.assign(initial.begin(), initial.end());
  const int picks = std::min<int>(budget, static_cast<int>(free_robots.size()));
  for (int d = 0; d < picks; ++d) {
    const int pos =
        d + static_cast<int>(rng.bounded(free_robots.size() - d));
    std::swap(free_robots[d], free_robots[pos]);
    const int robot = free_robots[d];
    const int goal = static_cast<int>(rng.bounded(objective.goal_count()));
    const int path =
        static_cast<int>(rng.bounded(objective.path_count(robot, goal)));
    set.redundant.push_back({robot, goal, path});
  }
  return set;
}

AssignmentSet baseline_repeated_hungarian(const SampledObjective& objective,
                                          std::span<const AssignmentEdge> initial,
                                          int budget) {
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
  const int m = objective.goal_count();
  std::vector<char> used = robot_occupancy(objective.robot_count(), initial);

  AssignmentSet set;
  set.initial.assign(initial.begin(), initial.end());
  int remaining = budget;
  while (remaining > 0) {
    std::vector<int> free_robots;
    for (int i = 0; i < objective.robot_count(); ++i) {
      if (!used[i]) free_robots.push_back(i);
    }
    if (free_robots.empty()) break;
    const int r = static_cast<int>(free_robots.size());

    struct Pick {
      double cost;
      AssignmentEdge edge;
    };
    std::vector<Pick> round;
    if (m <= r) {
      // Goals as rows: every goal gains one robot this round.
      CostMatrix cost(m, r);
      std::vector<int> best_k(static_cast<std::size_t>(m) * r);
      for (int j = 0; j < m; ++j) {
        for (int c = 0; c < r; ++c) {
          const BestPath best = best_path_by_mean(objective, free_robots[c], j);
          cost.at(j, c) = best.cost;
          best_k[static_cast<std::size_t>(j) * r + c] = best.path;
        }
      }
      const std::vector<int> match = hungarian(cost);
      for (int j = 0; j < m; ++j) {
        const int c = match[j];
        round.push_back({cost.at(j, c),
                         {free_robots[c], j,
                          best_k[static_cast<std::size_t>(j) * r + c]}});
      }
    } else {
      // Fewer robots than goals: robots as rows, each matched to a goal.
      CostMatrix cost(r, m);
      std::vector<int> best_k(static_cast<std::size_t>(r) * m);
      for (int c = 0; c < r; ++c) {
        for (int j = 0; j < m; ++j) {
          const BestPath best = best_path_by_mean(objective, free_robots[c], j);
          cost.at(c, j) = best.cost;
          best_k[static_cast<std::size_t>(c) * m + j] = best.path;
        }
      }
      const std::vector<int> match = hungarian(cost);
      for (int c = 0; c < r; ++c) {
        const int j = match[c];
        round.push_back({cost.at(c, j),
                         {free_robots[c], j,
                          best_k[static_cast<std::size_t>(c) * m + j]}});
      }
    }

    if (static_cast<int>(round.size()) > remaining) {
      // Short final round: keep the cheapest matched pairs.
      std::sort(round.begin(), round.end(), [](const Pick& a, const Pick& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.edge < b.edge;
      });
      round.resize(remaining);
    }
    std::sort(round.begin(), round.end(),
              [](const Pick& a, const Pick& b) { return a.edge < b.edge; });
    for (const Pick& p : round) {
      set.redundant.push_back(p.edge);
      used[p.edge.robot] = 1;
      --remaining;
    }
  }
  return set;
}

AssignmentSet best_aposteriori(const PathTable& table,
                               const ObservedCosts& observed) {
  const int n = table.robot_count();
  const int m = table.goal_count();
  if (n < m) throw std::invalid_argument("need at least one robot per goal");

  auto realized_path_cost = [&observed](const CandidatePath& p) {
    double acc = 0.0;
    for (int e : p.edge_indices) acc += observed.realized[e];
    return acc;
  };

  CostMatrix cost(m, n);
  std::vector<int> best_k(static_cast<std::size_t>(m) * n, -1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      double best = kInf;
      int best_path = -1;
      for (int k = 0; k < table.path_count(i, j); ++k) {
        const double c = realized_path_cost(table.paths(i, j)[k]);
        if (c < best) {
          best = c;
          best_path = k;
        }
      }
      if (best_path < 0) {
        throw std::invalid_argument("every robot-goal pair needs a path");
      }
      cost.at(j, i) = best;
      best_k[static_cast<std::size_t>(j) * n + i] = best_path;
    }
  }

  const std::vector<int> match = hungarian(cost);
  AssignmentSet set;
  set.initial.reserve(m);
  for (int j = 0; j < m; ++j) {
    const int i = match[j];
    set.initial.push_back({i, j, best_k[static_cast<std::size_t>(j) * n + i]});
  }
  return set;
}

BruteForceResult brute_force_optimal(const SampledObjective& objective,
                                     std::span<const AssignmentEdge> initial,
                                     int budget) {
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
  const MatroidSpec matroid{budget};
  const std::vector<AssignmentEdge> ground =
      eligible_set({}, MatroidSpec{budget + 1}, initial, objective);

  // Subset count guard: sum_{t<=budget} C(|ground|, t).
  double subsets = 1.0;
  double binom = 1.0;
  for (int t = 1; t <= budget; ++t) {
    binom *= static_cast<double>(ground.size() - t + 1) / t;
    subsets += binom;
    if (subsets > 1e6) {
      throw std::invalid_argument("instance too large for exhaustive search");
    }
  }

  AssignmentSet current;
  current.initial.assign(initial.begin(), initial.end());
  BruteForceResult best;
  best.assignment = current;
  best.objective = objective_value(current, objective);

  // Group candidates by robot so enumerated sets use distinct robots.
  std::vector<std::pair<std::size_t, std::size_t>> robot_ranges;
  for (std::size_t lo = 0; lo < ground.size();) {
    std::size_t hi = lo;
    while (hi < ground.size() && ground[hi].robot == ground[lo].robot) ++hi;
    robot_ranges.emplace_back(lo, hi);
    lo = hi;
  }

  auto consider = [&](const AssignmentSet& candidate) {
    const double value = objective_value(candidate, objective);
    const bool better =
        value < best.objective ||
        (value == best.objective &&
         candidate.redundant.size() > best.assignment.redundant.size());
    if (better) {
      best.assignment = candidate;
      best.objective = value;
    }
  };

  auto recurse = [&](auto&& self, std::size_t range_idx) -> void {
    if (range_idx == robot_ranges.size()) {
      consider(current);
      return;
    }
    if (static_cast<int>(current.redundant.size()) == matroid.budget) {
      consider(current);
      return;
    }
    self(self, range_idx + 1);  // skip this robot
    const auto [lo, hi] = robot_ranges[range_idx];
    for (std::size_t e = lo; e < hi; ++e) {
      current.redundant.push_back(ground[e]);
      self(self, range_idx + 1);
      current.redundant.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace rra
