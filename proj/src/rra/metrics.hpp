#pragma once

#include <optional>
#include <span>
#include <string>

#include "rra/assignment.hpp"
#include "rra/cost_model.hpp"
#include "rra/path_enum.hpp"

namespace rra {

// Evaluation record for one strategy on one instance. normalized_waiting is
// measured against the realized waiting of the initial assignment on the
// same instance, so the plain Hungarian strategy scores exactly 1.
struct RunResult {
  std::string strategy;
  double realized_waiting = 0.0;
  double normalized_waiting = 0.0;
  std::optional<double> coalition_correlation;
  int deployed = 0;
  double wall_ms = 0.0;
};

// Mean over goals of the smallest realized path cost among the robots
// assigned to each goal.
double realized_waiting_time(const AssignmentSet& assignment,
                             const PathTable& table,
                             const ObservedCosts& observed);

// Two-pass Pearson correlation; empty when either vector has zero variance.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

// Average pairwise sample correlation of the paths inside each coalition of
// two or more robots, averaged over such coalitions. Empty when every
// coalition is a singleton (or every pair had zero variance).
std::optional<double> coalition_path_correlation(
    const AssignmentSet& assignment, const SampledObjective& objective);

RunResult evaluate_assignment(std::string strategy, const AssignmentSet& set,
                              const PathTable& table,
                              const ObservedCosts& observed,
                              const SampledObjective& objective,
                              double initial_realized, double wall_ms = 0.0);

}  // namespace rra
