#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rra {

// Packed row-major lower-triangular matrix; row r stores r+1 entries.
class LowerTriangular {
 public:
  LowerTriangular() = default;
  explicit LowerTriangular(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0) {}

  int dim() const { return dim_; }
  double at(int row, int col) const { return data_[offset(row) + col]; }
  double& at(int row, int col) { return data_[offset(row) + col]; }
  std::span<const double> row(int r) const {
    return {data_.data() + offset(r), static_cast<std::size_t>(r) + 1};
  }

  // y = L * z
  std::vector<double> multiply(std::span<const double> z) const;

 private:
  static std::size_t offset(int row) {
    return static_cast<std::size_t>(row) * (row + 1) / 2;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

// Joint distribution of edge traversal times: a multivariate Gaussian with
// covariance chol * chol^T, truncated at 0 by clamping each draw.
struct JointEdgeCostModel {
  std::vector<double> mean;
  LowerTriangular chol;

  int edge_count() const { return static_cast<int>(mean.size()); }
  double covariance(int a, int b) const;

  std::string to_json() const;
  static JointEdgeCostModel from_json(const std::string& document);
};

struct EdgeSampleMatrix {
  int sample_count = 0;
  int edge_count = 0;
  std::vector<double> data;  // sample_count x edge_count, row-major
  std::uint64_t seed = 0;

  double at(int sample, int edge) const {
    return data[static_cast<std::size_t>(sample) * edge_count + edge];
  }
  std::span<const double> row(int sample) const {
    return {data.data() + static_cast<std::size_t>(sample) * edge_count,
            static_cast<std::size_t>(edge_count)};
  }
};

// One realized draw of every edge cost, used for evaluation only.
struct ObservedCosts {
  std::vector<double> realized;
  std::uint64_t seed = 0;
};

// Means ~ U(10, 20); variances ~ U(25, 100), hit exactly by rescaling each
// factor row; off-diagonal magnitude grows with correlation_strength
// (0 gives a diagonal factor, i.e. independent edges).
JointEdgeCostModel build_random_cost_model(int edge_count,
                                           double correlation_strength,
                                           std::uint64_t seed);

// max(0, mean + chol * z) element-wise.
std::vector<double> truncated_draw(const JointEdgeCostModel& model,
                                   std::span<const double> z);

EdgeSampleMatrix sample_edge_costs(const JointEdgeCostModel& model, int s,
                                   std::uint64_t seed);

ObservedCosts draw_observed(const JointEdgeCostModel& model,
                            std::uint64_t seed);

// Per-sample sum of edge draws along a path. Paths sharing edges are
// correlated by construction because they read the same draws.
std::vector<double> path_cost_samples(const EdgeSampleMatrix& samples,
                                      std::span<const int> path_edges);

}  // namespace rra
