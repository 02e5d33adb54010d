#include "rra/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "rra/errors.hpp"
#include "rra/rng.hpp"

namespace rra {

std::vector<double> LowerTriangular::multiply(std::span<const double> z) const {
  std::vector<double> out(dim_, 0.0);
  const double* p = data_.data();
  for (int r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (int c = 0; c <= r; ++c) acc += p[c] * z[c];
    out[r] = acc;
    p += r + 1;
  }
  return out;
}

double JointEdgeCostModel::covariance(int a, int b) const {
  const int k = std::min(a, b);
  double acc = 0.0;
  for (int c = 0; c <= k; ++c) acc += chol.at(a, c) * chol.at(b, c);
  return acc;
}

std::string JointEdgeCostModel::to_json() const {
  nlohmann::json doc;
  doc["means"] = mean;
  auto& rows = doc["chol_factor"] = nlohmann::json::array();
  for (int r = 0; r < chol.dim(); ++r) {
    const auto row = chol.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return doc.dump();
}

JointEdgeCostModel JointEdgeCostModel::from_json(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cost model document: ") + e.what());
  }
  if (!doc.contains("means") || !doc.contains("chol_factor")) {
    throw ParseError(
        "cost model document: requires fields 'means' and 'chol_factor'");
  }
  JointEdgeCostModel model;
  model.mean = doc.at("means").get<std::vector<double>>();
  const auto& rows = doc.at("chol_factor");
  if (!rows.is_array() || rows.size() != model.mean.size()) {
    throw ParseError(
        "cost model document: field 'chol_factor' must have one row per mean");
  }
  model.chol = LowerTriangular(static_cast<int>(model.mean.size()));
  for (int r = 0; r < model.chol.dim(); ++r) {
    const auto row = rows[r].get<std::vector<double>>();
    if (static_cast<int>(row.size()) != r + 1) {
      throw ParseError(
          "cost model document: field 'chol_factor' row has wrong length");
    }
    for (int c = 0; c <= r; ++c) model.chol.at(r, c) = row[c];
  }
  return model;
}

JointEdgeCostModel build_random_cost_model(int edge_count,
                                           double correlation_strength,
                                           std::uint64_t seed) {
  if (edge_count < 1) throw std::invalid_argument("edge_count must be >= 1");
  if (correlation_strength < 0.0 || correlation_strength > 1.0) {
    throw std::invalid_argument("correlation_strength must be in [0, 1]");
  }

  Rng rng(derive_seed(seed, 0x636f7374));
  JointEdgeCostModel model;
  model.mean.resize(edge_count);
  for (int e = 0; e < edge_count; ++e) model.mean[e] = rng.uniform(10.0, 20.0);

  std::vector<double> target_var(edge_count);
  for (int e = 0; e < edge_count; ++e) target_var[e] = rng.uniform(25.0, 100.0);

  // Raw row: unit diagonal plus off-diagonal noise scaled by 1/sqrt(row), so
  // pairwise correlation levels do not drift with the edge count. Rescaling
  // each row to norm sqrt(target_var) makes diag(LL^T) hit the targets
  // exactly while keeping LL^T positive semidefinite by construction.
  model.chol = LowerTriangular(edge_count);
  for (int r = 0; r < edge_count; ++r) {
    double norm_sq = 1.0;
    const double off_scale =
        r > 0 ? correlation_strength / std::sqrt(static_cast<double>(r)) : 0.0;
    for (int c = 0; c < r; ++c) {
      const double x = off_scale * rng.uniform(-1.0, 1.0);
      model.chol.at(r, c) = x;
      norm_sq += x * x;
    }
    model.chol.at(r, r) = 1.0;
    const double scale = std::sqrt(target_var[r] / norm_sq);
    for (int c = 0; c <= r; ++c) model.chol.at(r, c) *= scale;
  }
  return model;
}

std::vector<double> truncated_draw(const JointEdgeCostModel& model,
                                   std::span<const double> z) {
  if (static_cast<int>(z.size()) != model.edge_count()) {
    throw std::invalid_argument("draw dimension mismatch");
  }
  std::vector<double> out = model.chol.multiply(z);
  for (int e = 0; e < model.edge_count(); ++e) {
    out[e] = std::max(0.0, model.mean[e] + out[e]);
  }
  return out;
}

EdgeSampleMatrix sample_edge_costs(const JointEdgeCostModel& model, int s,
                                   std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("sample count must be >= 1");
  const int e = model.edge_count();
  EdgeSampleMatrix m;
  m.sample_count = s;
  m.edge_count = e;
  m.seed = seed;
  m.data.resize(static_cast<std::size_t>(s) * e);

  Rng rng(derive_seed(seed, 0x73616d70));
  std::vector<double> z(e);
  for (int row = 0; row < s; ++row) {
    for (int i = 0; i < e; ++i) z[i] = rng.normal();
    const std::vector<double> draw = truncated_draw(model, z);
    std::copy(draw.begin(), draw.end(),
              m.data.begin() + static_cast<std::size_t>(row) * e);
  }
  return m;
}

ObservedCosts draw_observed(const JointEdgeCostModel& model,
                            std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x6f627376));
  std::vector<double> z(model.edge_count());
  for (double& v : z) v = rng.normal();
  return ObservedCosts{truncated_draw(model, z), seed};
}

std::vector<double> path_cost_samples(const EdgeSampleMatrix& samples,
                                      std::span<const int> path_edges) {
  for (int e : path_edges) {
    if (e < 0 || e >= samples.edge_count) {
      throw std::invalid_argument("path edge index out of range");
    }
  }
  std::vector<double> out(samples.sample_count, 0.0);
  for (int z = 0; z < samples.sample_count; ++z) {
    double acc = 0.0;
    for (int e : path_edges) acc += samples.at(z, e);
    out[z] = acc;
  }
  return out;
}

}  // namespace rra
