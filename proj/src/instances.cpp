#include "nosub/instances.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

namespace nosub {

namespace {

// Strict inequalities in the constructions get a fixed multiplicative slack
// so float comparisons stay robust.
constexpr double kSlack = 1e-3;

Dataset column_dataset(const std::vector<double>& values) {
  Matrix points(static_cast<Index>(values.size()), 1);
  for (Index i = 0; i < points.rows(); ++i) points(i, 0) = values[static_cast<std::size_t>(i)];
  return Dataset(std::move(points));
}

}  // namespace

nlohmann::json InstanceMetadata::to_json() const {
  return {{"generator", generator}, {"params", params}, {"n", n}, {"k_hint", k_hint}};
}

InstanceMetadata InstanceMetadata::from_json(const nlohmann::json& j) {
  InstanceMetadata meta;
  meta.generator = j.at("generator").get<std::string>();
  meta.params = j.value("params", nlohmann::json::object());
  meta.n = j.at("n").get<Index>();
  meta.k_hint = j.value("k_hint", Index{0});
  return meta;
}

GeneratedInstance gen_geometric_groups(double c, Index max_n) {
  if (!(c >= 1.0)) throw std::invalid_argument("gen_geometric_groups: c must be >= 1");
  if (max_n < 1) throw std::invalid_argument("gen_geometric_groups: max_n must be >= 1");

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(max_n));
  const double base = 7.0 * c;
  Index group = 0;
  bool truncated = false;
  while (static_cast<Index>(values.size()) < max_n) {
    ++group;
    const double raw = std::pow(base, static_cast<double>(group));
    const Index remaining = max_n - static_cast<Index>(values.size());
    Index count = raw > static_cast<double>(remaining)
                      ? remaining
                      : static_cast<Index>(std::floor(raw));
    if (count < static_cast<Index>(std::floor(std::min(raw, 1e18)))) truncated = true;
    for (Index i = 0; i < count; ++i) values.push_back(static_cast<double>(group));
  }

  GeneratedInstance instance{column_dataset(values), StreamOrder::as_given(max_n), {}};
  instance.metadata.generator = "geometric_groups";
  instance.metadata.params = {{"c", c},
                              {"max_n", max_n},
                              {"groups", group},
                              {"truncated_last_group", truncated}};
  instance.metadata.n = max_n;
  instance.metadata.k_hint = 1;
  return instance;
}

GeneratedInstance gen_increasing_gaps(double c, Index n) {
  if (!(c > 1.0)) throw std::invalid_argument("gen_increasing_gaps: c must be > 1");
  if (n < 2) throw std::invalid_argument("gen_increasing_gaps: n must be >= 2");

  std::vector<double> xs = {0.0, 1.0};
  double sum_sq = 1.0;  // sum_{s=2..t} x_s^2
  while (static_cast<Index>(xs.size()) < n) {
    const double next = xs.back() + (1.0 + kSlack) * std::sqrt(c * sum_sq);
    sum_sq += next * next;
    if (!std::isfinite(next) || !std::isfinite(sum_sq)) {
      throw ResourceLimitError("gen_increasing_gaps: doubles overflow past n = " +
                               std::to_string(xs.size()) + " for c = " + std::to_string(c));
    }
    xs.push_back(next);
  }

  GeneratedInstance instance{column_dataset(xs), StreamOrder::as_given(n), {}};
  instance.metadata.generator = "increasing_gaps";
  instance.metadata.params = {{"c", c}, {"n", n}};
  instance.metadata.n = n;
  instance.metadata.k_hint = 2;
  return instance;
}

bool validate_increasing_gaps(const GeneratedInstance& instance, double c) {
  const Dataset& data = instance.dataset;
  if (data.dim() != 1) {
    throw std::invalid_argument("validate_increasing_gaps: requires a 1-d instance");
  }
  const auto x = [&](Index t) { return data.points()(t, 0); };  // 1-based like the construction
  double sum_sq = 0.0;
  for (Index t_star = 3; t_star <= data.n(); ++t_star) {
    sum_sq += x(t_star - 2) * x(t_star - 2);  // now sum_{t=2..t*-1} x_t^2
    const double gap = x(t_star - 1) - x(t_star - 2);
    if (!(gap * gap > c * sum_sq)) return false;
  }
  return true;
}

GeneratedInstance gen_k_maximal_series(double c, Index k, Index n) {
  if (!(c > 1.0)) throw std::invalid_argument("gen_k_maximal_series: c must be > 1");
  if (k < 2) throw std::invalid_argument("gen_k_maximal_series: k must be >= 2");
  if (n < k) throw std::invalid_argument("gen_k_maximal_series: n must be >= k");

  std::vector<double> ws = {0.0, 1.0};
  double sum = 1.0;     // sum of all w_j so far
  double sum_sq = 1.0;  // sum of all w_j^2 so far
  while (static_cast<Index>(ws.size()) < n) {
    const double w = ws.back();
    const auto count = static_cast<double>(ws.size());
    const double spread = count * w * w - 2.0 * w * sum + sum_sq;  // sum_j (w - w_j)^2
    const double next = w + (1.0 + kSlack) * std::sqrt(c * std::max(spread, 0.0));
    sum += next;
    sum_sq += next * next;
    if (!std::isfinite(next) || !std::isfinite(sum_sq)) {
      throw ResourceLimitError("gen_k_maximal_series: doubles overflow past n = " +
                               std::to_string(ws.size()) + " for c = " + std::to_string(c));
    }
    ws.push_back(next);
  }

  GeneratedInstance instance{column_dataset(ws), StreamOrder::as_given(n), {}};
  instance.metadata.generator = "k_maximal_series";
  instance.metadata.params = {{"c", c}, {"k", k}, {"n", n}};
  instance.metadata.n = n;
  instance.metadata.k_hint = k;
  return instance;
}

bool validate_k_maximal_series(const GeneratedInstance& instance, double c) {
  const Dataset& data = instance.dataset;
  if (data.dim() != 1) {
    throw std::invalid_argument("validate_k_maximal_series: requires a 1-d instance");
  }
  const Index n = data.n();
  for (Index i = 0; i + 1 < n; ++i) {
    const double w = data.points()(i, 0);
    double spread = 0.0;  // direct sum, robust against the incremental form
    for (Index j = 0; j <= i; ++j) {
      const double diff = w - data.points()(j, 0);
      spread += diff * diff;
    }
    const double gap = data.points()(i + 1, 0) - w;
    if (!(gap > 0.0) || !(gap * gap > c * spread)) return false;
  }
  return true;
}

GeneratedInstance gen_separated_blobs(Index k, Index per_cluster, double separation, double spread,
                                      Index dim, Rng& rng) {
  if (k < 1 || per_cluster < 1 || dim < 1 || !(separation > 0.0) || !(spread > 0.0)) {
    throw std::invalid_argument("gen_separated_blobs: all parameters must be positive");
  }

  Matrix centers = Matrix::Zero(k, dim);
  for (Index j = 0; j < k; ++j) {
    if (dim == 1) {
      centers(j, 0) = static_cast<double>(j) * separation;
    } else {
      centers(j, j % dim) = static_cast<double>(j + 1) * separation;
    }
  }

  const Index n = k * per_cluster;
  Matrix points(n, dim);
  RowVec direction(dim);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < per_cluster; ++i) {
      do {
        for (Index d = 0; d < dim; ++d) direction[d] = rng.normal();
      } while (direction.squaredNorm() == 0.0);
      const double radius =
          spread * std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim));
      points.row(j * per_cluster + i) = centers.row(j) + radius * direction / direction.norm();
    }
  }

  GeneratedInstance instance{Dataset(std::move(points)), StreamOrder::as_given(n), {}};
  instance.metadata.generator = "separated_blobs";
  instance.metadata.params = {{"k", k},
                              {"per_cluster", per_cluster},
                              {"separation", separation},
                              {"spread", spread},
                              {"dim", dim},
                              {"seed", rng.seed()},
                              {"stream_id", rng.stream_id()}};
  instance.metadata.n = n;
  instance.metadata.k_hint = k;
  return instance;
}

void write_instance(const GeneratedInstance& instance, const std::filesystem::path& path) {
  instance.dataset.save(path);
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  std::ofstream out(meta_path);
  if (!out) throw std::runtime_error("write_instance: cannot open " + meta_path.string());
  out << instance.metadata.to_json().dump(2) << '\n';
}

GeneratedInstance load_instance(const std::filesystem::path& path) {
  Dataset data = Dataset::load(path);
  const Index n = data.n();
  GeneratedInstance instance{std::move(data), StreamOrder::as_given(n), {}};
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  if (std::filesystem::exists(meta_path)) {
    std::ifstream in(meta_path);
    nlohmann::json j;
    in >> j;
    instance.metadata = InstanceMetadata::from_json(j);
  } else {
    instance.metadata.generator = "file";
    instance.metadata.params = {{"path", path.string()}};
    instance.metadata.n = n;
  }
  return instance;
}

}  // namespace nosub
