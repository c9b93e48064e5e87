#include "nosub/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace nosub {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;
}

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

std::uint64_t Rng::splitmix64(std::uint64_t x) {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ splitmix64(b + kGoldenGamma));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), fingerprint_(mix(seed, stream_id)), engine_(fingerprint_) {}

Rng Rng::split(std::uint64_t label) const { return Rng(seed_, mix(stream_id_, label)); }

std::uint64_t Rng::next_u64() { return engine_(); }

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::uniform_below: n must be positive");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Box-Muller; u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

// ---------------------------------------------------------------------------
// CostModel
// ---------------------------------------------------------------------------

CostModel CostModel::lp_to_the_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("CostModel::lp_to_the_p: p must be >= 1");
  return {CostKind::LpToTheP, p, std::pow(2.0, p - 1.0)};
}

std::string CostModel::name() const {
  switch (kind) {
    case CostKind::SquaredEuclidean:
      return "squared_euclidean";
    case CostKind::L1:
      return "l1";
    case CostKind::Euclidean:
      return "euclidean";
    case CostKind::LpToTheP: {
      std::ostringstream os;
      os << "lp:" << p;
      return os.str();
    }
  }
  return "unknown";
}

CostModel cost_model_from_name(const std::string& name) {
  if (name == "squared_euclidean") return CostModel::squared_euclidean();
  if (name == "l1") return CostModel::l1();
  if (name == "euclidean") return CostModel::euclidean();
  if (name.rfind("lp:", 0) == 0) {
    const std::string arg = name.substr(3);
    char* end = nullptr;
    const double p = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() || *end != '\0') {
      throw std::invalid_argument("cost_model_from_name: bad exponent in '" + name + "'");
    }
    return CostModel::lp_to_the_p(p);
  }
  throw std::invalid_argument("cost_model_from_name: unknown model '" + name + "'");
}

Vec distances_to_point(const CostModel& model, MatrixRef points, RowRef c) {
  if (points.cols() != c.size()) {
    throw std::invalid_argument("distances_to_point: dimension mismatch");
  }
  switch (model.kind) {
    case CostKind::SquaredEuclidean:
      return (points.rowwise() - c).rowwise().squaredNorm();
    case CostKind::L1:
      return (points.rowwise() - c).cwiseAbs().rowwise().sum();
    case CostKind::Euclidean:
      return (points.rowwise() - c).rowwise().norm();
    case CostKind::LpToTheP:
      return (points.rowwise() - c).cwiseAbs().array().pow(model.p).rowwise().sum().matrix();
  }
  throw std::logic_error("distances_to_point: unknown cost kind");
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

Dataset::Dataset(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw std::invalid_argument("Dataset: need at least one point");
  if (points_.cols() < 1) throw std::invalid_argument("Dataset: dimension must be >= 1");
  if (!points_.allFinite()) throw std::invalid_argument("Dataset: coordinates must be finite");
}

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char ch) { return std::isspace(ch) != 0; });
}

std::vector<double> parse_point_line(const std::string& line, std::size_t line_no) {
  std::vector<double> coords;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    const std::string field =
        line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str()) {
      throw std::invalid_argument("dataset parse error at line " + std::to_string(line_no) +
                                  ": expected a number, got '" + field + "'");
    }
    while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (*end != '\0') {
      throw std::invalid_argument("dataset parse error at line " + std::to_string(line_no) +
                                  ": trailing characters in '" + field + "'");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("dataset parse error at line " + std::to_string(line_no) +
                                  ": non-finite coordinate");
    }
    coords.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return coords;
}

}  // namespace

Dataset Dataset::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("Dataset::load: cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto coords = parse_point_line(line, line_no);
    if (dim == 0) {
      dim = coords.size();
    } else if (coords.size() != dim) {
      throw std::invalid_argument("dataset parse error at line " + std::to_string(line_no) +
                                  ": expected " + std::to_string(dim) + " coordinates, got " +
                                  std::to_string(coords.size()));
    }
    rows.push_back(std::move(coords));
  }
  if (rows.empty()) {
    throw std::invalid_argument("Dataset::load: no points in " + path.string());
  }
  Matrix points(static_cast<Index>(rows.size()), static_cast<Index>(dim));
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < points.cols(); ++j) points(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return Dataset(std::move(points));
}

void Dataset::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("Dataset::save: cannot open " + path.string());
  out.precision(std::numeric_limits<double>::max_digits10);
  for (Index i = 0; i < n(); ++i) {
    for (Index j = 0; j < dim(); ++j) {
      if (j > 0) out << ',';
      out << points_(i, j);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("Dataset::save: write failed for " + path.string());
}

bool check_triangle_constant(const CostModel& model, const Dataset& data, double tol) {
  if (tol < 0) throw std::invalid_argument("check_triangle_constant: tol must be >= 0");
  const Index n = data.n();
  const double d_const = model.triangle_constant;
  for (Index u = 0; u < n; ++u) {
    for (Index v = 0; v < n; ++v) {
      const double duv = distance(model, data.point(u), data.point(v));
      for (Index w = 0; w < n; ++w) {
        const double bound = d_const * (distance(model, data.point(u), data.point(w)) +
                                        distance(model, data.point(w), data.point(v)));
        if (duv > bound + tol) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// StreamOrder
// ---------------------------------------------------------------------------

StreamOrder StreamOrder::as_given(Index n) {
  if (n < 1) throw std::invalid_argument("StreamOrder::as_given: n must be >= 1");
  StreamOrder order;
  order.perm.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order.perm[static_cast<std::size_t>(i)] = i;
  order.provenance = Provenance::AsGiven;
  return order;
}

StreamOrder StreamOrder::explicit_order(std::vector<Index> perm) {
  const Index n = static_cast<Index>(perm.size());
  if (n < 1) throw std::invalid_argument("StreamOrder::explicit_order: empty permutation");
  std::vector<bool> seen(perm.size(), false);
  for (Index v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("StreamOrder::explicit_order: not a bijection on {0..n-1}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  StreamOrder order;
  order.perm = std::move(perm);
  order.provenance = Provenance::Explicit;
  return order;
}

StreamOrder uniform_permutation(Index n, Rng rng) {
  if (n < 1) throw std::invalid_argument("uniform_permutation: n must be >= 1");
  StreamOrder order;
  order.perm.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order.perm[static_cast<std::size_t>(i)] = i;
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order.perm[static_cast<std::size_t>(i)], order.perm[static_cast<std::size_t>(j)]);
  }
  order.provenance = StreamOrder::Provenance::UniformRandom;
  order.seed = rng.seed();
  order.stream_id = rng.stream_id();
  return order;
}

}  // namespace nosub
