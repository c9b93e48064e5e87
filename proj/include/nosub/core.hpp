#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nosub/errors.hpp"

namespace nosub {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;
using Vec = Eigen::VectorXd;

// Points are rows; a "list of points" is a Matrix with one point per row.
// MatrixRef binds row blocks of larger buffers without copying.
using MatrixRef = Eigen::Ref<const Matrix>;
using RowRef = Eigen::Ref<const RowVec>;

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

/// Deterministic, splittable random source. A stream is identified by
/// (seed, stream_id); the engine is a std::mt19937_64 seeded with
/// splitmix64(splitmix64(seed) ^ splitmix64(stream_id + golden_gamma)).
/// split(label) derives a child stream by hashing the label into the stream
/// id, so sub-streams are reproducible regardless of how many draws the
/// parent has made. Instances are single-owner; share by splitting instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  /// Child stream with stream_id = mix(parent stream_id, label).
  Rng split(std::uint64_t label) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  /// 64-bit fingerprint of (seed, stream_id); used as the per-trial seed
  /// column in reports.
  std::uint64_t fingerprint() const { return fingerprint_; }

  std::uint64_t next_u64();
  /// Unbiased uniform draw from {0, ..., n-1}; n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);
  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01();
  /// Standard normal via Box-Muller (independent of platform library).
  double normal();

  static std::uint64_t splitmix64(std::uint64_t x);
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t fingerprint_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

// ---------------------------------------------------------------------------
// CostModel and distances
// ---------------------------------------------------------------------------

enum class CostKind { SquaredEuclidean, L1, Euclidean, LpToTheP };

/// A distance d(.,.) together with its triangle constant D, i.e. the
/// smallest declared D with d(u,v) <= D*(d(u,w) + d(w,v)) for all u,v,w.
struct CostModel {
  CostKind kind = CostKind::SquaredEuclidean;
  double p = 2.0;                  // exponent, only meaningful for LpToTheP
  double triangle_constant = 2.0;  // D

  static CostModel squared_euclidean() { return {CostKind::SquaredEuclidean, 2.0, 2.0}; }
  static CostModel l1() { return {CostKind::L1, 1.0, 1.0}; }
  static CostModel euclidean() { return {CostKind::Euclidean, 2.0, 1.0}; }
  /// d(x,y) = sum_i |x_i - y_i|^p with D = 2^(p-1); requires p >= 1.
  static CostModel lp_to_the_p(double p);

  std::string name() const;
};

/// Parses "squared_euclidean", "l1", "euclidean", or "lp:<p>".
CostModel cost_model_from_name(const std::string& name);

template <typename DerivedA, typename DerivedB>
double distance(const CostModel& model, const Eigen::MatrixBase<DerivedA>& x,
                const Eigen::MatrixBase<DerivedB>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
  }
  switch (model.kind) {
    case CostKind::SquaredEuclidean:
      return (x - y).squaredNorm();
    case CostKind::L1:
      return (x - y).cwiseAbs().sum();
    case CostKind::Euclidean:
      return (x - y).norm();
    case CostKind::LpToTheP:
      return (x - y).cwiseAbs().array().pow(model.p).sum();
  }
  throw std::logic_error("distance: unknown cost kind");
}

/// Distances from every row of `points` to the single point `c`, as a column.
Vec distances_to_point(const CostModel& model, MatrixRef points, RowRef c);

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// An indexed collection of d-dimensional points (rows). Indices are stable
/// identities; equal-valued rows at different indices are distinct points.
/// Immutable after construction.
class Dataset {
 public:
  /// Takes ownership of `points` (rows are points). Requires n >= 1,
  /// dim >= 1, and all coordinates finite.
  explicit Dataset(Matrix points);

  Index n() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  Matrix::ConstRowXpr point(Index i) const { return points_.row(i); }

  /// Plain-text format: one point per line, coordinates as decimal floats
  /// separated by commas, no header, blank lines ignored. Parse errors
  /// report the 1-based line number.
  static Dataset load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  Matrix points_;
};

/// True iff d(u,v) <= D*(d(u,w) + d(w,v)) + tol for every ordered triple of
/// dataset points. O(n^3); intended for test-sized datasets.
bool check_triangle_constant(const CostModel& model, const Dataset& data, double tol);

// ---------------------------------------------------------------------------
// StreamOrder
// ---------------------------------------------------------------------------

/// A permutation of {0, ..., n-1} giving the arrival order of a dataset.
struct StreamOrder {
  enum class Provenance { AsGiven, UniformRandom, Explicit };

  std::vector<Index> perm;
  Provenance provenance = Provenance::AsGiven;
  std::uint64_t seed = 0;       // source rng identity, UniformRandom only
  std::uint64_t stream_id = 0;

  Index size() const { return static_cast<Index>(perm.size()); }

  static StreamOrder as_given(Index n);
  /// Validates that `perm` is a bijection on {0, ..., n-1}.
  static StreamOrder explicit_order(std::vector<Index> perm);
};

/// Fisher-Yates permutation: every one of the n! orders has probability
/// 1/n!. The rng is taken by value so that the result depends only on the
/// rng identity, not on the caller's draw position.
StreamOrder uniform_permutation(Index n, Rng rng);

}  // namespace nosub
