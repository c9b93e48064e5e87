#include "nosub/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nosub {

namespace {

// Cost sums accumulate sequentially so results are reproducible across
// vectorization levels and thread counts.
double sequential_sum(const Vec& values) {
  double total = 0.0;
  for (Index i = 0; i < values.size(); ++i) total += values[i];
  return total;
}

// Centers count at which the 1-d cost switches to a sorted scan.
constexpr Index kSorted1dThreshold = 64;

double scalar_distance_1d(const CostModel& model, double diff) {
  switch (model.kind) {
    case CostKind::SquaredEuclidean:
      return diff * diff;
    case CostKind::L1:
      return std::abs(diff);
    case CostKind::Euclidean:
      return std::sqrt(diff * diff);  // matches the vectorized norm path bit for bit
    case CostKind::LpToTheP:
      return std::pow(std::abs(diff), model.p);
  }
  return 0.0;
}

double clustering_cost_1d_sorted(const Dataset& data, MatrixRef centers, const CostModel& model) {
  std::vector<double> values(static_cast<std::size_t>(centers.rows()));
  for (Index j = 0; j < centers.rows(); ++j) values[static_cast<std::size_t>(j)] = centers(j, 0);
  std::sort(values.begin(), values.end());

  double total = 0.0;
  for (Index i = 0; i < data.n(); ++i) {
    const double x = data.points()(i, 0);
    auto it = std::lower_bound(values.begin(), values.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != values.end()) best = std::min(best, std::abs(x - *it));
    if (it != values.begin()) best = std::min(best, std::abs(x - *(it - 1)));
    total += scalar_distance_1d(model, best);
  }
  return total;
}

void validate_centers(const Dataset& data, MatrixRef centers, const char* who) {
  if (centers.rows() < 1) {
    throw std::invalid_argument(std::string(who) + ": need at least one center");
  }
  if (centers.cols() != data.dim()) {
    throw std::invalid_argument(std::string(who) + ": center dimension " +
                                std::to_string(centers.cols()) + " does not match dataset dimension " +
                                std::to_string(data.dim()));
  }
}

bool next_combination(std::vector<Index>& comb, Index n) {
  const Index k = static_cast<Index>(comb.size());
  Index i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < k; ++j) {
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

}  // namespace

double Assignment::total_cost() const { return sequential_sum(per_point_cost); }

Assignment assign_points(const Dataset& data, MatrixRef centers, const CostModel& model) {
  validate_centers(data, centers, "assign_points");
  Assignment out;
  out.per_point_cost = distances_to_point(model, data.points(), centers.row(0));
  out.owner.assign(static_cast<std::size_t>(data.n()), 0);
  for (Index j = 1; j < centers.rows(); ++j) {
    const Vec dj = distances_to_point(model, data.points(), centers.row(j));
    for (Index i = 0; i < data.n(); ++i) {
      if (dj[i] < out.per_point_cost[i]) {  // strict: ties keep the lowest j
        out.per_point_cost[i] = dj[i];
        out.owner[static_cast<std::size_t>(i)] = j;
      }
    }
  }
  return out;
}

double clustering_cost(const Dataset& data, MatrixRef centers, const CostModel& model) {
  validate_centers(data, centers, "clustering_cost");
  if (data.dim() == 1 && centers.rows() >= kSorted1dThreshold) {
    return clustering_cost_1d_sorted(data, centers, model);
  }
  Vec mind = distances_to_point(model, data.points(), centers.row(0));
  for (Index j = 1; j < centers.rows(); ++j) {
    mind = mind.cwiseMin(distances_to_point(model, data.points(), centers.row(j)));
  }
  return sequential_sum(mind);
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;  // exact: this is C(n-k+i, i)
    if (result > cap) return cap + 1;   // C(n-k+i, i) is nondecreasing in i
  }
  return static_cast<std::uint64_t>(result);
}

OptResult brute_force_opt(const Dataset& data, Index k, const CostModel& model,
                          std::uint64_t max_subsets) {
  const Index n = data.n();
  if (k < 1 || k > n) {
    throw std::invalid_argument("brute_force_opt: k must be in [1, n], got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  }
  const std::uint64_t subsets =
      binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                      std::numeric_limits<std::uint64_t>::max() / 2);
  if (subsets > max_subsets) {
    throw ResourceLimitError("brute_force_opt: C(" + std::to_string(n) + "," + std::to_string(k) +
                             ") = " + std::to_string(subsets) + " exceeds the budget of " +
                             std::to_string(max_subsets) + " subsets");
  }

  if (k == 1) {
    OptResult best{{0}, std::numeric_limits<double>::infinity()};
    for (Index j = 0; j < n; ++j) {
      const double cost = sequential_sum(distances_to_point(model, data.points(), data.point(j)));
      if (cost < best.cost) {
        best.cost = cost;
        best.centers[0] = j;
      }
    }
    return best;
  }

  // Pairwise distances make the subset scan O(n*k) per subset.
  const bool use_matrix = n <= 3000;
  Matrix dist;
  if (use_matrix) {
    dist.resize(n, n);
    for (Index j = 0; j < n; ++j) {
      dist.col(j) = distances_to_point(model, data.points(), data.point(j));
    }
  }
  const auto point_to_center = [&](Index i, Index j) {
    return use_matrix ? dist(i, j) : distance(model, data.point(i), data.point(j));
  };

  std::vector<Index> comb(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;

  OptResult best;
  best.cost = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    bool pruned = false;
    for (Index i = 0; i < n; ++i) {
      double m = point_to_center(i, comb[0]);
      for (std::size_t j = 1; j < comb.size(); ++j) m = std::min(m, point_to_center(i, comb[j]));
      total += m;
      if (total >= best.cost) {  // cannot become strictly better; ties keep the earlier subset
        pruned = true;
        break;
      }
    }
    if (!pruned && total < best.cost) {
      best.cost = total;
      best.centers = comb;
    }
  } while (next_combination(comb, n));
  return best;
}

double expected_random_center_cost(const Dataset& data, const CostModel& model) {
  const Index n = data.n();
  double total = 0.0;
  for (Index j = 0; j < n; ++j) {
    total += sequential_sum(distances_to_point(model, data.points(), data.point(j)));
  }
  return total / static_cast<double>(n);
}

double mean_center_cost(const Dataset& data, const CostModel& model) {
  if (model.kind != CostKind::SquaredEuclidean) {
    throw std::invalid_argument("mean_center_cost: defined for the squared Euclidean cost only");
  }
  const RowVec mu = data.points().colwise().mean();
  double total = 0.0;
  for (Index i = 0; i < data.n(); ++i) total += (data.point(i) - mu).squaredNorm();
  return total;
}

}  // namespace nosub
