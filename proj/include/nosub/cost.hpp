#pragma once

#include <cstdint>
#include <vector>

#include "nosub/core.hpp"

namespace nosub {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Nearest-center assignment. owner[i] minimizes d(x_i, c_j) over centers j;
/// exact ties go to the smallest j.
struct Assignment {
  std::vector<Index> owner;
  Vec per_point_cost;

  double total_cost() const;
};

Assignment assign_points(const Dataset& data, MatrixRef centers, const CostModel& model);

/// Sum over all points of the distance to the nearest center (Eq. 1
/// semantics under the model's distance). Centers may lie off-dataset.
double clustering_cost(const Dataset& data, MatrixRef centers, const CostModel& model);

/// Exact optimum over k-subsets of *dataset* points used as centers.
struct OptResult {
  std::vector<Index> centers;  // distinct dataset indices, ascending
  double cost = 0.0;
};

/// C(n, k) capped at `cap` (saturating, no overflow).
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

/// Enumerates all k-subsets of dataset indices in lexicographic order and
/// returns the minimizer; ties resolve to the lexicographically smallest
/// index set. Throws ResourceLimitError naming C(n,k) when the subset count
/// exceeds `max_subsets`.
OptResult brute_force_opt(const Dataset& data, Index k, const CostModel& model,
                          std::uint64_t max_subsets = kDefaultOracleBudget);

/// (1/n) * sum_j sum_i d(x_i, x_j): the exact expected cost of a center
/// chosen uniformly from the dataset.
double expected_random_center_cost(const Dataset& data, const CostModel& model);

/// sum_i ||x_i - mu||^2 with mu the coordinate-wise mean. Only defined for
/// the squared Euclidean cost; other models raise invalid_argument.
double mean_center_cost(const Dataset& data,
                        const CostModel& model = CostModel::squared_euclidean());

}  // namespace nosub
