#include "nosub/offline.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace nosub {

Matrix kmeanspp_seed(const Dataset& data, Index k, const CostModel& model, Rng& rng) {
  const Index n = data.n();
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeanspp_seed: k must be in [1, n], got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  }

  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  std::vector<bool> is_chosen(static_cast<std::size_t>(n), false);

  const auto first = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(n)));
  chosen.push_back(first);
  is_chosen[static_cast<std::size_t>(first)] = true;
  Vec mind = distances_to_point(model, data.points(), data.point(first));

  while (static_cast<Index>(chosen.size()) < k) {
    double total = 0.0;
    for (Index i = 0; i < n; ++i) total += mind[i];
    Index pick = -1;
    if (total > 0.0) {
      const double u = rng.uniform01() * total;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += mind[i];
        if (u < acc) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {  // u landed on the rounding tail; take the last weighted index
        for (Index i = n - 1; i >= 0; --i) {
          if (mind[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // All remaining points coincide with chosen centers; pick uniformly
      // among unchosen indices to keep the k distinct-index contract.
      const Index unchosen = n - static_cast<Index>(chosen.size());
      auto target = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(unchosen)));
      for (Index i = 0; i < n; ++i) {
        if (!is_chosen[static_cast<std::size_t>(i)] && target-- == 0) {
          pick = i;
          break;
        }
      }
    }
    chosen.push_back(pick);
    is_chosen[static_cast<std::size_t>(pick)] = true;
    mind = mind.cwiseMin(distances_to_point(model, data.points(), data.point(pick)));
  }

  Matrix centers(k, data.dim());
  for (Index j = 0; j < k; ++j) centers.row(j) = data.point(chosen[static_cast<std::size_t>(j)]);
  return centers;
}

Matrix lloyd_refine(const Dataset& data, Matrix centers, const OfflineConfig& cfg,
                    const CostModel& model) {
  if (model.kind != CostKind::SquaredEuclidean) {
    throw std::invalid_argument("lloyd_refine: centroid updates require the squared Euclidean cost");
  }
  if (centers.rows() < 1 || centers.cols() != data.dim()) {
    throw std::invalid_argument("lloyd_refine: bad centers shape");
  }

  double cost = clustering_cost(data, centers, model);
  for (int iter = 0; iter < cfg.lloyd_max_iters; ++iter) {
    const Assignment assignment = assign_points(data, centers, model);

    Matrix sums = Matrix::Zero(centers.rows(), centers.cols());
    std::vector<Index> counts(static_cast<std::size_t>(centers.rows()), 0);
    for (Index i = 0; i < data.n(); ++i) {
      const Index j = assignment.owner[static_cast<std::size_t>(i)];
      sums.row(j) += data.point(i);
      ++counts[static_cast<std::size_t>(j)];
    }
    Matrix updated = centers;  // empty clusters keep their previous center
    for (Index j = 0; j < centers.rows(); ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) {
        updated.row(j) = sums.row(j) / static_cast<double>(counts[static_cast<std::size_t>(j)]);
      }
    }

    const double updated_cost = clustering_cost(data, updated, model);
    if (updated_cost > cost) break;  // numerical fixed point; keep the monotone invariant
    const double improvement = (cost - updated_cost) / std::max(cost, 1e-300);
    centers = std::move(updated);
    cost = updated_cost;
    if (improvement < cfg.lloyd_rel_tol) break;
  }
  return centers;
}

Matrix offline_cluster(const Dataset& data, Index k, const OfflineConfig& cfg,
                       const CostModel& model, const Rng& rng) {
  const Index n = data.n();
  if (k < 1 || k > n) {
    throw std::invalid_argument("offline_cluster: k must be in [1, n], got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  }

  if (binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                      cfg.exact_threshold) <= cfg.exact_threshold) {
    const OptResult opt = brute_force_opt(data, k, model, cfg.exact_threshold);
    Matrix centers(k, data.dim());
    for (Index j = 0; j < k; ++j) centers.row(j) = data.point(opt.centers[static_cast<std::size_t>(j)]);
    return centers;
  }

  Matrix best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng restart_rng = rng.split(static_cast<std::uint64_t>(r));
    Matrix candidate = kmeanspp_seed(data, k, model, restart_rng);
    if (model.kind == CostKind::SquaredEuclidean) {
      candidate = lloyd_refine(data, std::move(candidate), cfg, model);
    }
    const double cost = clustering_cost(data, candidate, model);
    if (cost < best_cost) {  // strict: ties keep the lowest restart index
      best_cost = cost;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace nosub
