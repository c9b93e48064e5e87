#pragma once

#include <cstdint>

#include "nosub/core.hpp"
#include "nosub/cost.hpp"

namespace nosub {

/// Knobs for the offline constant-approximation subroutine.
struct OfflineConfig {
  int restarts = 8;
  int lloyd_max_iters = 50;
  double lloyd_rel_tol = 1e-9;
  /// Use brute_force_opt instead of k-means++ when C(n, k) is at most this.
  std::uint64_t exact_threshold = 100'000;
};

/// k-means++ seeding: first center uniform, each subsequent center sampled
/// with probability proportional to the model distance to the nearest chosen
/// center. Returns k distinct-index points as rows.
Matrix kmeanspp_seed(const Dataset& data, Index k, const CostModel& model, Rng& rng);

/// Lloyd refinement (squared Euclidean only): alternates nearest-center
/// assignment and centroid updates until the relative cost improvement drops
/// below lloyd_rel_tol or lloyd_max_iters is reached. Cost is non-increasing
/// across iterations; empty clusters keep their previous center.
Matrix lloyd_refine(const Dataset& data, Matrix centers, const OfflineConfig& cfg,
                    const CostModel& model);

/// Offline clustering used by the three-phase algorithm's first phase and as
/// the full-data baseline: exact enumeration when C(n,k) fits
/// cfg.exact_threshold, otherwise best-of-restarts k-means++ (plus Lloyd for
/// squared Euclidean). Deterministic given the rng identity; restart r draws
/// from rng.split(r) and cost ties keep the lowest restart index.
Matrix offline_cluster(const Dataset& data, Index k, const OfflineConfig& cfg,
                       const CostModel& model, const Rng& rng);

}  // namespace nosub
