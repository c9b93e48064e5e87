#include "nosub/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nosub {

const char* reason_name(Reason reason) {
  switch (reason) {
    case Reason::FirstPoint:
      return "first_point";
    case Reason::RandomIndex:
      return "random_index";
    case Reason::DoublingPick:
      return "doubling_pick";
    case Reason::ClosePoint:
      return "close_point";
    case Reason::FarPoint:
      return "far_point";
    case Reason::MaxDistance:
      return "max_distance";
    case Reason::FftSelected:
      return "fft_selected";
    case Reason::InitialK:
      return "initial_k";
    case Reason::Skip:
      return "skip";
  }
  return "unknown";
}

OnlineTrace run_stream(Clusterer& clusterer, const Dataset& data, const StreamOrder& order) {
  if (order.size() != data.n()) {
    throw ProtocolError("run_stream: order length " + std::to_string(order.size()) +
                        " does not match dataset size " + std::to_string(data.n()));
  }
  if (const auto expected = clusterer.expected_stream_length();
      expected && *expected != data.n()) {
    throw ProtocolError("run_stream: clusterer expects a stream of length " +
                        std::to_string(*expected) + ", dataset has " + std::to_string(data.n()));
  }

  OnlineTrace trace;
  trace.decisions.reserve(order.perm.size());
  std::vector<Index> taken_rows;
  for (Index t = 0; t < order.size(); ++t) {
    const Index row = order.perm[static_cast<std::size_t>(t)];
    const Decision decision = clusterer.observe(data.point(row));
    if (decision.take == (decision.reason == Reason::Skip)) {
      throw ProtocolError("run_stream: inconsistent decision from " + clusterer.name());
    }
    trace.decisions.push_back(decision);
    if (decision.take) {
      trace.center_indices.push_back(t);
      taken_rows.push_back(row);
    }
  }
  trace.centers.resize(static_cast<Index>(taken_rows.size()), data.dim());
  for (Index i = 0; i < trace.centers.rows(); ++i) {
    trace.centers.row(i) = data.point(taken_rows[static_cast<std::size_t>(i)]);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// k = 1
// ---------------------------------------------------------------------------

Decision FirstPointClusterer::observe(RowRef) {
  return (t_++ == 0) ? Decision{true, Reason::FirstPoint} : Decision{};
}

RandomIndexClusterer::RandomIndexClusterer(Index n, Rng rng) : n_(n) {
  if (n < 1) throw std::invalid_argument("random_index_clusterer: n must be >= 1");
  chosen_ = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(n)));
}

Decision RandomIndexClusterer::observe(RowRef) {
  if (t_ >= n_) {
    throw ProtocolError("random_index_clusterer: stream longer than the declared n = " +
                        std::to_string(n_));
  }
  return (t_++ == chosen_) ? Decision{true, Reason::RandomIndex} : Decision{};
}

DoublingClusterer::DoublingClusterer(double c, Rng rng) : rng_(std::move(rng)) {
  if (!(c > 1.0)) throw std::invalid_argument("doubling_clusterer: c must be > 1");
  c_ = std::max(c, 2.0);
}

Decision DoublingClusterer::observe(RowRef) {
  const Index offset = t_ - epoch_start_;
  const bool take = offset == pick_;
  ++t_;
  if (offset + 1 == epoch_length_) {
    // Epoch over: grow the guess, then draw the pick for the new epoch.
    epoch_start_ += epoch_length_;
    epoch_target_ *= c_;
    epoch_length_ = static_cast<Index>(std::ceil(epoch_target_));
    pick_ = static_cast<Index>(rng_.uniform_below(static_cast<std::uint64_t>(epoch_length_)));
  }
  return take ? Decision{true, Reason::DoublingPick} : Decision{};
}

// ---------------------------------------------------------------------------
// Three-phase (known n)
// ---------------------------------------------------------------------------

Index three_phase_close_threshold(Index k) {
  return static_cast<Index>(std::ceil(3.0 * static_cast<double>(k) *
                                      std::log(40.0 * static_cast<double>(k))));
}

ThreePhaseClusterer::ThreePhaseClusterer(Index n, Index k, OfflineConfig offline_cfg,
                                         CostModel model, Rng rng,
                                         std::optional<ThreePhaseOverride> override_fractions,
                                         bool take_first_point)
    : n_(n),
      k_(k),
      offline_cfg_(offline_cfg),
      model_(std::move(model)),
      rng_(std::move(rng)),
      take_first_point_(take_first_point) {
  if (n < 1) throw std::invalid_argument("three_phase_clusterer: n must be >= 1");
  if (k < 2) throw std::invalid_argument("three_phase_clusterer: k must be >= 2");
  if (override_fractions) {
    const auto& ov = *override_fractions;
    if (!(ov.alpha > 0.0 && ov.alpha < 1.0) || !(ov.alpha2 >= 0.0 && ov.alpha2 < 1.0)) {
      throw ConfigError("three_phase_clusterer: override fractions must lie in (0,1)");
    }
    m1_ = static_cast<Index>(std::floor(ov.alpha * static_cast<double>(n)));
    m2_ = static_cast<Index>(std::floor(ov.alpha2 * static_cast<double>(n)));
  } else {
    m1_ = n / (100 * k);
    m2_ = n / (100000 * k * k * k);
  }
  if (m1_ < k_) {
    throw ConfigError("three_phase_clusterer: phase 1 holds m1 = " + std::to_string(m1_) +
                      " < k = " + std::to_string(k_) +
                      " points; n is too small for the default constants, supply an override");
  }
  if (m1_ + m2_ > n_) {
    throw ConfigError("three_phase_clusterer: m1 + m2 = " + std::to_string(m1_ + m2_) +
                      " exceeds n = " + std::to_string(n_));
  }
  close_threshold_ = three_phase_close_threshold(k_);
  r_max_ = Vec::Zero(k_);
  centers_counter_.assign(static_cast<std::size_t>(k_), 0);
}

void ThreePhaseClusterer::fit_reference_centers() {
  const Dataset sample(buffer_);
  reference_centers_ = offline_cluster(sample, k_, offline_cfg_, model_, rng_.split(0));
}

Index ThreePhaseClusterer::nearest_reference(RowRef x, double* dist_out) const {
  Index best = 0;
  double best_dist = distance(model_, x, reference_centers_.row(0));
  for (Index j = 1; j < k_; ++j) {
    const double d = distance(model_, x, reference_centers_.row(j));
    if (d < best_dist) {  // strict: ties keep the lowest center
      best_dist = d;
      best = j;
    }
  }
  if (dist_out) *dist_out = best_dist;
  return best;
}

Decision ThreePhaseClusterer::observe(RowRef x) {
  if (t_ >= n_) {
    throw ProtocolError("three_phase_clusterer: stream longer than the declared n = " +
                        std::to_string(n_));
  }
  const Index t = t_++;

  if (t < m1_) {
    if (buffer_.rows() == 0) buffer_.resize(m1_, x.size());
    buffer_.row(t) = x;
    if (t == m1_ - 1) fit_reference_centers();
    if (t == 0 && take_first_point_) return {true, Reason::FirstPoint};
    return {};
  }

  double d = 0.0;
  const Index nearest = nearest_reference(x, &d);

  if (t < m1_ + m2_) {
    r_max_[nearest] = std::max(r_max_[nearest], d);
    return {};
  }

  const bool far = d > r_max_[nearest];
  const bool close = centers_counter_[static_cast<std::size_t>(nearest)] <= close_threshold_;
  if (close) ++centers_counter_[static_cast<std::size_t>(nearest)];
  if (far) return {true, Reason::FarPoint};  // a point meeting both rules is taken once
  if (close) return {true, Reason::ClosePoint};
  return {};
}

// ---------------------------------------------------------------------------
// Max-distance (k = 2)
// ---------------------------------------------------------------------------

MaxDistanceClusterer::MaxDistanceClusterer(CostModel model) : model_(std::move(model)) {}

Decision MaxDistanceClusterer::observe(RowRef x) {
  if (t_++ == 0) {
    anchor_ = x;
    return {true, Reason::FirstPoint};
  }
  const double d = distance(model_, x, anchor_);
  if (d > max_distance_) {
    max_distance_ = d;
    return {true, Reason::MaxDistance};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Farthest-first traversal
// ---------------------------------------------------------------------------

std::vector<Index> farthest_first_traversal(MatrixRef points, Index s_index, Index k,
                                            const CostModel& model) {
  const Index n = points.rows();
  if (k < 1 || k > n) {
    throw std::invalid_argument("farthest_first_traversal: k must be in [1, |M|], got k=" +
                                std::to_string(k) + ", |M|=" + std::to_string(n));
  }
  if (s_index < 0 || s_index >= n) {
    throw std::invalid_argument("farthest_first_traversal: start index out of range");
  }

  std::vector<Index> selected;
  selected.reserve(static_cast<std::size_t>(k));
  selected.push_back(s_index);
  std::vector<bool> in_set(static_cast<std::size_t>(n), false);
  in_set[static_cast<std::size_t>(s_index)] = true;

  Vec min_dist = distances_to_point(model, points, points.row(s_index));
  while (static_cast<Index>(selected.size()) < k) {
    Index best = -1;
    double best_dist = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (in_set[static_cast<std::size_t>(i)]) continue;
      if (min_dist[i] > best_dist) {  // strict: ties keep the lowest index
        best_dist = min_dist[i];
        best = i;
      }
    }
    selected.push_back(best);
    in_set[static_cast<std::size_t>(best)] = true;
    min_dist = min_dist.cwiseMin(distances_to_point(model, points, points.row(best)));
  }
  return selected;
}

// ---------------------------------------------------------------------------
// FFT online (k >= 2)
// ---------------------------------------------------------------------------

FftOnlineClusterer::FftOnlineClusterer(Index k, CostModel model) : k_(k), model_(std::move(model)) {
  if (k < 2) throw std::invalid_argument("fft_online_clusterer: k must be >= 2");
}

Decision FftOnlineClusterer::observe(RowRef x) {
  if (memory_.rows() == count_) {
    Matrix grown(std::max<Index>(16, memory_.rows() * 2), x.size());
    grown.topRows(count_) = memory_.topRows(count_);
    memory_ = std::move(grown);
  }
  memory_.row(count_) = x;
  const Index t = count_++;

  if (t < k_) return {true, Reason::InitialK};

  // Membership is by arrival index, not by value.
  const std::vector<Index> selected =
      farthest_first_traversal(memory_.topRows(count_), 0, k_, model_);
  const bool take = std::find(selected.begin(), selected.end(), t) != selected.end();
  return take ? Decision{true, Reason::FftSelected} : Decision{};
}

}  // namespace nosub
