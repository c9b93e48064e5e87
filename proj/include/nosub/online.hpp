#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nosub/core.hpp"
#include "nosub/offline.hpp"

namespace nosub {

// ---------------------------------------------------------------------------
// Streaming contract
// ---------------------------------------------------------------------------

enum class Reason {
  FirstPoint,
  RandomIndex,
  DoublingPick,
  ClosePoint,
  FarPoint,
  MaxDistance,
  FftSelected,
  InitialK,
  Skip,
};

const char* reason_name(Reason reason);

/// One irrevocable take/skip decision. reason == Skip iff take == false.
struct Decision {
  bool take = false;
  Reason reason = Reason::Skip;
};

/// The per-arrival decisions of one stream plus the resulting center set.
/// Decisions are append-only: once emitted they are never revised.
struct OnlineTrace {
  std::vector<Decision> decisions;
  std::vector<Index> center_indices;  // arrival positions, strictly increasing
  Matrix centers;                     // the corresponding points, as rows
};

/// A no-substitution clusterer. The driver feeds arrivals one at a time;
/// observe() must emit the decision for x_t before x_{t+1} becomes visible,
/// which the call shape enforces. Instances are single-stream: construct a
/// fresh one per trial.
class Clusterer {
 public:
  virtual ~Clusterer() = default;
  virtual Decision observe(RowRef x) = 0;
  virtual std::string name() const = 0;
  /// Streams whose length is fixed at construction (known n) report it here.
  virtual std::optional<Index> expected_stream_length() const { return std::nullopt; }
};

/// Streams the dataset in the given order and records the trace. Throws
/// ProtocolError if the clusterer emits an inconsistent decision or the
/// order length does not match the dataset.
OnlineTrace run_stream(Clusterer& clusterer, const Dataset& data, const StreamOrder& order);

// ---------------------------------------------------------------------------
// k = 1
// ---------------------------------------------------------------------------

/// Random order: the first arrival is the only center.
class FirstPointClusterer final : public Clusterer {
 public:
  Decision observe(RowRef x) override;
  std::string name() const override { return "first_point"; }

 private:
  Index t_ = 0;
};

/// Known n, any order: one uniformly random arrival index is the only
/// center, drawn before the stream starts.
class RandomIndexClusterer final : public Clusterer {
 public:
  RandomIndexClusterer(Index n, Rng rng);
  Decision observe(RowRef x) override;
  std::string name() const override { return "random_index"; }
  std::optional<Index> expected_stream_length() const override { return n_; }
  Index chosen_index() const { return chosen_; }

 private:
  Index n_;
  Index chosen_;
  Index t_ = 0;
};

/// Unknown n, any order: doubling epochs. Within each epoch of length
/// ceil(n') exactly one uniformly chosen arrival is taken; at the epoch end
/// n' grows by the factor c and a fresh pick is drawn. c below 2 is raised
/// to 2.
class DoublingClusterer final : public Clusterer {
 public:
  DoublingClusterer(double c, Rng rng);
  Decision observe(RowRef x) override;
  std::string name() const override { return "doubling"; }
  double effective_c() const { return c_; }

 private:
  double c_;
  Rng rng_;
  Index epoch_start_ = 0;   // arrivals before the current epoch
  double epoch_target_ = 1.0;  // n', tracked as a real
  Index epoch_length_ = 1;  // ceil(n')
  Index pick_ = 0;          // offset in [0, epoch_length) taken as center
  Index t_ = 0;
};

// ---------------------------------------------------------------------------
// k >= 2, known n, random order (three-phase)
// ---------------------------------------------------------------------------

/// Replaces the default phase sizes m1 = floor(n/(100 k)) and
/// m2 = floor(n/(1e5 k^3)) with floor(alpha n) and floor(alpha2 n).
struct ThreePhaseOverride {
  double alpha = 0.0;
  double alpha2 = 0.0;
};

class ThreePhaseClusterer final : public Clusterer {
 public:
  /// Requires n >= 1 and k >= 2. Throws ConfigError when the phase sizes
  /// degenerate (m1 < k or m1 + m2 > n); small n needs an override.
  ThreePhaseClusterer(Index n, Index k, OfflineConfig offline_cfg, CostModel model, Rng rng,
                      std::optional<ThreePhaseOverride> override_fractions = std::nullopt,
                      bool take_first_point = true);

  Decision observe(RowRef x) override;
  std::string name() const override { return "three_phase"; }
  std::optional<Index> expected_stream_length() const override { return n_; }

  Index m1() const { return m1_; }
  Index m2() const { return m2_; }
  Index close_threshold() const { return close_threshold_; }
  /// Defined once phase 1 ends; the k reference points as rows.
  const Matrix& reference_centers() const { return reference_centers_; }

 private:
  void fit_reference_centers();
  Index nearest_reference(RowRef x, double* dist_out) const;

  Index n_;
  Index k_;
  OfflineConfig offline_cfg_;
  CostModel model_;
  Rng rng_;
  bool take_first_point_;
  Index m1_;
  Index m2_;
  Index close_threshold_;
  Matrix buffer_;  // phase-1 points
  Matrix reference_centers_;
  Vec r_max_;
  std::vector<Index> centers_counter_;
  Index t_ = 0;
};

/// ceil(3 k ln(40 k)): the per-center cap on close points taken in phase 3.
Index three_phase_close_threshold(Index k);

// ---------------------------------------------------------------------------
// k = 2, unknown n, random order (max-distance rule)
// ---------------------------------------------------------------------------

class MaxDistanceClusterer final : public Clusterer {
 public:
  explicit MaxDistanceClusterer(CostModel model = CostModel::squared_euclidean());
  Decision observe(RowRef x) override;
  std::string name() const override { return "max_distance"; }
  double max_distance() const { return max_distance_; }

 private:
  CostModel model_;
  RowVec anchor_;
  double max_distance_ = 0.0;
  Index t_ = 0;
};

// ---------------------------------------------------------------------------
// k >= 2, unknown n, random order (farthest-first traversal)
// ---------------------------------------------------------------------------

/// Greedy k-subset of rows of M: starts from s_index, then repeatedly adds
/// the row maximizing the minimum distance to the selected set (ties go to
/// the lowest index). Returns indices in insertion order.
std::vector<Index> farthest_first_traversal(MatrixRef points, Index s_index, Index k,
                                            const CostModel& model);

class FftOnlineClusterer final : public Clusterer {
 public:
  /// Requires k >= 2.
  FftOnlineClusterer(Index k, CostModel model = CostModel::squared_euclidean());
  Decision observe(RowRef x) override;
  std::string name() const override { return "fft"; }

 private:
  Index k_;
  CostModel model_;
  Matrix memory_;  // all arrivals so far; row t is arrival t
  Index count_ = 0;
};

// ---------------------------------------------------------------------------
// Reference plumbing
// ---------------------------------------------------------------------------

/// Takes every arrival; the zero-cost reference used by the harness.
class TakeAllClusterer final : public Clusterer {
 public:
  Decision observe(RowRef) override { return {true, Reason::InitialK}; }
  std::string name() const override { return "take_all"; }
};

}  // namespace nosub
