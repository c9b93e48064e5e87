#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nosub/core.hpp"
#include "nosub/cost.hpp"
#include "nosub/instances.hpp"
#include "nosub/online.hpp"

namespace nosub {

// ---------------------------------------------------------------------------
// Algorithms by name
// ---------------------------------------------------------------------------

/// Names one of the online algorithms plus its parameters. Known names:
/// first_point, random_index, doubling, three_phase, max_distance, fft,
/// take_all.
struct AlgorithmConfig {
  std::string name = "first_point";
  double c = 2.0;  // doubling
  Index k = 2;     // three_phase, fft
  std::optional<ThreePhaseOverride> override_fractions;
  bool take_first_point = true;  // three_phase
  OfflineConfig offline;

  /// The k the algorithm targets; baselines are computed against it.
  Index cluster_count() const;
  /// Compact label for report rows, e.g. "doubling(c=2)". Never contains
  /// commas.
  std::string label() const;

  nlohmann::json to_json() const;
  static AlgorithmConfig from_json(const nlohmann::json& j, const std::string& path);
};

std::unique_ptr<Clusterer> make_clusterer(const AlgorithmConfig& cfg, Index n,
                                          const CostModel& model, const Rng& alg_rng);

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

enum class BaselineKind { ExactOracle, OfflineBaseline };

const char* baseline_kind_name(BaselineKind kind);

struct Baseline {
  double cost = 0.0;
  BaselineKind kind = BaselineKind::ExactOracle;
};

/// Exact brute-force optimum when C(n,k) fits the budget, otherwise a
/// full-data offline clustering; the kind records which one was used.
Baseline compute_baseline(const Dataset& data, Index k, const CostModel& model,
                          std::uint64_t budget, const Rng& rng, const OfflineConfig& cfg = {});

struct TrialResult {
  Index trial_id = 0;
  std::uint64_t seed = 0;  // fingerprint of the trial's rng stream
  Index n = 0;
  Index k = 0;
  std::string algorithm;
  std::string order;  // "given" or "random"
  Index centers_taken = 0;
  double alg_cost = 0.0;
  double baseline_cost = 0.0;
  BaselineKind baseline_kind = BaselineKind::ExactOracle;
  double ratio = 0.0;
  double runtime_ms = 0.0;
};

/// Ratio as recorded in reports: 1.0 when both costs are zero, +infinity
/// when only the baseline is zero.
double cost_ratio(double alg_cost, double baseline_cost);

/// Streams the instance in `order`, evaluates the taken centers against the
/// full dataset (cost incurs only at the end), and compares with the
/// baseline. The trial rng provides sub-stream 1 to the algorithm and
/// sub-stream 2 to the baseline; `cached_baseline` skips the baseline
/// computation when the caller already has it.
TrialResult run_trial(const GeneratedInstance& instance, const StreamOrder& order,
                      const AlgorithmConfig& algorithm, const CostModel& model,
                      const Rng& trial_rng, std::uint64_t baseline_budget = kDefaultOracleBudget,
                      const std::optional<Baseline>& cached_baseline = std::nullopt);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct Aggregates {
  double mean_centers = 0.0, median_centers = 0.0, p90_centers = 0.0, p99_centers = 0.0;
  double mean_ratio = 0.0, median_ratio = 0.0, p90_ratio = 0.0, p99_ratio = 0.0;
  /// (a, fraction of trials with ratio <= a) on a fixed grid of thresholds.
  std::vector<std::pair<double, double>> success_curve;

  static Aggregates compute(const std::vector<TrialResult>& rows);
  bool operator==(const Aggregates&) const = default;
};

/// Fraction of rows with ratio <= a; monotone non-decreasing in a.
double success_rate(const std::vector<TrialResult>& rows, double a);

extern const std::vector<double> kSuccessCurveGrid;

struct ExperimentConfig {
  AlgorithmConfig algorithm;
  /// Instance source: a dataset file, or a generator name plus params
  /// (exactly one of the two).
  std::string instance_file;
  std::string generator;
  nlohmann::json generator_params = nlohmann::json::object();
  CostModel model = CostModel::squared_euclidean();
  bool random_order = true;
  Index trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t baseline_budget = kDefaultOracleBudget;
  std::string output = "report";
  int threads = 0;  // 0 = hardware concurrency

  nlohmann::json to_json() const;
  /// Throws ConfigError with the offending field path.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

/// Resolves an instance from a config (file or generator dispatch).
GeneratedInstance resolve_instance(const ExperimentConfig& config);

struct ExperimentReport {
  nlohmann::json config;
  std::vector<TrialResult> rows;
  Aggregates aggregates;
};

/// Runs config.trials independent trials. Trial t draws from the stream
/// Rng(seed, t) with sub-stream 0 for the order, 1 for the algorithm and 2
/// for trial-local baselines; the shared baseline is computed once from a
/// reserved stream. The report is identical (runtime column aside) whether
/// trials run sequentially or on the worker pool.
ExperimentReport run_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

extern const char* const kReportCsvHeader;

std::string report_csv(const std::vector<TrialResult>& rows);
void write_report_csv(const std::vector<TrialResult>& rows, const std::filesystem::path& path);
std::vector<TrialResult> read_report_csv(const std::filesystem::path& path);

nlohmann::json report_json(const ExperimentReport& report);
/// Writes `<base>.csv` and `<base>.json`.
void write_report(const ExperimentReport& report, const std::filesystem::path& base);
/// Loads both files and re-derives the aggregates from the rows; a mismatch
/// with the stored aggregates throws.
ExperimentReport load_report(const std::filesystem::path& base);

// ---------------------------------------------------------------------------
// Misc
// ---------------------------------------------------------------------------

/// Expected center count of the farthest-first online algorithm under
/// random order: k + k (H_n - H_k) by direct summation; the k = 1 variant
/// returns 1 + H_{n-1} (the max-distance rule's expectation).
double harmonic_reference(Index n, Index k);

/// Runs fn(0..count-1) on `threads` workers (0 = hardware concurrency).
/// Exceptions propagate; iteration order is unspecified.
void parallel_for(Index count, const std::function<void(Index)>& fn, int threads = 0);

}  // namespace nosub
