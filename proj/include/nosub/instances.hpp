#pragma once

#include <filesystem>
#include <string>

#include "nosub/core.hpp"

// vendored nlohmann/json single header
#include "json.hpp"

namespace nosub {

struct InstanceMetadata {
  std::string generator;
  nlohmann::json params = nlohmann::json::object();
  Index n = 0;
  Index k_hint = 0;

  nlohmann::json to_json() const;
  static InstanceMetadata from_json(const nlohmann::json& j);
};

/// A dataset plus the arrival order the construction intends (AsGiven for
/// the adversarial constructions) and generator metadata.
struct GeneratedInstance {
  Dataset dataset;
  StreamOrder intended_order;
  InstanceMetadata metadata;
};

/// Theorem-1-style worst-order dataset for k = 1, unknown n: 1-d values
/// 1, 2, 3, ... where value i appears floor((7c)^i) times, the last group
/// truncated so the total is max_n. Streamed group by group, smallest value
/// first.
GeneratedInstance gen_geometric_groups(double c, Index max_n);

/// Omega(n) worst-order dataset for k >= 2: x_1 = 0, x_2 = 1, and
/// x_{t+1} = x_t + (1 + eps) * sqrt(c * sum_{s=2..t} x_s^2) with eps = 1e-3,
/// streamed in increasing order. Throws ResourceLimitError (naming the
/// largest feasible n) if the doubles overflow before reaching n.
GeneratedInstance gen_increasing_gaps(double c, Index n);

/// True iff (x_{t*} - x_{t*-1})^2 > c * sum_{t=2..t*-1} x_t^2 for every
/// t* in {3, ..., n}. Certifies that skipping the running maximum forces an
/// approximation ratio above c.
bool validate_increasing_gaps(const GeneratedInstance& instance, double c);

/// Random-order lower-bound series for general k: strictly increasing w with
/// (w_{i+1} - w_i)^2 > c * sum_{j<=i} (w_i - w_j)^2 at every step.
GeneratedInstance gen_k_maximal_series(double c, Index k, Index n);

/// Validator for gen_k_maximal_series outputs: checks the displayed strict
/// inequality at every step.
bool validate_k_maximal_series(const GeneratedInstance& instance, double c);

/// Benign instance: k cluster centers at mutual distance >= separation (on a
/// line for dim = 1, on scaled axis vectors otherwise), per_cluster points
/// drawn uniformly from a ball of radius spread around each.
GeneratedInstance gen_separated_blobs(Index k, Index per_cluster, double separation, double spread,
                                      Index dim, Rng& rng);

/// Writes the dataset in the core text format plus a JSON metadata sidecar
/// at `<path>.meta.json`.
void write_instance(const GeneratedInstance& instance, const std::filesystem::path& path);

/// Loads a dataset file; picks up the metadata sidecar when present. The
/// intended order defaults to AsGiven.
GeneratedInstance load_instance(const std::filesystem::path& path);

}  // namespace nosub
