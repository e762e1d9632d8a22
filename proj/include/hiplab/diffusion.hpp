#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiplab/hypergraph.hpp"
#include "hiplab/rng.hpp"

namespace hiplab {

/// How activation attempts are drawn within one step.
enum class AttemptMode {
  /// One Bernoulli(p) per (activator, target, eligible shared hyperedge).
  kPerAttempt,
  /// One Bernoulli(p) per eligible inactive target per step.
  kPerTarget,
};

std::string to_string(AttemptMode mode);
AttemptMode parse_attempt_mode(const std::string& name);

/// ICRP-lambda parameters. `p` has no default on purpose: callers must choose it.
struct ICRPConfig {
  double lambda = 0.0;
  double p = 0.0;
  std::size_t runs = 1000;
  std::uint64_t master_seed = 0;
  std::optional<std::size_t> max_steps;  // unset: N
  AttemptMode attempt_mode = AttemptMode::kPerAttempt;

  /// Throws ConfigError when lambda or p leave [0,1] or runs == 0.
  void validate() const;
};

struct SimulationTrace {
  NodeId seed_node = 0;
  std::vector<std::vector<NodeId>> newly_active;  // S_0 = {seed}, then each non-empty S_t
  std::size_t final_active_count = 0;
  std::size_t steps_taken = 0;  // propagation steps executed, including the final empty one
};

struct InfluenceEstimate {
  double mean = 0.0;
  double stddev = 0.0;  // sample stddev over runs; 0 when runs == 1
};

struct InfluenceLabels {
  std::vector<double> mean;
  std::vector<double> stddev;
  ICRPConfig config;
};

/// Stream seed for run `run_index` from `seed_node` under `master_seed`.
std::uint64_t run_stream_seed(std::uint64_t master_seed, NodeId seed_node, std::size_t run_index);

/// One ICRP-lambda cascade from `seed_node`. Throws IndexError if out of range.
SimulationTrace icrp_run(const Hypergraph& h, NodeId seed_node, const ICRPConfig& cfg, Rng& rng);

/// Monte Carlo mean/stddev of the final active count over cfg.runs traces.
InfluenceEstimate estimate_influence(const Hypergraph& h, NodeId seed_node, const ICRPConfig& cfg);

/// estimate_influence for every node. Output does not depend on `workers`.
InfluenceLabels label_all(const Hypergraph& h, const ICRPConfig& cfg, std::size_t workers);
InfluenceLabels label_all(const Hypergraph& h, const ICRPConfig& cfg);

/// Exact expected influence by exhaustive enumeration of activation outcomes.
/// Throws OracleLimit when some trace would need more than `max_attempts`
/// Bernoulli attempts.
double exact_influence(const Hypergraph& h, NodeId seed_node, double lambda, double p,
                       AttemptMode mode = AttemptMode::kPerAttempt, std::size_t max_attempts = 20);

/// Same enumeration, returning P(final active count = k) for k = 0..N.
std::vector<double> exact_influence_distribution(const Hypergraph& h, NodeId seed_node, double lambda, double p,
                                                 AttemptMode mode = AttemptMode::kPerAttempt,
                                                 std::size_t max_attempts = 20);

/// CSV: node_index,mean_influence,stddev,R,lambda,p,master_seed
void write_labels_csv(std::ostream& out, const InfluenceLabels& labels);

}  // namespace hiplab
