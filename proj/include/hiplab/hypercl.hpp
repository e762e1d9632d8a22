#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hiplab/hypergraph.hpp"

namespace hiplab {

struct HyperCLConfig {
  std::size_t num_nodes = 1000;
  std::size_t num_edges = 2000;
  double gamma = 2.5;
  std::size_t min_edge_size = 2;
  std::size_t max_edge_size = 5;
  std::size_t kmin = 1;  // support of target hyperdegrees is [kmin, N]
  std::uint64_t seed = 0;

  /// Throws ConfigError on gamma <= 1, an empty size range, N < max size, or kmin outside [1, N].
  void validate() const;
};

struct HyperCLResult {
  Hypergraph hypergraph;
  std::vector<std::size_t> target_hyperdegree;  // sampled power-law targets, one per node
  std::vector<std::size_t> edge_sizes;
};

/// Chung-Lu style generator: power-law target hyperdegrees, uniform edge
/// sizes, members drawn without duplication with probability proportional to
/// their target. Node i is named by the token "i"; isolated nodes are kept.
HyperCLResult hypercl(const HyperCLConfig& cfg);

/// JSON sidecar: config echo plus target/realized hyperdegree summaries.
std::string hypercl_sidecar_json(const HyperCLConfig& cfg, const HyperCLResult& result);

}  // namespace hiplab
