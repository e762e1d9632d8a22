#include "hiplab/hypercl.hpp"

#include <algorithm>
#include <cmath>
#include "json.hpp"

#include "hiplab/errors.hpp"
#include "hiplab/rng.hpp"

namespace hiplab {

void HyperCLConfig::validate() const {
  if (!(gamma > 1.0)) throw ConfigError("gamma must be > 1");
  if (min_edge_size < 1 || min_edge_size > max_edge_size) throw ConfigError("invalid hyperedge size range");
  if (num_nodes < max_edge_size) throw ConfigError("N must be at least the maximum hyperedge size");
  if (kmin < 1 || kmin > num_nodes) throw ConfigError("kmin must lie in [1, N]");
}

namespace {

// Index of the first cumulative weight strictly above u * total.
std::size_t sample_cumulative(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

HyperCLResult hypercl(const HyperCLConfig& cfg) {
  cfg.validate();
  Rng rng(derive_seed({cfg.seed, 0x4879706572434cULL}));
  const std::size_t n = cfg.num_nodes;

  // Inverse-CDF sampling of p(k) ~ k^-gamma on [kmin, N].
  std::vector<double> degree_cdf;
  degree_cdf.reserve(n - cfg.kmin + 1);
  double acc = 0.0;
  for (std::size_t k = cfg.kmin; k <= n; ++k) {
    acc += std::pow(static_cast<double>(k), -cfg.gamma);
    degree_cdf.push_back(acc);
  }
  std::vector<std::size_t> targets(n);
  for (auto& t : targets) t = cfg.kmin + sample_cumulative(degree_cdf, rng);

  std::vector<double> member_cdf(n);
  acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(targets[i]);
    member_cdf[i] = acc;
  }

  const std::size_t span = cfg.max_edge_size - cfg.min_edge_size + 1;
  std::vector<std::size_t> sizes(cfg.num_edges);
  std::vector<std::vector<NodeId>> edges(cfg.num_edges);
  for (std::size_t e = 0; e < cfg.num_edges; ++e) {
    const std::size_t size = cfg.min_edge_size + rng.below(span);
    sizes[e] = size;
    auto& members = edges[e];
    members.reserve(size);
    // Rejection against already-chosen members; after a long run of rejections
    // (weight concentrated on chosen nodes) fall back to an explicit draw over
    // the remaining nodes, which has the same conditional distribution.
    std::size_t rejections = 0;
    while (members.size() < size) {
      if (rejections < 64 * size) {
        const auto v = static_cast<NodeId>(sample_cumulative(member_cdf, rng));
        if (std::find(members.begin(), members.end(), v) != members.end()) {
          ++rejections;
          continue;
        }
        members.push_back(v);
        continue;
      }
      std::vector<double> rest(n);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(members.begin(), members.end(), static_cast<NodeId>(i)) == members.end())
          total += static_cast<double>(targets[i]);
        rest[i] = total;
      }
      members.push_back(static_cast<NodeId>(sample_cumulative(rest, rng)));
    }
  }

  return HyperCLResult{Hypergraph(n, std::move(edges)), std::move(targets), std::move(sizes)};
}

namespace {

nlohmann::json summarize(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double sd = values.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(values.size()));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {{"min", values.empty() ? 0.0 : *lo},
          {"max", values.empty() ? 0.0 : *hi},
          {"mean", mean},
          {"sum", sum},
          {"cv", mean > 0.0 ? sd / mean : 0.0}};
}

}  // namespace

std::string hypercl_sidecar_json(const HyperCLConfig& cfg, const HyperCLResult& result) {
  std::vector<double> target(result.target_hyperdegree.begin(), result.target_hyperdegree.end());
  std::vector<double> realized;
  for (NodeId v = 0; v < result.hypergraph.num_nodes(); ++v)
    realized.push_back(static_cast<double>(result.hypergraph.hyperdegree(v)));
  nlohmann::json doc = {
      {"generator", "hypercl"},
      {"config",
       {{"n", cfg.num_nodes},
        {"m", cfg.num_edges},
        {"gamma", cfg.gamma},
        {"size_range", {cfg.min_edge_size, cfg.max_edge_size}},
        {"kmin", cfg.kmin},
        {"seed", cfg.seed}}},
      {"target_hyperdegree", summarize(target)},
      {"realized_hyperdegree", summarize(realized)},
  };
  return doc.dump(2) + "\n";
}

}  // namespace hiplab
