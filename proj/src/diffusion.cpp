#include "hiplab/diffusion.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "hiplab/errors.hpp"
#include "hiplab/io.hpp"
#include "hiplab/parallel.hpp"

namespace hiplab {

std::string to_string(AttemptMode mode) {
  return mode == AttemptMode::kPerAttempt ? "per-attempt" : "per-target";
}

AttemptMode parse_attempt_mode(const std::string& name) {
  if (name == "per-attempt") return AttemptMode::kPerAttempt;
  if (name == "per-target") return AttemptMode::kPerTarget;
  throw ConfigError("unknown attempt mode '" + name + "' (expected per-attempt or per-target)");
}

void ICRPConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0,1]");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1]");
  if (runs == 0) throw ConfigError("runs must be >= 1");
}

std::uint64_t run_stream_seed(std::uint64_t master_seed, NodeId seed_node, std::size_t run_index) {
  return derive_seed({master_seed, seed_node, run_index});
}

namespace {

bool eligible(std::size_t active_members, std::size_t edge_size, double lambda) {
  return static_cast<double>(active_members) / static_cast<double>(edge_size) >= lambda;
}

// Reusable scratch state for repeated cascades on one hypergraph.
class Cascade {
 public:
  Cascade(const Hypergraph& h, const ICRPConfig& cfg)
      : h_(h), cfg_(cfg), state_(h.num_nodes(), kInactive), active_in_edge_(h.num_edges(), 0) {}

  // Runs one cascade; if `trace` is non-null, newly-active sets are recorded.
  std::size_t run(NodeId seed, Rng& rng, SimulationTrace* trace) {
    const std::size_t max_steps = cfg_.max_steps.value_or(h_.num_nodes());
    frontier_.assign(1, seed);
    activate(seed);
    std::size_t active_count = 1;
    std::size_t steps = 0;
    if (trace != nullptr) trace->newly_active.push_back(frontier_);

    while (!frontier_.empty() && steps < max_steps) {
      ++steps;
      next_.clear();
      candidates_.clear();
      for (NodeId v : frontier_) {
        for (EdgeId e : h_.memberships(v)) {
          if (!eligible(active_in_edge_[e], h_.edge_size(e), cfg_.lambda)) continue;
          for (NodeId u : h_.edge(e)) {
            if (state_[u] != kInactive) continue;
            if (cfg_.attempt_mode == AttemptMode::kPerAttempt) {
              if (rng.bernoulli(cfg_.p)) {
                state_[u] = kPending;
                next_.push_back(u);
              }
            } else {
              state_[u] = kCandidate;
              candidates_.push_back(u);
            }
          }
        }
      }
      for (NodeId u : candidates_) {
        if (rng.bernoulli(cfg_.p)) {
          state_[u] = kPending;
          next_.push_back(u);
        } else {
          state_[u] = kInactive;
        }
      }
      for (NodeId u : next_) activate(u);
      active_count += next_.size();
      if (trace != nullptr && !next_.empty()) trace->newly_active.push_back(next_);
      frontier_.swap(next_);
    }

    if (trace != nullptr) {
      trace->seed_node = seed;
      trace->final_active_count = active_count;
      trace->steps_taken = steps;
    }
    reset();
    return active_count;
  }

 private:
  static constexpr std::uint8_t kInactive = 0;
  static constexpr std::uint8_t kActive = 1;
  static constexpr std::uint8_t kPending = 2;
  static constexpr std::uint8_t kCandidate = 3;

  void activate(NodeId v) {
    state_[v] = kActive;
    touched_.push_back(v);
    for (EdgeId e : h_.memberships(v)) ++active_in_edge_[e];
  }

  void reset() {
    for (NodeId v : touched_) {
      state_[v] = kInactive;
      for (EdgeId e : h_.memberships(v)) active_in_edge_[e] = 0;
    }
    touched_.clear();
  }

  const Hypergraph& h_;
  const ICRPConfig& cfg_;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint32_t> active_in_edge_;
  std::vector<NodeId> frontier_, next_, candidates_, touched_;
};

void check_seed(const Hypergraph& h, NodeId seed) {
  if (seed >= h.num_nodes())
    throw IndexError("seed node " + std::to_string(seed) + " out of range (N=" +
                     std::to_string(h.num_nodes()) + ")");
}

InfluenceEstimate estimate_with(Cascade& cascade, NodeId seed, const ICRPConfig& cfg) {
  // Integer accumulation keeps the reduction exact and order-independent.
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    Rng rng(run_stream_seed(cfg.master_seed, seed, r));
    const std::uint64_t count = cascade.run(seed, rng, nullptr);
    sum += count;
    sum_sq += static_cast<unsigned __int128>(count) * count;
  }
  const auto runs = static_cast<unsigned __int128>(cfg.runs);
  InfluenceEstimate est;
  est.mean = static_cast<double>(sum) / static_cast<double>(cfg.runs);
  if (cfg.runs > 1) {
    // R * sum_sq >= sum^2 by Cauchy-Schwarz.
    const unsigned __int128 numer = runs * sum_sq - sum * sum;
    const long double var = static_cast<long double>(numer) /
                            (static_cast<long double>(cfg.runs) * static_cast<long double>(cfg.runs - 1));
    est.stddev = static_cast<double>(std::sqrt(var));
  }
  return est;
}

}  // namespace

SimulationTrace icrp_run(const Hypergraph& h, NodeId seed_node, const ICRPConfig& cfg, Rng& rng) {
  cfg.validate();
  check_seed(h, seed_node);
  Cascade cascade(h, cfg);
  SimulationTrace trace;
  cascade.run(seed_node, rng, &trace);
  return trace;
}

InfluenceEstimate estimate_influence(const Hypergraph& h, NodeId seed_node, const ICRPConfig& cfg) {
  cfg.validate();
  check_seed(h, seed_node);
  Cascade cascade(h, cfg);
  return estimate_with(cascade, seed_node, cfg);
}

InfluenceLabels label_all(const Hypergraph& h, const ICRPConfig& cfg, std::size_t workers) {
  cfg.validate();
  InfluenceLabels labels;
  labels.config = cfg;
  labels.mean.assign(h.num_nodes(), 0.0);
  labels.stddev.assign(h.num_nodes(), 0.0);

  const std::size_t n = h.num_nodes();
  const std::size_t chunks = std::min<std::size_t>(n, std::max<std::size_t>(1, workers) * 8);
  parallel_for(chunks, workers, [&](std::size_t chunk) {
    Cascade cascade(h, cfg);
    for (std::size_t v = chunk; v < n; v += chunks) {
      const auto est = estimate_with(cascade, static_cast<NodeId>(v), cfg);
      labels.mean[v] = est.mean;
      labels.stddev[v] = est.stddev;
    }
  });
  return labels;
}

InfluenceLabels label_all(const Hypergraph& h, const ICRPConfig& cfg) {
  return label_all(h, cfg, default_workers());
}

namespace {

// Written independently of Cascade: expands the distribution over whole steps,
// with per-target success probability derived from the attempt multiplicity.
class ExactEnumerator {
 public:
  ExactEnumerator(const Hypergraph& h, double lambda, double p, AttemptMode mode, std::size_t max_attempts)
      : h_(h), lambda_(lambda), p_(p), mode_(mode), max_attempts_(max_attempts) {
    for (const auto& members : h.edges()) {
      std::uint64_t mask = 0;
      for (NodeId v : members) mask |= std::uint64_t{1} << v;
      edge_masks_.push_back(mask);
    }
  }

  // Adds weight * P(final set | active, frontier) into pmf[final size].
  void expand(std::uint64_t active, std::uint64_t frontier, std::size_t attempts_so_far, double weight,
              std::vector<double>& pmf) const {
    if (frontier == 0) {
      pmf[static_cast<std::size_t>(std::popcount(active))] += weight;
      return;
    }

    std::vector<std::size_t> attempts_on(h_.num_nodes(), 0);
    for (NodeId v = 0; v < h_.num_nodes(); ++v) {
      if ((frontier >> v & 1U) == 0) continue;
      for (EdgeId e : h_.memberships(v)) {
        const auto members = edge_masks_[e];
        const auto in_edge = static_cast<std::size_t>(std::popcount(members & active));
        if (!eligible(in_edge, h_.edge_size(e), lambda_)) continue;
        for (NodeId u : h_.edge(e))
          if ((active >> u & 1U) == 0) ++attempts_on[u];
      }
    }

    std::vector<NodeId> targets;
    std::vector<double> success;
    std::size_t attempts = attempts_so_far;
    for (NodeId u = 0; u < h_.num_nodes(); ++u) {
      if (attempts_on[u] == 0) continue;
      targets.push_back(u);
      if (mode_ == AttemptMode::kPerAttempt) {
        attempts += attempts_on[u];
        success.push_back(1.0 - std::pow(1.0 - p_, static_cast<double>(attempts_on[u])));
      } else {
        attempts += 1;
        success.push_back(p_);
      }
    }
    if (attempts > max_attempts_)
      throw OracleLimit("trace needs more than " + std::to_string(max_attempts_) + " attempts");
    if (targets.empty()) {
      pmf[static_cast<std::size_t>(std::popcount(active))] += weight;
      return;
    }

    const std::uint64_t subsets = std::uint64_t{1} << targets.size();
    for (std::uint64_t subset = 0; subset < subsets; ++subset) {
      double prob = 1.0;
      std::uint64_t newly = 0;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (subset >> i & 1U) {
          prob *= success[i];
          newly |= std::uint64_t{1} << targets[i];
        } else {
          prob *= 1.0 - success[i];
        }
      }
      if (prob == 0.0) continue;
      expand(active | newly, newly, attempts, weight * prob, pmf);
    }
  }

 private:
  const Hypergraph& h_;
  double lambda_;
  double p_;
  AttemptMode mode_;
  std::size_t max_attempts_;
  std::vector<std::uint64_t> edge_masks_;
};

}  // namespace

std::vector<double> exact_influence_distribution(const Hypergraph& h, NodeId seed_node, double lambda, double p,
                                                 AttemptMode mode, std::size_t max_attempts) {
  check_seed(h, seed_node);
  if (h.num_nodes() > 64) throw OracleLimit("exact oracle supports at most 64 nodes");
  ExactEnumerator enumerator(h, lambda, p, mode, max_attempts);
  const std::uint64_t seed_mask = std::uint64_t{1} << seed_node;
  std::vector<double> pmf(h.num_nodes() + 1, 0.0);
  enumerator.expand(seed_mask, seed_mask, 0, 1.0, pmf);
  return pmf;
}

double exact_influence(const Hypergraph& h, NodeId seed_node, double lambda, double p, AttemptMode mode,
                       std::size_t max_attempts) {
  const auto pmf = exact_influence_distribution(h, seed_node, lambda, p, mode, max_attempts);
  double expected = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) expected += static_cast<double>(k) * pmf[k];
  return expected;
}

void write_labels_csv(std::ostream& out, const InfluenceLabels& labels) {
  const auto& cfg = labels.config;
  out << "node_index,mean_influence,stddev,R,lambda,p,master_seed\n";
  const std::string tail = "," + std::to_string(cfg.runs) + "," + format_double(cfg.lambda) + "," +
                           format_double(cfg.p) + "," + std::to_string(cfg.master_seed) + "\n";
  for (std::size_t v = 0; v < labels.mean.size(); ++v)
    out << v << ',' << format_double(labels.mean[v]) << ',' << format_double(labels.stddev[v]) << tail;
}

}  // namespace hiplab
