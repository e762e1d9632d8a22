// Test-only reference implementations. These deliberately take the slow,
// obvious route (dense matrices, all pairs) and share no code with src/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "hiplab/hypergraph.hpp"

namespace oracle {

using Bool2D = std::vector<std::vector<bool>>;

inline Bool2D incidence(const hiplab::Hypergraph& h) {
  Bool2D inc(h.num_nodes(), std::vector<bool>(h.num_edges(), false));
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    for (auto v : h.edge(static_cast<hiplab::EdgeId>(e))) inc[v][e] = true;
  return inc;
}

// Nonzero pattern of I * I^T with the diagonal cleared.
inline Bool2D node_pattern(const hiplab::Hypergraph& h) {
  const auto inc = incidence(h);
  const std::size_t n = h.num_nodes();
  Bool2D out(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t e = 0; e < h.num_edges(); ++e)
        if (inc[i][e] && inc[j][e]) out[i][j] = true;
    }
  return out;
}

// Nonzero pattern of I^T * I with the diagonal cleared.
inline Bool2D edge_pattern(const hiplab::Hypergraph& h) {
  const auto inc = incidence(h);
  const std::size_t m = h.num_edges();
  Bool2D out(m, std::vector<bool>(m, false));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      if (p == q) continue;
      for (std::size_t v = 0; v < h.num_nodes(); ++v)
        if (inc[v][p] && inc[v][q]) out[p][q] = true;
    }
  return out;
}

// All-pairs hops; unreachable = size of the graph.
inline std::vector<std::vector<std::size_t>> floyd_warshall(const Bool2D& adj) {
  const std::size_t n = adj.size();
  const std::size_t inf = n;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Connected-component size of every node in the clique expansion.
inline std::vector<std::size_t> component_sizes(const hiplab::Hypergraph& h) {
  const auto d = floyd_warshall(node_pattern(h));
  const std::size_t n = h.num_nodes();
  std::vector<std::size_t> sizes(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i][j] != n) ++sizes[i];
  return sizes;
}

// O(n^2) Kendall tau-b by explicit pair classification.
inline double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  long long concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        ++tie_x;
      } else if (dy == 0) {
        ++tie_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  const double denom = std::sqrt(static_cast<double>(concordant + discordant + tie_x)) *
                       std::sqrt(static_cast<double>(concordant + discordant + tie_y));
  return static_cast<double>(concordant - discordant) / denom;
}

inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(average_ranks(a), average_ranks(b));
}

// Deterministic (p = 1) cascade with lambda gating, stepping whole frontiers.
inline std::size_t gated_reach(const hiplab::Hypergraph& h, std::size_t seed, double lambda) {
  std::vector<bool> active(h.num_nodes(), false);
  active[seed] = true;
  std::vector<std::size_t> frontier{seed};
  while (!frontier.empty()) {
    std::vector<bool> next(h.num_nodes(), false);
    for (auto v : frontier)
      for (auto e : h.memberships(static_cast<hiplab::NodeId>(v))) {
        std::size_t in = 0;
        for (auto u : h.edge(e)) in += active[u] ? 1 : 0;
        if (static_cast<double>(in) / static_cast<double>(h.edge_size(e)) < lambda) continue;
        for (auto u : h.edge(e))
          if (!active[u]) next[u] = true;
      }
    frontier.clear();
    for (std::size_t u = 0; u < next.size(); ++u)
      if (next[u]) {
        active[u] = true;
        frontier.push_back(u);
      }
  }
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

// Random hypergraph with every node in [0, n) covered by at least one edge.
inline hiplab::Hypergraph random_hypergraph(std::mt19937_64& gen, std::size_t n, std::size_t m, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size_dist(1, std::min(max_size, n));
  std::vector<std::vector<hiplab::NodeId>> edges;
  std::vector<bool> covered(n, false);
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<hiplab::NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(size_dist(gen));
    for (auto v : all) covered[v] = true;
    edges.push_back(all);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!covered[v]) edges.push_back({static_cast<hiplab::NodeId>(v)});
  return hiplab::Hypergraph(n, std::move(edges));
}

}  // namespace oracle
