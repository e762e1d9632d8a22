#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hiplab/hypergraph.hpp"

namespace hiplab {

/// All-pairs hop counts on the clique expansion. Unreachable pairs hold the
/// sentinel N, which exceeds every finite distance (at most N-1).
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, std::vector<std::uint32_t> hops) : n_(n), hops_(std::move(hops)) {}

  std::size_t size() const noexcept { return n_; }
  std::uint32_t sentinel() const noexcept { return static_cast<std::uint32_t>(n_); }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return hops_[i * n_ + j]; }
  bool reachable(std::size_t i, std::size_t j) const { return (*this)(i, j) != sentinel(); }
  std::span<const std::uint32_t> row(std::size_t i) const { return {hops_.data() + i * n_, n_}; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> hops_;
};

struct CentralityBundle {
  std::vector<double> degree;       // k
  std::vector<double> hyperdegree;  // k^H
  std::vector<double> vector;       // VC
  std::vector<double> gravity;      // HGC
  std::vector<double> harmonic;     // HCC
};

struct VectorCentralityOptions {
  double tol = 1e-10;
  std::size_t max_iters = 10000;
  std::vector<double> start;  // positive per-hyperedge start vector; empty = uniform
};

struct FeatureOptions {
  bool standardize = false;
  VectorCentralityOptions vc;
  std::size_t workers = 0;  // 0: default_workers()
};

/// N x (N+5) row-major matrix; row i = (d(i,0..N-1), k, kH, vc, hgc, hcc).
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t n, std::vector<double> values, bool standardized);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return n_ + 5; }
  bool standardized() const noexcept { return standardized_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols(), cols()}; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<std::string> column_names() const;

  /// Per-column z-score with population stddev; constant columns become 0.
  FeatureMatrix standardize() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
  bool standardized_;
};

DistanceMatrix distance_matrix(const Hypergraph& h, std::size_t workers = 0);

std::vector<double> degree_centrality(const Hypergraph& h);
std::vector<double> hyperdegree_centrality(const Hypergraph& h);

/// Line-graph eigenvector centrality shared equally among hyperedge members.
/// Requires M >= 1; throws ConvergenceError if power iteration stalls.
std::vector<double> vector_centrality(const Hypergraph& h, const VectorCentralityOptions& opts = {});

/// Hyperedge-level scores before sharing to nodes (L1 sum 1).
std::vector<double> hyperedge_eigenvector_centrality(const LineGraph& lg, const VectorCentralityOptions& opts = {});

/// g_i = sum over reachable j != i of k_i k_j / d(i,j)^2.
std::vector<double> gravity_centrality(const Hypergraph& h, const DistanceMatrix& d);

/// Hyperedge harmonic closeness on the line graph, shared equally to members.
std::vector<double> harmonic_closeness(const Hypergraph& h, std::size_t workers = 0);
std::vector<double> hyperedge_harmonic_closeness(const Hypergraph& h, std::size_t workers = 0);

CentralityBundle centralities(const Hypergraph& h, const DistanceMatrix& d, const FeatureOptions& opts = {});

FeatureMatrix build_features(const Hypergraph& h, const FeatureOptions& opts = {});

/// CSV with header d_0..d_{N-1},k,kH,vc,hgc,hcc; rows in node order.
void write_features_csv(std::ostream& out, const FeatureMatrix& x);

/// Binary layout, little-endian: "HIPF" magic, u32 N, u32 cols, u32 flags
/// (bit 0 = standardized), then N*cols row-major float64.
void write_features_binary(std::ostream& out, const FeatureMatrix& x);
FeatureMatrix read_features_binary(std::istream& in);

}  // namespace hiplab
