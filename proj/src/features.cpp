#include "hiplab/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "hiplab/errors.hpp"
#include "hiplab/io.hpp"
#include "hiplab/parallel.hpp"

namespace hiplab {

namespace {

std::size_t resolve_workers(std::size_t workers) { return workers == 0 ? default_workers() : workers; }

// Both BFS flavours walk the node/hyperedge incidence structure instead of an
// expanded graph: one pass costs O(sum |e|) however dense the expansion is.

// Node hops from `source`; two nodes are one hop apart when they share an edge.
void node_bfs(const Hypergraph& h, NodeId source, std::uint32_t unreached, std::span<std::uint32_t> dist,
              std::vector<std::uint32_t>& queue, std::vector<char>& edge_done) {
  std::fill(dist.begin(), dist.end(), unreached);
  edge_done.assign(h.num_edges(), 0);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    for (EdgeId e : h.memberships(u)) {
      if (edge_done[e]) continue;
      edge_done[e] = 1;
      for (NodeId w : h.edge(e)) {
        if (dist[w] != unreached) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
}

// Line-graph hops from hyperedge `source`; each node is expanded once.
void edge_bfs(const Hypergraph& h, EdgeId source, std::uint32_t unreached, std::span<std::uint32_t> dist,
              std::vector<std::uint32_t>& queue, std::vector<char>& node_done) {
  std::fill(dist.begin(), dist.end(), unreached);
  node_done.assign(h.num_nodes(), 0);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto e = queue[head];
    for (NodeId v : h.edge(e)) {
      if (node_done[v]) continue;
      node_done[v] = 1;
      for (EdgeId f : h.memberships(v)) {
        if (dist[f] != unreached) continue;
        dist[f] = dist[e] + 1;
        queue.push_back(f);
      }
    }
  }
}

std::vector<std::vector<EdgeId>> components(const LineGraph& lg) {
  std::vector<std::vector<EdgeId>> comps;
  std::vector<bool> seen(lg.num_vertices(), false);
  for (EdgeId start = 0; start < lg.num_vertices(); ++start) {
    if (seen[start]) continue;
    auto& comp = comps.emplace_back();
    comp.push_back(start);
    seen[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (EdgeId q : lg.neighbors(comp[head]))
        if (!seen[q]) {
          seen[q] = true;
          comp.push_back(q);
        }
    std::sort(comp.begin(), comp.end());
  }
  return comps;
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::size_t n, std::vector<double> values, bool standardized)
    : n_(n), values_(std::move(values)), standardized_(standardized) {
  if (values_.size() != n_ * (n_ + 5)) throw DataError("feature matrix must be N x (N+5)");
}

std::vector<std::string> FeatureMatrix::column_names() const {
  std::vector<std::string> names;
  names.reserve(cols());
  for (std::size_t j = 0; j < n_; ++j) names.push_back("d_" + std::to_string(j));
  for (const char* name : {"k", "kH", "vc", "hgc", "hcc"}) names.emplace_back(name);
  return names;
}

FeatureMatrix FeatureMatrix::standardize() const {
  std::vector<double> out = values_;
  const std::size_t c = cols();
  const auto n = static_cast<double>(n_);
  for (std::size_t j = 0; j < c; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n_; ++i) mean += values_[i * c + j];
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double d = values_[i * c + j] - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / n);
    for (std::size_t i = 0; i < n_; ++i)
      out[i * c + j] = sd > 0.0 ? (values_[i * c + j] - mean) / sd : 0.0;
  }
  return FeatureMatrix(n_, std::move(out), true);
}

DistanceMatrix distance_matrix(const Hypergraph& h, std::size_t workers) {
  const std::size_t n = h.num_nodes();
  std::vector<std::uint32_t> hops(n * n);
  const auto sentinel = static_cast<std::uint32_t>(n);
  parallel_for(n, resolve_workers(workers), [&](std::size_t source) {
    thread_local std::vector<std::uint32_t> queue;
    thread_local std::vector<char> edge_done;
    node_bfs(h, static_cast<NodeId>(source), sentinel, std::span<std::uint32_t>(hops.data() + source * n, n), queue,
             edge_done);
  });
  return DistanceMatrix(n, std::move(hops));
}

std::vector<double> degree_centrality(const Hypergraph& h) {
  const auto adj = adjacency(h);
  std::vector<double> k(h.num_nodes());
  for (NodeId v = 0; v < h.num_nodes(); ++v) k[v] = static_cast<double>(adj.degree(v));
  return k;
}

std::vector<double> hyperdegree_centrality(const Hypergraph& h) {
  std::vector<double> kh(h.num_nodes());
  for (NodeId v = 0; v < h.num_nodes(); ++v) kh[v] = static_cast<double>(h.hyperdegree(v));
  return kh;
}

std::vector<double> hyperedge_eigenvector_centrality(const LineGraph& lg, const VectorCentralityOptions& opts) {
  const std::size_t m = lg.num_vertices();
  if (m == 0) throw InvalidHypergraph("vector centrality needs at least one hyperedge");
  std::vector<double> scores(m, 0.0);

  for (const auto& comp : components(lg)) {
    const double weight = static_cast<double>(comp.size()) / static_cast<double>(m);
    if (comp.size() == 1) {
      scores[comp[0]] = weight;
      continue;
    }
    // Power iteration on (A + I): same eigenvectors as A, and the shift makes the
    // Perron root strictly dominant even when the component is bipartite.
    std::vector<std::size_t> local(m, 0);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    const std::size_t s = comp.size();
    std::vector<double> x(s, 1.0 / static_cast<double>(s));
    if (!opts.start.empty()) {
      if (opts.start.size() != m) throw ConfigError("vector centrality start vector must have M entries");
      double total = 0.0;
      for (std::size_t i = 0; i < s; ++i) {
        x[i] = opts.start[comp[i]];
        if (!(x[i] > 0.0)) throw ConfigError("vector centrality start vector must be positive");
        total += x[i];
      }
      for (double& v : x) v /= total;
    }
    std::vector<double> y(s);
    double residual = 0.0;
    bool converged = false;
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
      for (std::size_t i = 0; i < s; ++i) {
        double acc = 0.0;
        for (EdgeId q : lg.neighbors(comp[i])) acc += x[local[q]];
        y[i] = acc;
      }
      double rayleigh = 0.0;
      for (double v : y) rayleigh += v;  // ||Ax||_1 with x >= 0, ||x||_1 = 1
      residual = 0.0;
      for (std::size_t i = 0; i < s; ++i) residual += std::abs(y[i] - rayleigh * x[i]);
      if (residual <= opts.tol) {
        converged = true;
        break;
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < s; ++i) {
        x[i] += y[i];
        norm += x[i];
      }
      for (double& v : x) v /= norm;
    }
    if (!converged) throw ConvergenceError("vector centrality power iteration did not converge", residual);
    for (std::size_t i = 0; i < s; ++i) scores[comp[i]] = weight * x[i];
  }
  return scores;
}

std::vector<double> vector_centrality(const Hypergraph& h, const VectorCentralityOptions& opts) {
  const auto edge_scores = hyperedge_eigenvector_centrality(line_graph(h), opts);
  std::vector<double> c(h.num_nodes(), 0.0);
  for (NodeId v = 0; v < h.num_nodes(); ++v)
    for (EdgeId e : h.memberships(v)) c[v] += edge_scores[e] / static_cast<double>(h.edge_size(e));
  return c;
}

std::vector<double> gravity_centrality(const Hypergraph& h, const DistanceMatrix& d) {
  const auto k = degree_centrality(h);
  const std::size_t n = h.num_nodes();
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (k[i] == 0.0) continue;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !d.reachable(i, j)) continue;
      const double dist = d(i, j);
      acc += k[j] / (dist * dist);
    }
    g[i] = k[i] * acc;
  }
  return g;
}

std::vector<double> hyperedge_harmonic_closeness(const Hypergraph& h, std::size_t workers) {
  const std::size_t m = h.num_edges();
  std::vector<double> he(m, 0.0);
  if (m <= 1) return he;
  const auto unreached = static_cast<std::uint32_t>(m);
  parallel_for(m, resolve_workers(workers), [&](std::size_t p) {
    thread_local std::vector<std::uint32_t> queue;
    thread_local std::vector<std::uint32_t> dist;
    thread_local std::vector<char> node_done;
    dist.resize(m);
    edge_bfs(h, static_cast<EdgeId>(p), unreached, dist, queue, node_done);
    double acc = 0.0;
    for (std::size_t q = 0; q < m; ++q)
      if (q != p && dist[q] != unreached) acc += 1.0 / static_cast<double>(dist[q]);
    he[p] = acc / static_cast<double>(m - 1);
  });
  return he;
}

std::vector<double> harmonic_closeness(const Hypergraph& h, std::size_t workers) {
  if (h.num_edges() == 0) throw InvalidHypergraph("harmonic closeness needs at least one hyperedge");
  const auto he = hyperedge_harmonic_closeness(h, workers);
  std::vector<double> out(h.num_nodes(), 0.0);
  for (NodeId v = 0; v < h.num_nodes(); ++v)
    for (EdgeId e : h.memberships(v)) out[v] += he[e] / static_cast<double>(h.edge_size(e));
  return out;
}

CentralityBundle centralities(const Hypergraph& h, const DistanceMatrix& d, const FeatureOptions& opts) {
  CentralityBundle b;
  b.degree = degree_centrality(h);
  b.hyperdegree = hyperdegree_centrality(h);
  b.vector = vector_centrality(h, opts.vc);
  b.gravity = gravity_centrality(h, d);
  b.harmonic = harmonic_closeness(h, opts.workers);
  return b;
}

FeatureMatrix build_features(const Hypergraph& h, const FeatureOptions& opts) {
  const std::size_t n = h.num_nodes();
  const auto d = distance_matrix(h, opts.workers);
  const auto b = centralities(h, d, opts);
  const std::size_t cols = n + 5;
  std::vector<double> values(n * cols);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = values.data() + i * cols;
    for (std::size_t j = 0; j < n; ++j) row[j] = d(i, j);
    row[n] = b.degree[i];
    row[n + 1] = b.hyperdegree[i];
    row[n + 2] = b.vector[i];
    row[n + 3] = b.gravity[i];
    row[n + 4] = b.harmonic[i];
  }
  FeatureMatrix x(n, std::move(values), false);
  return opts.standardize ? x.standardize() : x;
}

void write_features_csv(std::ostream& out, const FeatureMatrix& x) {
  const auto names = x.column_names();
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

namespace {

constexpr char kMagic[4] = {'H', 'I', 'P', 'F'};

void put_u32(std::ostream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char buf[4];
  if (!in.read(reinterpret_cast<char*>(buf), 4)) throw DataError("truncated feature header");
  return std::uint32_t{buf[0]} | std::uint32_t{buf[1]} << 8 | std::uint32_t{buf[2]} << 16 |
         std::uint32_t{buf[3]} << 24;
}

}  // namespace

void write_features_binary(std::ostream& out, const FeatureMatrix& x) {
  static_assert(std::endian::native == std::endian::little, "binary feature export assumes little-endian");
  out.write(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(x.rows()));
  put_u32(out, static_cast<std::uint32_t>(x.cols()));
  put_u32(out, x.standardized() ? 1U : 0U);
  out.write(reinterpret_cast<const char*>(x.values().data()),
            static_cast<std::streamsize>(x.values().size() * sizeof(double)));
}

FeatureMatrix read_features_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw DataError("not a HIPF feature file");
  const std::uint32_t n = get_u32(in);
  const std::uint32_t cols = get_u32(in);
  const std::uint32_t flags = get_u32(in);
  if (cols != std::size_t{n} + 5) throw DataError("feature file column count is not N+5");
  std::vector<double> values(std::size_t{n} * cols);
  if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double))))
    throw DataError("truncated feature payload");
  return FeatureMatrix(n, std::move(values), (flags & 1U) != 0);
}

}  // namespace hiplab
