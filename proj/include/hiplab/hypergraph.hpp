#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hiplab {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/**
 * Immutable hypergraph over dense node indices [0, N).
 *
 * Each hyperedge is a duplicate-free, ascending list of member nodes. The
 * per-node membership lists (the rows of the incidence matrix) are derived at
 * construction. Repeated hyperedges are kept as distinct edges, and size-1
 * hyperedges are allowed.
 */
class Hypergraph {
 public:
  /// Builds from explicit edges; tokens default to the decimal node index.
  /// Throws InvalidHypergraph on out-of-range, duplicate or empty members.
  Hypergraph(std::size_t num_nodes, std::vector<std::vector<NodeId>> edges);

  /// Builds with an explicit token per node (tokens[i] names node i).
  Hypergraph(std::vector<std::string> tokens, std::vector<std::vector<NodeId>> edges);

  std::size_t num_nodes() const noexcept { return tokens_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const NodeId> edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<std::vector<NodeId>>& edges() const noexcept { return edges_; }
  std::span<const EdgeId> memberships(NodeId v) const { return memberships_.at(v); }

  std::size_t edge_size(EdgeId e) const { return edges_.at(e).size(); }
  std::size_t hyperdegree(NodeId v) const { return memberships_.at(v).size(); }

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(NodeId v) const { return tokens_.at(v); }
  /// Dense index for an original token; throws IndexError if unknown.
  NodeId index_of(const std::string& token) const;

  /// Number of duplicate tokens collapsed while parsing (0 for programmatic builds).
  std::size_t duplicate_warnings() const noexcept { return duplicate_warnings_; }

 private:
  friend Hypergraph load_hypergraph(std::istream& in);
  void build_index();

  std::vector<std::string> tokens_;
  std::vector<std::vector<NodeId>> edges_;
  std::vector<std::vector<EdgeId>> memberships_;
  std::unordered_map<std::string, NodeId> id_map_;
  std::size_t duplicate_warnings_ = 0;
};

/// Clique expansion: ascending, self-loop-free neighbor lists.
class AdjacencyStructure {
 public:
  explicit AdjacencyStructure(std::vector<std::vector<NodeId>> neighbors)
      : neighbors_(std::move(neighbors)) {}

  std::size_t num_nodes() const noexcept { return neighbors_.size(); }
  std::span<const NodeId> neighbors(NodeId v) const { return neighbors_.at(v); }
  std::size_t degree(NodeId v) const { return neighbors_.at(v).size(); }
  std::size_t num_links() const noexcept;

 private:
  std::vector<std::vector<NodeId>> neighbors_;
};

/// Graph over hyperedges; p and q are adjacent iff they share a node.
class LineGraph {
 public:
  explicit LineGraph(std::vector<std::vector<EdgeId>> neighbors) : neighbors_(std::move(neighbors)) {}

  std::size_t num_vertices() const noexcept { return neighbors_.size(); }
  std::span<const EdgeId> neighbors(EdgeId e) const { return neighbors_.at(e); }

 private:
  std::vector<std::vector<EdgeId>> neighbors_;
};

struct TopologyStats {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  double avg_degree = 0.0;
  double avg_hyperdegree = 0.0;
  double avg_edge_size = 0.0;
  double cv_degree = 0.0;  // population stddev / mean of clique-expansion degree
};

/// Parses the hyperedge-list format: one hyperedge per line, tokens separated
/// by any run of spaces, tabs or commas; '#' lines and blank lines skipped.
/// Throws EmptyHypergraph if no hyperedge is read, ParseError on a bad line.
Hypergraph load_hypergraph(std::istream& in);
Hypergraph load_hypergraph_file(const std::string& path);

/// Writes edges as original tokens, one hyperedge per line.
void write_hypergraph(std::ostream& out, const Hypergraph& h);

/// Two-column CSV (token,index) in index order.
void write_id_map(std::ostream& out, const Hypergraph& h);

AdjacencyStructure adjacency(const Hypergraph& h);
LineGraph line_graph(const Hypergraph& h);
TopologyStats stats(const Hypergraph& h);

}  // namespace hiplab
