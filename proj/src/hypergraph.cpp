#include "hiplab/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "hiplab/errors.hpp"

namespace hiplab {

namespace {

std::vector<std::string> decimal_tokens(std::size_t n) {
  std::vector<std::string> tokens;
  tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) tokens.push_back(std::to_string(i));
  return tokens;
}

bool is_separator(char c) { return c == ' ' || c == '\t' || c == ','; }

}  // namespace

Hypergraph::Hypergraph(std::size_t num_nodes, std::vector<std::vector<NodeId>> edges)
    : Hypergraph(decimal_tokens(num_nodes), std::move(edges)) {}

Hypergraph::Hypergraph(std::vector<std::string> tokens, std::vector<std::vector<NodeId>> edges)
    : tokens_(std::move(tokens)), edges_(std::move(edges)) {
  const std::size_t n = tokens_.size();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& members = edges_[e];
    if (members.empty()) throw InvalidHypergraph("hyperedge " + std::to_string(e) + " is empty");
    std::sort(members.begin(), members.end());
    if (members.back() >= n)
      throw InvalidHypergraph("hyperedge " + std::to_string(e) + " references node " +
                              std::to_string(members.back()) + " >= N");
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
      throw InvalidHypergraph("hyperedge " + std::to_string(e) + " repeats a node");
  }
  build_index();
}

void Hypergraph::build_index() {
  memberships_.assign(tokens_.size(), {});
  for (EdgeId e = 0; e < edges_.size(); ++e)
    for (NodeId v : edges_[e]) memberships_[v].push_back(e);
  id_map_.clear();
  id_map_.reserve(tokens_.size());
  for (NodeId v = 0; v < tokens_.size(); ++v) {
    if (!id_map_.emplace(tokens_[v], v).second)
      throw InvalidHypergraph("token '" + tokens_[v] + "' names two nodes");
  }
}

NodeId Hypergraph::index_of(const std::string& token) const {
  const auto it = id_map_.find(token);
  if (it == id_map_.end()) throw IndexError("unknown node token '" + token + "'");
  return it->second;
}

Hypergraph load_hypergraph(std::istream& in) {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::vector<NodeId>> edges;
  std::size_t duplicates = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<NodeId> members;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && is_separator(line[pos])) ++pos;
      if (pos == line.size()) break;
      const std::size_t start = pos;
      while (pos < line.size() && !is_separator(line[pos])) {
        const auto c = static_cast<unsigned char>(line[pos]);
        if (c < 0x20 || c == 0x7f) throw ParseError(line_no, "control character in token");
        ++pos;
      }
      std::string token = line.substr(start, pos - start);
      auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(tokens.size()));
      if (inserted) tokens.push_back(std::move(token));
      if (std::find(members.begin(), members.end(), it->second) != members.end()) {
        ++duplicates;
        continue;
      }
      members.push_back(it->second);
    }
    if (members.empty()) throw ParseError(line_no, "no node tokens");
    edges.push_back(std::move(members));
  }
  if (in.bad()) throw ParseError(line_no + 1, "read failure");
  if (edges.empty()) throw EmptyHypergraph();

  Hypergraph h(std::move(tokens), std::move(edges));
  h.duplicate_warnings_ = duplicates;
  return h;
}

Hypergraph load_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open hypergraph file '" + path + "'");
  return load_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  for (const auto& members : h.edges()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i != 0) out << ' ';
      out << h.token(members[i]);
    }
    out << '\n';
  }
}

void write_id_map(std::ostream& out, const Hypergraph& h) {
  out << "token,index\n";
  for (NodeId v = 0; v < h.num_nodes(); ++v) out << h.token(v) << ',' << v << '\n';
}

std::size_t AdjacencyStructure::num_links() const noexcept {
  std::size_t total = 0;
  for (const auto& nbrs : neighbors_) total += nbrs.size();
  return total / 2;
}

AdjacencyStructure adjacency(const Hypergraph& h) {
  std::vector<std::vector<NodeId>> neighbors(h.num_nodes());
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    auto& nbrs = neighbors[v];
    for (EdgeId e : h.memberships(v))
      for (NodeId u : h.edge(e))
        if (u != v) nbrs.push_back(u);
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return AdjacencyStructure(std::move(neighbors));
}

LineGraph line_graph(const Hypergraph& h) {
  std::vector<std::vector<EdgeId>> neighbors(h.num_edges());
  for (EdgeId p = 0; p < h.num_edges(); ++p) {
    auto& nbrs = neighbors[p];
    for (NodeId v : h.edge(p))
      for (EdgeId q : h.memberships(v))
        if (q != p) nbrs.push_back(q);
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return LineGraph(std::move(neighbors));
}

TopologyStats stats(const Hypergraph& h) {
  TopologyStats s;
  s.num_nodes = h.num_nodes();
  s.num_edges = h.num_edges();
  if (s.num_nodes == 0) return s;

  const auto adj = adjacency(h);
  const auto n = static_cast<double>(s.num_nodes);
  double degree_sum = 0.0;
  double hyperdegree_sum = 0.0;
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    degree_sum += static_cast<double>(adj.degree(v));
    hyperdegree_sum += static_cast<double>(h.hyperdegree(v));
  }
  s.avg_degree = degree_sum / n;
  s.avg_hyperdegree = hyperdegree_sum / n;
  if (s.num_edges > 0) s.avg_edge_size = hyperdegree_sum / static_cast<double>(s.num_edges);

  double sq = 0.0;
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    const double d = static_cast<double>(adj.degree(v)) - s.avg_degree;
    sq += d * d;
  }
  if (s.avg_degree > 0.0) s.cv_degree = std::sqrt(sq / n) / s.avg_degree;
  return s;
}

}  // namespace hiplab
