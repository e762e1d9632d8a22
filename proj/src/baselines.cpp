#include "hiplab/baselines.hpp"

#include <algorithm>
#include <ostream>

#include "hiplab/errors.hpp"
#include "hiplab/io.hpp"

namespace hiplab {

HciDegree parse_hci_degree(const std::string& name) {
  if (name == "clique") return HciDegree::kClique;
  if (name == "hyper") return HciDegree::kHyper;
  throw ConfigError("unknown hci degree '" + name + "' (expected clique or hyper)");
}

std::string to_string(HciDegree kind) { return kind == HciDegree::kClique ? "clique" : "hyper"; }

HeuristicScore hci(const Hypergraph& h, std::size_t radius, HciDegree kind) {
  if (radius < 1) throw ConfigError("hci ball radius must be >= 1");
  const auto adj = adjacency(h);
  const std::size_t n = h.num_nodes();
  std::vector<double> excess(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto k = kind == HciDegree::kClique ? adj.degree(v) : h.hyperdegree(v);
    excess[v] = static_cast<double>(k) - 1.0;
  }

  HeuristicScore out{"hci", radius, std::vector<double>(n, 0.0)};
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<NodeId> queue;
  for (NodeId source = 0; source < n; ++source) {
    queue.assign(1, source);
    dist[source] = 0;
    double frontier_sum = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      if (dist[u] == radius) {
        frontier_sum += excess[u];
        continue;
      }
      for (NodeId w : adj.neighbors(u)) {
        if (dist[w] != kUnseen) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    for (NodeId u : queue) dist[u] = kUnseen;
    out.score[source] = excess[source] * frontier_sum;
  }
  return out;
}

HeuristicScore h_index(const Hypergraph& h) {
  const auto adj = adjacency(h);
  HeuristicScore out{"h-index", 0, std::vector<double>(h.num_nodes(), 0.0)};
  std::vector<std::size_t> nbr_degrees;
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    nbr_degrees.clear();
    for (NodeId u : adj.neighbors(v)) nbr_degrees.push_back(adj.degree(u));
    std::sort(nbr_degrees.begin(), nbr_degrees.end(), std::greater<>());
    std::size_t hv = 0;
    while (hv < nbr_degrees.size() && nbr_degrees[hv] >= hv + 1) ++hv;
    out.score[v] = static_cast<double>(hv);
  }
  return out;
}

void write_scores_csv(std::ostream& out, const std::vector<double>& scores) {
  out << "node_index,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) out << i << ',' << format_double(scores[i]) << '\n';
}

}  // namespace hiplab
