#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hiplab/hypergraph.hpp"

namespace hiplab {

/// Which degree feeds the collective-influence formula.
enum class HciDegree { kClique, kHyper };

HciDegree parse_hci_degree(const std::string& name);
std::string to_string(HciDegree kind);

struct HeuristicScore {
  std::string method;  // "hci" or "h-index"
  std::size_t radius = 0;  // ball radius for hci, 0 otherwise
  std::vector<double> score;
};

/// Collective influence CI_l(i) = (k_i - 1) * sum over j at exactly distance l
/// of (k_j - 1), distances on the clique expansion. Throws ConfigError if l < 1.
HeuristicScore hci(const Hypergraph& h, std::size_t radius = 2, HciDegree kind = HciDegree::kClique);

/// Largest h such that at least h neighbors have degree >= h.
HeuristicScore h_index(const Hypergraph& h);

/// CSV: node_index,score
void write_scores_csv(std::ostream& out, const std::vector<double>& scores);

}  // namespace hiplab
