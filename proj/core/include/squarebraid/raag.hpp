#pragma once

#include <set>
#include <vector>

#include "squarebraid/word.hpp"

namespace squarebraid {

// A finite simple graph on named vertices; one generator per vertex, one
// commutation relator per edge.
struct RaagGraph {
  std::vector<GenSym> vertices;         // sorted, unique
  std::set<std::pair<int, int>> edges;  // index pairs, first < second

  static RaagGraph of(std::vector<GenSym> verts,
                      const std::vector<std::pair<GenSym, GenSym>>& edge_list);

  int index_of(const GenSym& g) const;  // -1 when absent
  bool adjacent(int a, int b) const {
    if (a > b) std::swap(a, b);
    return edges.count({a, b}) > 0;
  }
  size_t edge_count() const { return edges.size(); }
  bool has_edge(const GenSym& a, const GenSym& b) const;
  std::string edge_list_text() const;  // one "v1 v2" line per edge
};

// True when the two graphs are isomorphic (exhaustive search with degree
// pruning; intended for the small graphs handled here).
bool graphs_isomorphic(const RaagGraph& a, const RaagGraph& b);

// Canonical normal form: fully reduce the word in the trace sense, then
// take the lexicographically least linearization reachable by swapping
// adjacent commuting letters. Two words are equal in the group iff their
// normal forms are identical. Throws std::domain_error on unknown symbols.
Word raag_normal_form(const RaagGraph& g, const Word& w);

// Membership in the special subgroup generated by `sub` (an induced
// subgraph): the normal form must only use vertices of `sub`.
bool special_membership(const RaagGraph& g, const std::vector<GenSym>& sub, const Word& w);

}  // namespace squarebraid
