#pragma once

#include <vector>

#include "squarebraid/complex.hpp"
#include "squarebraid/homology.hpp"

namespace squarebraid {

enum class TreeKind { serpentine, comb_rows, comb_cols };

// A rooted maximal tree of the grid graph with a depth-first vertex order.
// Tokens flow toward the root along tree edges; the non-tree edges are the
// deleted edges, one per independent loop of the grid.
struct SpanningTree {
  int p = 0, q = 0;
  TreeKind kind = TreeKind::serpentine;
  int root = 0;
  std::vector<int> order;         // position -> vid
  std::vector<int> order_of;      // vid -> position
  std::vector<int> parent;        // vid -> vid, -1 at the root
  std::vector<int> parent_edge;   // vid -> piece id of the edge to its parent
  std::vector<int> tree_edges;    // piece ids
  std::vector<int> deleted_edges; // piece ids, ascending
};

// The production tree: the serpentine (boustrophedon) path along rows of the
// longer side, rooted at (1, 1). Throws std::domain_error when p < q; the
// caller should transpose the grid instead.
SpanningTree build_tree(const GridGraph& g);

// Alternative trees kept for census experiments; same preconditions.
SpanningTree build_tree_variant(const GridGraph& g, TreeKind kind);

struct GradientField {
  std::vector<std::vector<int>> up;        // [dim][idx] -> partner in dim+1, or -1
  std::vector<std::vector<int>> down;      // [dim][idx] -> partner in dim-1, or -1
  std::vector<std::vector<int>> critical;  // [dim] -> cell indices
  bool acyclic = false;

  std::vector<long long> census() const {
    std::vector<long long> c;
    for (auto& layer : critical) c.push_back(static_cast<long long>(layer.size()));
    return c;
  }
};

// Builds the token-sliding gradient field on the configuration complex and
// machine-checks that it is a valid acyclic matching. Requires the complex
// to come from the tree's grid with n = pq-2 or n = pq-1.
GradientField gradient_field(const CubeComplex& c, const SpanningTree& t);

// Closed-form critical census {c0, c1, c2} for n = pq-2; also checks Euler
// consistency against the predicted Betti numbers. Needs p >= q >= 3.
std::vector<long long> predict_critical(int p, int q);

// Homology of the Morse chain complex (critical cells, boundary by signed
// gradient-path counts). Must agree exactly with homology(c).
HomologySummary morse_homology(const GradientField& f, const CubeComplex& c);

}  // namespace squarebraid
