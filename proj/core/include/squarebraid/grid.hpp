#pragma once

#include <utility>
#include <vector>

namespace squarebraid {

// The p x q grid graph on lattice points (x, y), 1 <= x <= p, 1 <= y <= q,
// together with the unit squares that fill its loops. Vertex ids are
// row-major: vid(x, y) = (y-1)*p + (x-1).
struct GridGraph {
  int p = 0;
  int q = 0;

  int vertex_count() const { return p * q; }
  int edge_count() const { return q * (p - 1) + p * (q - 1); }
  int square_count() const { return (p - 1) * (q - 1); }

  int vid(int x, int y) const { return (y - 1) * p + (x - 1); }
  std::pair<int, int> coords(int v) const { return {v % p + 1, v / p + 1}; }
};

// Throws std::domain_error unless p >= 2 and q >= 2.
GridGraph build_grid(int p, int q);

}  // namespace squarebraid
