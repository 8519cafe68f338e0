#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "squarebraid/grid.hpp"
#include "squarebraid/matrix.hpp"

namespace squarebraid {

enum class PieceKind : uint8_t { vertex, hedge, vedge, square };

// Occupancy set over grid vertices; grids up to 128 vertices are supported.
using BitMask = unsigned __int128;

// A closed cell of the filled grid complex: a lattice vertex, a unit edge or
// a unit square, addressed by its lower-left corner.
struct Piece {
  PieceKind kind;
  int x, y;
};

// All pieces of the filled grid, ranked lexicographically by their (sorted)
// closure vertex lists. Piece ids are these ranks, so sorting ingredient
// lists by id is exactly the canonical order of configuration cells.
class PieceTable {
 public:
  PieceTable() = default;
  explicit PieceTable(const GridGraph& g);

  const GridGraph& grid() const { return grid_; }
  int count() const { return static_cast<int>(pieces_.size()); }
  const Piece& piece(int id) const { return pieces_[id]; }
  int dim(int id) const;
  const std::vector<int>& closure(int id) const { return closure_[id]; }
  BitMask closure_mask(int id) const { return masks_[id]; }
  int id_of(PieceKind kind, int x, int y) const;
  int vertex_piece(int vid) const { return vertex_piece_[vid]; }

 private:
  GridGraph grid_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<int>> closure_;
  std::vector<BitMask> masks_;
  std::vector<int> vertex_piece_;
  std::unordered_map<int, int> lookup_;  // packed (kind,x,y) -> id
};

// One configuration of n pairwise closure-disjoint pieces, in canonical form:
// piece ids sorted ascending.
using CellKey = std::vector<int32_t>;

struct CellKeyHash {
  size_t operator()(const CellKey& k) const;
};

// The unordered discrete configuration complex of n hard squares on the
// grid: cells indexed per dimension, with signed codimension-1 face lists.
struct CubeComplex {
  int p = 0, q = 0, n = 0;
  PieceTable pieces;
  std::vector<std::vector<CellKey>> cells;                            // [dim][idx]
  std::vector<std::vector<std::vector<std::pair<int, int>>>> faces;   // [dim][idx] -> {(face idx, sign)}
  std::vector<std::unordered_map<CellKey, int, CellKeyHash>> index;   // [dim] key -> idx

  int top_dim() const { return static_cast<int>(cells.size()) - 1; }
  std::vector<long long> f_vector() const;
  long long euler() const;
  int cell_index(int dim, const CellKey& key) const;
};

// Enumerates every unordered configuration of n pairwise closure-disjoint
// pieces. Throws std::domain_error unless 1 <= n <= p*q.
CubeComplex enumerate_cells(const GridGraph& g, int n);

// Signed incidence matrix: rows are (k-1)-cells, columns are k-cells.
// Throws std::domain_error unless 1 <= k <= top dimension.
IntegerMatrix boundary_matrix(const CubeComplex& c, int k);

}  // namespace squarebraid
