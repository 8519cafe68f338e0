#include "squarebraid/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace squarebraid {

namespace {

int pack(PieceKind kind, int x, int y) {
  return (static_cast<int>(kind) << 16) | ((y & 0xff) << 8) | (x & 0xff);
}

std::vector<int> closure_vertices(const GridGraph& g, const Piece& pc) {
  int v = g.vid(pc.x, pc.y);
  switch (pc.kind) {
    case PieceKind::vertex:
      return {v};
    case PieceKind::hedge:
      return {v, v + 1};
    case PieceKind::vedge:
      return {v, v + g.p};
    case PieceKind::square:
      return {v, v + 1, v + g.p, v + g.p + 1};
  }
  return {};
}

}  // namespace

PieceTable::PieceTable(const GridGraph& g) : grid_(g) {
  if (g.vertex_count() > 128)
    throw std::domain_error("PieceTable: grids beyond 128 vertices are not supported");
  std::vector<Piece> all;
  for (int y = 1; y <= g.q; ++y)
    for (int x = 1; x <= g.p; ++x) all.push_back({PieceKind::vertex, x, y});
  for (int y = 1; y <= g.q; ++y)
    for (int x = 1; x < g.p; ++x) all.push_back({PieceKind::hedge, x, y});
  for (int y = 1; y < g.q; ++y)
    for (int x = 1; x <= g.p; ++x) all.push_back({PieceKind::vedge, x, y});
  for (int y = 1; y < g.q; ++y)
    for (int x = 1; x < g.p; ++x) all.push_back({PieceKind::square, x, y});

  std::vector<std::pair<std::vector<int>, Piece>> keyed;
  keyed.reserve(all.size());
  for (auto& pc : all) keyed.emplace_back(closure_vertices(g, pc), pc);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  vertex_piece_.assign(g.vertex_count(), -1);
  for (int id = 0; id < static_cast<int>(keyed.size()); ++id) {
    const Piece& pc = keyed[id].second;
    pieces_.push_back(pc);
    closure_.push_back(keyed[id].first);
    BitMask m = 0;
    for (int v : keyed[id].first) m |= BitMask{1} << v;
    masks_.push_back(m);
    lookup_[pack(pc.kind, pc.x, pc.y)] = id;
    if (pc.kind == PieceKind::vertex) vertex_piece_[grid_.vid(pc.x, pc.y)] = id;
  }
}

int PieceTable::dim(int id) const {
  switch (pieces_[id].kind) {
    case PieceKind::vertex:
      return 0;
    case PieceKind::hedge:
    case PieceKind::vedge:
      return 1;
    case PieceKind::square:
      return 2;
  }
  return 0;
}

int PieceTable::id_of(PieceKind kind, int x, int y) const {
  auto it = lookup_.find(pack(kind, x, y));
  if (it == lookup_.end()) throw std::out_of_range("PieceTable::id_of: no such piece");
  return it->second;
}

size_t CellKeyHash::operator()(const CellKey& k) const {
  uint64_t h = 1469598103934665603ull;
  for (int32_t v : k) {
    h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

std::vector<long long> CubeComplex::f_vector() const {
  std::vector<long long> f;
  for (auto& layer : cells) f.push_back(static_cast<long long>(layer.size()));
  return f;
}

long long CubeComplex::euler() const {
  long long e = 0;
  int sign = 1;
  for (auto& layer : cells) {
    e += sign * static_cast<long long>(layer.size());
    sign = -sign;
  }
  return e;
}

int CubeComplex::cell_index(int dim, const CellKey& key) const {
  auto it = index[dim].find(key);
  if (it == index[dim].end()) return -1;
  return it->second;
}

namespace {

// Emits every way of placing `count` vertex tokens on the free vertices,
// ascending, appended to the chosen non-vertex pieces.
void emit_vertex_fills(const PieceTable& pt, const std::vector<int32_t>& chosen, BitMask mask,
                       int count, int dim, CubeComplex& out) {
  int nv = pt.grid().vertex_count();
  std::vector<int> free_vs;
  for (int v = 0; v < nv; ++v)
    if (!(mask >> v & 1)) free_vs.push_back(v);
  if (count > static_cast<int>(free_vs.size())) return;

  std::vector<int> pick(count);
  auto emit = [&]() {
    CellKey key = chosen;
    for (int i = 0; i < count; ++i) key.push_back(pt.vertex_piece(free_vs[pick[i]]));
    std::sort(key.begin(), key.end());
    while (static_cast<int>(out.cells.size()) <= dim) {
      out.cells.emplace_back();
      out.index.emplace_back();
    }
    out.index[dim].emplace(key, static_cast<int>(out.cells[dim].size()));
    out.cells[dim].push_back(std::move(key));
  };
  // Lexicographic combinations.
  for (int i = 0; i < count; ++i) pick[i] = i;
  if (count == 0) {
    emit();
    return;
  }
  for (;;) {
    emit();
    int i = count - 1;
    while (i >= 0 && pick[i] == static_cast<int>(free_vs.size()) - count + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < count; ++k) pick[k] = pick[k - 1] + 1;
  }
}

int popcount_mask(BitMask m) {
  return __builtin_popcountll(static_cast<uint64_t>(m)) +
         __builtin_popcountll(static_cast<uint64_t>(m >> 64));
}

void enumerate_subsets(const PieceTable& pt, const std::vector<int>& nonvertex, size_t start,
                       std::vector<int32_t>& chosen, BitMask mask, int dim, int n,
                       CubeComplex& out) {
  emit_vertex_fills(pt, chosen, mask, n - static_cast<int>(chosen.size()), dim, out);
  if (static_cast<int>(chosen.size()) == n) return;
  // Each further ingredient covers at least one extra vertex beyond its own
  // token slot, so once the slack is gone no extension can hold n pieces.
  int slack = (pt.grid().vertex_count() - popcount_mask(mask)) -
              (n - static_cast<int>(chosen.size()));
  if (slack <= 0) return;
  for (size_t i = start; i < nonvertex.size(); ++i) {
    int id = nonvertex[i];
    if (mask & pt.closure_mask(id)) continue;
    if (pt.dim(id) == 1 && slack < 1) continue;
    if (pt.dim(id) == 2 && slack < 3) continue;
    chosen.push_back(id);
    enumerate_subsets(pt, nonvertex, i + 1, chosen, mask | pt.closure_mask(id),
                      dim + pt.dim(id), n, out);
    chosen.pop_back();
  }
}

struct FacePiece {
  int piece;
  int sign;
};

std::vector<FacePiece> piece_faces(const PieceTable& pt, int id) {
  const Piece& pc = pt.piece(id);
  switch (pc.kind) {
    case PieceKind::hedge:
      // Oriented from the smaller endpoint (x, y) to the larger (x+1, y).
      return {{pt.id_of(PieceKind::vertex, pc.x + 1, pc.y), +1},
              {pt.id_of(PieceKind::vertex, pc.x, pc.y), -1}};
    case PieceKind::vedge:
      return {{pt.id_of(PieceKind::vertex, pc.x, pc.y + 1), +1},
              {pt.id_of(PieceKind::vertex, pc.x, pc.y), -1}};
    case PieceKind::square:
      // Product orientation [x, x+1] x [y, y+1].
      return {{pt.id_of(PieceKind::vedge, pc.x + 1, pc.y), +1},
              {pt.id_of(PieceKind::vedge, pc.x, pc.y), -1},
              {pt.id_of(PieceKind::hedge, pc.x, pc.y + 1), -1},
              {pt.id_of(PieceKind::hedge, pc.x, pc.y), +1}};
    default:
      return {};
  }
}

}  // namespace

CubeComplex enumerate_cells(const GridGraph& g, int n) {
  if (n < 1 || n > g.vertex_count())
    throw std::domain_error("enumerate_cells: need 1 <= n <= p*q, got n=" + std::to_string(n));

  CubeComplex out;
  out.p = g.p;
  out.q = g.q;
  out.n = n;
  out.pieces = PieceTable(g);

  std::vector<int> nonvertex;
  for (int id = 0; id < out.pieces.count(); ++id)
    if (out.pieces.dim(id) > 0) nonvertex.push_back(id);

  std::vector<int32_t> chosen;
  enumerate_subsets(out.pieces, nonvertex, 0, chosen, 0, 0, n, out);

  // Codimension-1 faces. A cell is oriented as the graded wedge of its
  // non-vertex ingredients (ids ascending); taking the face of one factor
  // carries the Koszul sign of the dimensions before it, and sliding the
  // replacement edge to its sorted position flips once per edge it crosses.
  out.faces.resize(out.cells.size());
  const PieceTable& pt = out.pieces;
  for (int dim = 1; dim <= out.top_dim(); ++dim) {
    out.faces[dim].resize(out.cells[dim].size());
    for (size_t ci = 0; ci < out.cells[dim].size(); ++ci) {
      const CellKey& key = out.cells[dim][ci];
      std::vector<int32_t> nv;
      for (int32_t id : key)
        if (pt.dim(id) > 0) nv.push_back(id);
      int dim_prefix = 0;
      for (size_t s = 0; s < nv.size(); ++s) {
        int id = nv[s];
        int slot_sign = (dim_prefix % 2 == 0) ? +1 : -1;
        dim_prefix += pt.dim(id);
        std::vector<int32_t> rest;
        for (int32_t other : nv)
          if (other != id) rest.push_back(other);
        for (const FacePiece& f : piece_faces(pt, id)) {
          int perm_sign = 1;
          if (pt.dim(f.piece) > 0) {
            size_t m = 0;
            while (m < rest.size() && rest[m] < f.piece) ++m;
            size_t lo = std::min(m, s), hi = std::max(m, s);
            int crossed_edges = 0;
            for (size_t t = lo; t < hi; ++t)
              if (pt.dim(rest[t]) == 1) ++crossed_edges;
            perm_sign = (crossed_edges % 2 == 0) ? +1 : -1;
          }
          CellKey fk;
          fk.reserve(key.size());
          for (int32_t other : key)
            if (other != id) fk.push_back(other);
          fk.insert(std::upper_bound(fk.begin(), fk.end(), f.piece), f.piece);
          int fidx = out.cell_index(dim - 1, fk);
          if (fidx < 0) throw std::logic_error("enumerate_cells: face cell missing");
          out.faces[dim][ci].push_back({fidx, slot_sign * f.sign * perm_sign});
        }
      }
    }
  }
  return out;
}

IntegerMatrix boundary_matrix(const CubeComplex& c, int k) {
  if (k < 1 || k > c.top_dim())
    throw std::domain_error("boundary_matrix: k out of range: " + std::to_string(k));
  IntegerMatrix m(static_cast<int>(c.cells[k - 1].size()), static_cast<int>(c.cells[k].size()));
  for (size_t col = 0; col < c.cells[k].size(); ++col)
    for (auto& [row, sign] : c.faces[k][col]) m.add(row, static_cast<int>(col), sign);
  return m;
}

}  // namespace squarebraid
