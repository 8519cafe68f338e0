#include "squarebraid/morse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace squarebraid {

namespace {

SpanningTree finish_tree(const GridGraph& g, TreeKind kind, std::vector<int> order,
                         std::vector<int> parent) {
  SpanningTree t;
  t.p = g.p;
  t.q = g.q;
  t.kind = kind;
  t.order = std::move(order);
  t.parent = std::move(parent);
  t.root = t.order[0];
  int nv = g.vertex_count();
  t.order_of.assign(nv, -1);
  for (int pos = 0; pos < nv; ++pos) t.order_of[t.order[pos]] = pos;

  PieceTable pt(g);
  t.parent_edge.assign(nv, -1);
  std::vector<bool> in_tree(pt.count(), false);
  for (int v = 0; v < nv; ++v) {
    if (t.parent[v] < 0) continue;
    auto [x1, y1] = g.coords(v);
    auto [x2, y2] = g.coords(t.parent[v]);
    int piece;
    if (y1 == y2)
      piece = pt.id_of(PieceKind::hedge, std::min(x1, x2), y1);
    else
      piece = pt.id_of(PieceKind::vedge, x1, std::min(y1, y2));
    t.parent_edge[v] = piece;
    in_tree[piece] = true;
  }
  for (int id = 0; id < pt.count(); ++id) {
    if (pt.piece(id).kind != PieceKind::hedge && pt.piece(id).kind != PieceKind::vedge) continue;
    if (in_tree[id])
      t.tree_edges.push_back(id);
    else
      t.deleted_edges.push_back(id);
  }
  return t;
}

}  // namespace

SpanningTree build_tree(const GridGraph& g) { return build_tree_variant(g, TreeKind::serpentine); }

SpanningTree build_tree_variant(const GridGraph& g, TreeKind kind) {
  if (g.p < g.q)
    throw std::domain_error(
        "build_tree: expects p >= q; transpose the grid (swap p and q) and retry");
  int nv = g.vertex_count();
  std::vector<int> order;
  std::vector<int> parent(nv, -1);
  switch (kind) {
    case TreeKind::serpentine: {
      // Boustrophedon path over rows, rooted at (1, 1).
      for (int y = 1; y <= g.q; ++y) {
        if (y % 2 == 1)
          for (int x = 1; x <= g.p; ++x) order.push_back(g.vid(x, y));
        else
          for (int x = g.p; x >= 1; --x) order.push_back(g.vid(x, y));
      }
      for (int pos = 1; pos < nv; ++pos) parent[order[pos]] = order[pos - 1];
      break;
    }
    case TreeKind::comb_rows: {
      // Spine along row y = 1 plus every vertical edge; DFS climbs columns.
      for (int x = 1; x <= g.p; ++x)
        for (int y = 1; y <= g.q; ++y) order.push_back(g.vid(x, y));
      for (int x = 1; x <= g.p; ++x)
        for (int y = 1; y <= g.q; ++y) {
          if (y > 1)
            parent[g.vid(x, y)] = g.vid(x, y - 1);
          else if (x > 1)
            parent[g.vid(x, y)] = g.vid(x - 1, 1);
        }
      break;
    }
    case TreeKind::comb_cols: {
      // Spine along column x = 1 plus every horizontal edge; DFS walks rows.
      for (int y = 1; y <= g.q; ++y)
        for (int x = 1; x <= g.p; ++x) order.push_back(g.vid(x, y));
      for (int y = 1; y <= g.q; ++y)
        for (int x = 1; x <= g.p; ++x) {
          if (x > 1)
            parent[g.vid(x, y)] = g.vid(x - 1, y);
          else if (y > 1)
            parent[g.vid(x, y)] = g.vid(1, y - 1);
        }
      break;
    }
  }
  return finish_tree(g, kind, std::move(order), std::move(parent));
}

GradientField gradient_field(const CubeComplex& c, const SpanningTree& t) {
  if (c.p != t.p || c.q != t.q)
    throw std::domain_error("gradient_field: complex and tree come from different grids");
  int pq = c.p * c.q;
  if (c.n != pq - 2 && c.n != pq - 1)
    throw std::domain_error("gradient_field: supported token counts are pq-2 and pq-1");

  const PieceTable& pt = c.pieces;
  std::vector<bool> is_tree(pt.count(), false);
  for (int e : t.tree_edges) is_tree[e] = true;
  // For tree edges: the sliding endpoint (child) and the junction (parent).
  std::vector<int> iota(pt.count(), -1), tau(pt.count(), -1);
  for (int e : t.tree_edges) {
    int a = pt.closure(e)[0], b = pt.closure(e)[1];
    if (t.parent[a] == b) {
      iota[e] = a;
      tau[e] = b;
    } else if (t.parent[b] == a) {
      iota[e] = b;
      tau[e] = a;
    } else {
      throw std::logic_error("gradient_field: tree edge does not join child to parent");
    }
  }

  int top = c.top_dim();
  GradientField f;
  f.up.resize(top + 1);
  f.down.resize(top + 1);
  f.critical.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    f.up[k].assign(c.cells[k].size(), -1);
    f.down[k].assign(c.cells[k].size(), -1);
  }

  std::vector<int> tokens, edges;
  for (int k = 0; k <= top; ++k) {
    for (size_t idx = 0; idx < c.cells[k].size(); ++idx) {
      const CellKey& key = c.cells[k][idx];
      BitMask mask = 0;
      tokens.clear();
      edges.clear();
      for (int id : key) {
        mask |= pt.closure_mask(id);
        if (pt.dim(id) == 0)
          tokens.push_back(pt.grid().vid(pt.piece(id).x, pt.piece(id).y));
        else
          edges.push_back(id);
      }

      // Smallest movable thing wins: an unblocked token slides up its tree
      // edge; an order-respecting tree edge collapses onto its child.
      int best_key = -1;
      int best_token = -1, best_edge = -1;
      for (int v : tokens) {
        if (v == t.root) continue;
        if (mask >> t.parent[v] & 1) continue;  // junction occupied
        int ord = t.order_of[v];
        if (best_key < 0 || ord < best_key) {
          best_key = ord;
          best_token = v;
          best_edge = -1;
        }
      }
      for (int e : edges) {
        if (!is_tree[e]) continue;
        bool respecting = true;
        for (int w : tokens) {
          if (t.parent[w] == tau[e] && t.order_of[w] < t.order_of[iota[e]]) {
            respecting = false;
            break;
          }
        }
        if (!respecting) continue;
        int ord = t.order_of[iota[e]];
        if (best_key < 0 || ord < best_key) {
          best_key = ord;
          best_token = -1;
          best_edge = e;
        }
      }

      if (best_token >= 0) {
        CellKey up = key;
        int vp = pt.vertex_piece(best_token);
        up.erase(std::find(up.begin(), up.end(), vp));
        int ep = t.parent_edge[best_token];
        up.insert(std::upper_bound(up.begin(), up.end(), ep), ep);
        int j = c.cell_index(k + 1, up);
        if (j < 0) throw std::logic_error("gradient_field: up partner is not a cell");
        f.up[k][idx] = j;
      } else if (best_edge >= 0) {
        CellKey dn = key;
        dn.erase(std::find(dn.begin(), dn.end(), best_edge));
        int vp = pt.vertex_piece(iota[best_edge]);
        dn.insert(std::upper_bound(dn.begin(), dn.end(), vp), vp);
        int j = c.cell_index(k - 1, dn);
        if (j < 0) throw std::logic_error("gradient_field: down partner is not a cell");
        f.down[k][idx] = j;
      } else {
        f.critical[k].push_back(static_cast<int>(idx));
      }
    }
  }

  // Validity: the matching must be a bijective pairing along actual faces.
  for (int k = 0; k <= top; ++k) {
    for (size_t idx = 0; idx < c.cells[k].size(); ++idx) {
      int upj = f.up[k][idx];
      if (upj >= 0) {
        if (f.down[k + 1][upj] != static_cast<int>(idx))
          throw std::logic_error("gradient_field: matching is not involutive");
        bool found = false;
        for (auto& [fi, s] : c.faces[k + 1][upj])
          if (fi == static_cast<int>(idx)) found = true;
        if (!found) throw std::logic_error("gradient_field: matched pair is not incident");
      }
      int dnj = f.down[k][idx];
      if (dnj >= 0 && f.up[k - 1][dnj] != static_cast<int>(idx))
        throw std::logic_error("gradient_field: matching is not involutive");
      if (upj >= 0 && dnj >= 0)
        throw std::logic_error("gradient_field: cell matched twice");
    }
  }

  // Acyclicity: no closed V-path. Walk the directed graph on up-matched
  // k-cells where sigma -> sigma' when sigma' is another face of V(sigma).
  for (int k = 1; k <= top; ++k) {
    int m = static_cast<int>(c.cells[k - 1].size());
    std::vector<int> color(m, 0);  // 0 white, 1 on stack, 2 done
    std::vector<std::pair<int, size_t>> stack;
    for (int s0 = 0; s0 < m; ++s0) {
      if (color[s0] != 0 || f.up[k - 1][s0] < 0) continue;
      stack.push_back({s0, 0});
      color[s0] = 1;
      while (!stack.empty()) {
        auto [s, ei] = stack.back();
        const auto& fl = c.faces[k][f.up[k - 1][s]];
        int next = -1;
        while (ei < fl.size()) {
          int cand = fl[ei].first;
          ++ei;
          if (cand == s || f.up[k - 1][cand] < 0) continue;
          if (color[cand] == 1) throw std::logic_error("gradient_field: closed V-path");
          if (color[cand] == 0) {
            next = cand;
            break;
          }
        }
        stack.back().second = ei;
        if (next >= 0) {
          color[next] = 1;
          stack.push_back({next, 0});
        } else {
          color[s] = 2;
          stack.pop_back();
        }
      }
    }
  }
  f.acyclic = true;
  return f;
}

std::vector<long long> predict_critical(int p, int q) {
  if (p < q || q < 3)
    throw std::domain_error("predict_critical: need p >= q >= 3");
  long long D = static_cast<long long>(p - 1) * (q - 1);
  long long c1 = 3 * D - 2;
  long long c2 = D * (D - 1) / 2 - static_cast<long long>(p - 2) * (q - 2);
  auto [b1, b2] = predict_betti(p, q);
  if (1 - c1 + c2 != 1 - b1 + b2)
    throw std::logic_error("predict_critical: Euler consistency with Betti numbers failed");
  return {1, c1, c2};
}

HomologySummary morse_homology(const GradientField& f, const CubeComplex& c) {
  int top = c.top_dim();
  std::vector<long long> dims(top + 1);
  std::vector<std::unordered_map<int, int>> crit_pos(top + 1);
  for (int k = 0; k <= top; ++k) {
    dims[k] = static_cast<long long>(f.critical[k].size());
    for (size_t i = 0; i < f.critical[k].size(); ++i)
      crit_pos[k][f.critical[k][i]] = static_cast<int>(i);
  }

  std::vector<IntegerMatrix> bnd;
  for (int k = 1; k <= top; ++k) {
    // flow[idx]: where the (k-1)-cell idx drains among critical (k-1)-cells.
    std::unordered_map<int, std::map<int, Int>> memo;
    auto flow = [&](auto&& self, int idx) -> const std::map<int, Int>& {
      auto it = memo.find(idx);
      if (it != memo.end()) return it->second;
      std::map<int, Int> out;
      auto cp = crit_pos[k - 1].find(idx);
      if (cp != crit_pos[k - 1].end()) {
        out[cp->second] = 1;
      } else if (f.up[k - 1][idx] >= 0) {
        int tcell = f.up[k - 1][idx];
        int s0 = 0;
        for (auto& [fi, s] : c.faces[k][tcell])
          if (fi == idx) s0 = s;
        for (auto& [fi, s] : c.faces[k][tcell]) {
          if (fi == idx) continue;
          const auto& sub = self(self, fi);
          for (auto& [pos, coef] : sub) {
            Int add = Int(-s0 * s) * coef;
            auto [slot, inserted] = out.emplace(pos, add);
            if (!inserted) {
              slot->second += add;
              if (slot->second == 0) out.erase(slot);
            }
          }
        }
      }
      return memo.emplace(idx, std::move(out)).first->second;
    };

    IntegerMatrix m(static_cast<int>(dims[k - 1]), static_cast<int>(dims[k]));
    for (size_t col = 0; col < f.critical[k].size(); ++col) {
      int cell = f.critical[k][col];
      for (auto& [fi, s] : c.faces[k][cell]) {
        for (auto& [pos, coef] : flow(flow, fi)) m.add(pos, static_cast<int>(col), Int(s) * coef);
      }
    }
    bnd.push_back(std::move(m));
  }
  return chain_homology(dims, bnd);
}

}  // namespace squarebraid
