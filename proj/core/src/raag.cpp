#include "squarebraid/raag.hpp"

#include <algorithm>
#include <stdexcept>

namespace squarebraid {

RaagGraph RaagGraph::of(std::vector<GenSym> verts,
                        const std::vector<std::pair<GenSym, GenSym>>& edge_list) {
  RaagGraph g;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  g.vertices = std::move(verts);
  for (auto& [a, b] : edge_list) {
    int ia = g.index_of(a), ib = g.index_of(b);
    if (ia < 0 || ib < 0) throw std::invalid_argument("RaagGraph: edge endpoint not a vertex");
    if (ia == ib) throw std::invalid_argument("RaagGraph: loop edge on " + a.str());
    if (ia > ib) std::swap(ia, ib);
    g.edges.insert({ia, ib});
  }
  return g;
}

int RaagGraph::index_of(const GenSym& g) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), g);
  if (it == vertices.end() || !(*it == g)) return -1;
  return static_cast<int>(it - vertices.begin());
}

bool RaagGraph::has_edge(const GenSym& a, const GenSym& b) const {
  int ia = index_of(a), ib = index_of(b);
  if (ia < 0 || ib < 0) return false;
  return adjacent(ia, ib);
}

std::string RaagGraph::edge_list_text() const {
  std::string out;
  for (auto& [a, b] : edges) out += vertices[a].str() + " " + vertices[b].str() + "\n";
  return out;
}

bool graphs_isomorphic(const RaagGraph& a, const RaagGraph& b) {
  size_t n = a.vertices.size();
  if (n != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<int> deg_a(n, 0), deg_b(n, 0);
  for (auto& [x, y] : a.edges) {
    deg_a[x]++;
    deg_a[y]++;
  }
  for (auto& [x, y] : b.edges) {
    deg_b[x]++;
    deg_b[y]++;
  }
  {
    auto da = deg_a, db = deg_b;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
  }
  std::vector<int> map(n, -1), used(n, 0);
  auto rec = [&](auto&& self, size_t v) -> bool {
    if (v == n) return true;
    for (size_t t = 0; t < n; ++t) {
      if (used[t] || deg_a[v] != deg_b[t]) continue;
      bool ok = true;
      for (size_t u = 0; u < v && ok; ++u)
        if (a.adjacent(static_cast<int>(v), static_cast<int>(u)) !=
            b.adjacent(static_cast<int>(t), map[u]))
          ok = false;
      if (!ok) continue;
      map[v] = static_cast<int>(t);
      used[t] = 1;
      if (self(self, v + 1)) return true;
      used[t] = 0;
      map[v] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

namespace {

struct IdxLetter {
  int v;
  int exp;
};

}  // namespace

Word raag_normal_form(const RaagGraph& g, const Word& w) {
  std::vector<IdxLetter> reduced;
  for (const Letter& l : w.letters()) {
    int v = g.index_of(l.sym);
    if (v < 0) throw std::domain_error("raag_normal_form: unknown symbol " + l.sym.str());
    // Scan backwards: cancel against the nearest same-vertex letter if every
    // letter in between commutes with it; same-vertex letters block.
    bool consumed = false;
    for (int k = static_cast<int>(reduced.size()) - 1; k >= 0; --k) {
      if (reduced[k].v == v) {
        if (reduced[k].exp == -l.exp) {
          bool clear = true;
          for (size_t m = k + 1; m < reduced.size(); ++m)
            if (!g.adjacent(reduced[m].v, v)) {
              clear = false;
              break;
            }
          if (clear) {
            reduced.erase(reduced.begin() + k);
            consumed = true;
          }
        }
        break;
      }
      if (!g.adjacent(reduced[k].v, v)) break;
    }
    if (!consumed) reduced.push_back({v, l.exp});
  }

  // Lex-least linearization of the dependence order: repeatedly emit the
  // smallest letter whose predecessors are all emitted.
  size_t n = reduced.size();
  std::vector<char> emitted(n, 0);
  std::vector<Letter> out;
  out.reserve(n);
  auto key = [&](size_t i) {
    return std::make_pair(g.vertices[reduced[i].v], reduced[i].exp < 0);
  };
  for (size_t step = 0; step < n; ++step) {
    int best = -1;
    for (size_t i = 0; i < n; ++i) {
      if (emitted[i]) continue;
      bool minimal = true;
      for (size_t j = 0; j < i && minimal; ++j)
        if (!emitted[j] && (reduced[j].v == reduced[i].v || !g.adjacent(reduced[j].v, reduced[i].v)))
          minimal = false;
      if (!minimal) continue;
      if (best < 0 || key(i) < key(best)) best = static_cast<int>(i);
    }
    if (best < 0) throw std::logic_error("raag_normal_form: no minimal letter");
    emitted[best] = 1;
    out.push_back({g.vertices[reduced[best].v], reduced[best].exp});
  }
  return Word(std::move(out));
}

bool special_membership(const RaagGraph& g, const std::vector<GenSym>& sub, const Word& w) {
  Word nf = raag_normal_form(g, w);
  for (const Letter& l : nf.letters())
    if (std::find(sub.begin(), sub.end(), l.sym) == sub.end()) return false;
  return true;
}

}  // namespace squarebraid
