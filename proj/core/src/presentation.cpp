#include "squarebraid/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace squarebraid {

bool Presentation::has_generator(const GenSym& g) const {
  return std::find(generators.begin(), generators.end(), g) != generators.end();
}

void Presentation::validate() const {
  std::set<GenSym> gens(generators.begin(), generators.end());
  if (gens.size() != generators.size())
    throw std::logic_error("Presentation: duplicate generator");
  for (const Relator& r : relators) {
    if (r.word.empty()) throw std::logic_error("Presentation: empty relator");
    for (const Letter& l : r.word.letters())
      if (!gens.count(l.sym))
        throw std::logic_error("Presentation: relator uses unlisted generator " + l.sym.str());
  }
}

std::map<std::string, long long> Presentation::family_counts() const {
  std::map<std::string, long long> out;
  for (const Relator& r : relators) out[r.family]++;
  return out;
}

Presentation raw_presentation(int p, int q) {
  if (p < q || q < 3)
    throw std::domain_error("raw_presentation: need p >= q >= 3, got p=" + std::to_string(p) +
                            " q=" + std::to_string(q));
  Presentation pr;
  pr.stage = "raw";
  auto a = [](int l, int i) { return Word::one(GenSym::make(Tag::a, l, i)); };
  auto b = [](int l, int i) { return Word::one(GenSym::make(Tag::b, l, i)); };
  auto cg = [](int l, int i) { return Word::one(GenSym::make(Tag::c, l, i)); };

  for (Tag t : {Tag::a, Tag::b, Tag::c})
    for (int l = 1; l <= q - 1; ++l)
      for (int i = 1; i <= p - 1; ++i) pr.generators.push_back(GenSym::make(t, l, i));

  auto push = [&](Word w, const std::string& fam, std::vector<int> idx) {
    pr.relators.push_back({cyclic_strip(w), fam, std::move(idx)});
  };

  // Two trivial generators.
  push(a(1, 1), "unit", {1, 1});
  push(cg(q - 1, 1), "unit", {q - 1, 1});
  // Conjugation within one band: b_{l,i} a_{l,j} b_{l,i}^-1 c_{l,j}^-1.
  for (int l = 1; l <= q - 1; ++l)
    for (int i = 1; i <= p - 1; ++i)
      for (int j = i + 1; j <= p - 1; ++j)
        push(b(l, i) * a(l, j) * b(l, i).inverse() * cg(l, j).inverse(), "band_slide", {l, i, j});
  // Slide across adjacent bands: c_{l,i} a_{l+1,j} b_{l,i}^-1 b_{l+1,j}^-1.
  for (int l = 1; l <= q - 2; ++l)
    for (int i = 1; i <= p - 1; ++i)
      for (int j = 1; j <= p - i; ++j)
        push(cg(l, i) * a(l + 1, j) * b(l, i).inverse() * b(l + 1, j).inverse(), "cross_slide",
             {l, i, j});
  // Distant pieces commute: adjacent bands, far columns.
  for (int l = 1; l <= q - 2; ++l)
    for (int i = 3; i <= p - 1; ++i)
      for (int j = 3; j <= p - 1; ++j)
        if (i + j >= p + 2)
          push(commutator(cg(l, i), a(l + 1, j)), "far_adjacent", {l, i, j});
  // Distant pieces commute: bands at distance >= 2.
  for (int l = 1; l + 1 <= q - 2; ++l)
    for (int lam = l + 2; lam <= q - 1; ++lam)
      for (int i = 1; i <= p - 1; ++i)
        for (int j = 1; j <= p - 1; ++j)
          push(commutator(cg(l, i), a(lam, j)), "far_distant", {l, lam, i, j});

  pr.validate();
  return pr;
}

AbelianInvariants abelianization(const Presentation& pr) {
  std::map<GenSym, int> col;
  for (size_t g = 0; g < pr.generators.size(); ++g)
    col[pr.generators[g]] = static_cast<int>(g);
  IntegerMatrix m(static_cast<int>(pr.relators.size()), static_cast<int>(pr.generators.size()));
  for (size_t r = 0; r < pr.relators.size(); ++r)
    for (const Letter& l : pr.relators[r].word.letters())
      m.add(static_cast<int>(r), col.at(l.sym), l.exp);
  SmithResult s = smith_normal_form(m);
  AbelianInvariants ab;
  ab.rank = static_cast<long long>(pr.generators.size()) - s.rank;
  for (auto& d : s.diagonal)
    if (d > 1) ab.torsion.push_back(d);
  return ab;
}

std::string render_presentation(const Presentation& pr) {
  std::string out = "gens:";
  for (const GenSym& g : pr.generators) out += " " + g.str();
  out += "\n";
  for (const Relator& r : pr.relators) {
    out += "rel:";
    for (const Letter& l : r.word.letters()) {
      out += " " + l.sym.str();
      if (l.exp < 0) out += "^-1";
    }
    out += "\n";
  }
  return out;
}

namespace {

Letter parse_token(const std::string& tok, int line, int col) {
  std::string_view sv(tok);
  int exp = 1;
  if (auto cut = sv.find('^'); cut != std::string_view::npos) {
    std::string_view suffix = sv.substr(cut);
    if (suffix != "^-1")
      throw ParseError(line, col, "unsupported exponent '" + std::string(suffix) +
                                      "' (only ^-1 is part of the format)");
    exp = -1;
    sv = sv.substr(0, cut);
  }
  auto g = GenSym::parse(sv);
  if (!g) throw ParseError(line, col, "bad generator token '" + tok + "'");
  return Letter{*g, exp};
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Presentation pr;
  std::istringstream in(text);
  std::string linebuf;
  int lineno = 0;
  bool saw_gens = false;
  while (std::getline(in, linebuf)) {
    ++lineno;
    if (linebuf.empty()) continue;
    std::istringstream ls(linebuf);
    std::string head;
    ls >> head;
    int col = static_cast<int>(ls.tellg());
    if (head == "gens:") {
      if (saw_gens) throw ParseError(lineno, 1, "duplicate gens: line");
      saw_gens = true;
      std::string tok;
      while (ls >> tok) {
        auto g = GenSym::parse(tok);
        if (!g) throw ParseError(lineno, col, "bad generator name '" + tok + "'");
        pr.generators.push_back(*g);
        col = static_cast<int>(ls.tellg());
      }
    } else if (head == "rel:") {
      if (!saw_gens) throw ParseError(lineno, 1, "rel: before gens:");
      std::vector<Letter> letters;
      std::string tok;
      while (ls >> tok) {
        letters.push_back(parse_token(tok, lineno, col));
        col = static_cast<int>(ls.tellg());
      }
      if (letters.empty()) throw ParseError(lineno, 1, "empty relator line");
      pr.relators.push_back({Word(std::move(letters)), "", {}});
    } else {
      throw ParseError(lineno, 1, "expected 'gens:' or 'rel:', got '" + head + "'");
    }
  }
  if (!saw_gens) throw ParseError(1, 1, "missing gens: line");
  pr.validate();
  return pr;
}

}  // namespace squarebraid
