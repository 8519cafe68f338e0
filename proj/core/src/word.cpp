#include "squarebraid/word.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace squarebraid {

namespace {

constexpr std::array<const char*, 15> kTagNames = {"a", "b", "c", "A", "B", "C", "D", "u",
                                                   "v", "w", "V", "x", "xp", "y", "yp"};

}  // namespace

std::string GenSym::str() const {
  if (tag == Tag::plain) return name;
  std::string s = kTagNames[static_cast<int>(tag)];
  if (arity >= 1) s += "_" + std::to_string(i);
  if (arity >= 2) s += "_" + std::to_string(j);
  return s;
}

std::optional<GenSym> GenSym::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  size_t head_end = s.find('_');
  std::string_view head = s.substr(0, head_end);
  std::vector<int> idx;
  if (head_end != std::string_view::npos) {
    std::string_view rest = s.substr(head_end + 1);
    while (!rest.empty()) {
      size_t cut = rest.find('_');
      std::string_view part = rest.substr(0, cut);
      int value = 0;
      auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (ec != std::errc{} || p != part.data() + part.size()) {
        idx.clear();
        head = s;  // not of the tag_i_j shape; treat the whole token as plain
        break;
      }
      idx.push_back(value);
      if (cut == std::string_view::npos) break;
      rest = rest.substr(cut + 1);
    }
  }
  // Family tags are only recognized at the index counts they are used
  // with; anything else is a plain name.
  auto arity_fits = [](Tag t, size_t n) {
    switch (t) {
      case Tag::a:
      case Tag::b:
      case Tag::c:
        return n == 2;
      case Tag::A:
      case Tag::B:
        return n == 1 || n == 2;
      case Tag::C:
      case Tag::D:
      case Tag::x:
      case Tag::xp:
      case Tag::y:
      case Tag::yp:
        return n == 1;
      case Tag::u:
      case Tag::v:
        return n == 0 || n == 1;
      case Tag::w:
      case Tag::V:
        return n == 0;
      default:
        return false;
    }
  };
  for (int t = 0; t < static_cast<int>(kTagNames.size()); ++t) {
    if (head == kTagNames[t] && idx.size() <= 2 && arity_fits(static_cast<Tag>(t), idx.size())) {
      GenSym g;
      g.tag = static_cast<Tag>(t);
      g.arity = static_cast<int>(idx.size());
      g.i = idx.size() > 0 ? idx[0] : 0;
      g.j = idx.size() > 1 ? idx[1] : 0;
      return g;
    }
  }
  // Anything else is a plain name; it must not contain whitespace or '^'.
  for (char ch : s)
    if (ch == ' ' || ch == '\t' || ch == '^') return std::nullopt;
  return GenSym::plain(std::string(s));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(ls_.size());
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word& Word::operator*=(const Word& o) {
  ls_.insert(ls_.end(), o.ls_.begin(), o.ls_.end());
  return *this;
}

std::string Word::str() const {
  std::string s;
  for (const Letter& l : ls_) {
    if (!s.empty()) s += ' ';
    s += l.sym.str();
    if (l.exp < 0) s += "^-1";
  }
  return s;
}

Word commutator(const Word& a, const Word& b) {
  return free_reduce(a * b * a.inverse() * b.inverse());
}

Word conjugate(const Word& by, const Word& w) { return free_reduce(by * w * by.inverse()); }

Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (!out.empty() && out.back().sym == l.sym && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word cyclic_strip(const Word& w) {
  Word r = free_reduce(w);
  auto& ls = r.letters();
  size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo].sym == ls[hi - 1].sym && ls[lo].exp == -ls[hi - 1].exp) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi));
}

namespace {

Word rotation(const Word& w, size_t by) {
  const auto& ls = w.letters();
  std::vector<Letter> out;
  out.reserve(ls.size());
  for (size_t k = 0; k < ls.size(); ++k) out.push_back(ls[(k + by) % ls.size()]);
  return Word(std::move(out));
}

}  // namespace

Word cyclic_canonical(const Word& w) {
  Word core = cyclic_strip(w);
  if (core.empty()) return core;
  Word best = core;
  Word inv = core.inverse();
  for (size_t r = 0; r < core.size(); ++r) {
    Word a = rotation(core, r);
    if (a < best) best = a;
    Word b = rotation(inv, r);
    if (b < best) best = b;
  }
  return best;
}

std::optional<std::pair<Word, Word>> commutator_witness(const Word& w) {
  // A cyclically reduced word is a commutator exactly when some rotation of
  // it reads a b c a^-1 b^-1 c^-1 with literal (possibly empty) segments.
  Word core = cyclic_strip(w);
  size_t n = core.size();
  if (n == 0 || n % 2 != 0) return std::nullopt;
  size_t h = n / 2;

  std::vector<Letter> d;
  d.reserve(2 * n);
  for (int rep = 0; rep < 2; ++rep)
    for (const Letter& l : core.letters()) d.push_back(l);

  // match[c][b]: how far d[c..] agrees with the inverse of d[..b) read
  // backwards.
  size_t m = 2 * n;
  std::vector<std::vector<int>> match(m, std::vector<int>(m + 1, 0));
  for (size_t c = m; c-- > 0;)
    for (size_t b = 1; b <= m; ++b) {
      if (d[c] == d[b - 1].inverse())
        match[c][b] = 1 + ((c + 1 < m && b >= 2) ? match[c + 1][b - 1] : 0);
    }

  auto seg = [&](size_t lo, size_t hi) {
    return Word(std::vector<Letter>(d.begin() + lo, d.begin() + hi));
  };

  for (size_t r = 0; r < n; ++r) {
    for (size_t la = 0; la <= h; ++la) {
      if (la > 0 && static_cast<size_t>(match[r + h][r + la]) < la) continue;
      for (size_t lb = 0; lb + la <= h; ++lb) {
        size_t lc = h - la - lb;
        if (lb > 0 && static_cast<size_t>(match[r + h + la][r + la + lb]) < lb) continue;
        if (lc > 0 && static_cast<size_t>(match[r + h + la + lb][r + h]) < lc) continue;
        Word a = seg(r, r + la);
        Word b = seg(r + la, r + la + lb);
        Word c = seg(r + la + lb, r + h);
        Word u, v;
        if (lc == 0) {
          u = a;
          v = b;
        } else if (la == 0) {
          u = b;
          v = c;
        } else if (lb == 0) {
          u = a;
          v = c;
        } else {
          u = a * b;
          v = c * a.inverse();
        }
        if (u.empty() || v.empty()) continue;
        return std::make_pair(u, v);
      }
    }
  }
  return std::nullopt;
}

}  // namespace squarebraid
