#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace squarebraid {

// Generator families. Single letters follow the presentation text format:
// a_2_3, B_1_2, u_1, w, V, x_3, xp_3 (p marks a primed vertex name).
enum class Tag : uint8_t { a, b, c, A, B, C, D, u, v, w, V, x, xp, y, yp, plain };

struct GenSym {
  Tag tag = Tag::plain;
  int arity = 0;
  int i = 0, j = 0;
  std::string name;  // tag == plain only

  static GenSym make(Tag t) { return GenSym{t, 0, 0, 0, {}}; }
  static GenSym make(Tag t, int i) { return GenSym{t, 1, i, 0, {}}; }
  static GenSym make(Tag t, int i, int j) { return GenSym{t, 2, i, j, {}}; }
  static GenSym plain(std::string n) { return GenSym{Tag::plain, 0, 0, 0, std::move(n)}; }

  std::string str() const;
  static std::optional<GenSym> parse(std::string_view s);

  friend auto operator<=>(const GenSym& l, const GenSym& r) = default;
};

struct Letter {
  GenSym sym;
  int exp = 1;  // +1 or -1

  Letter inverse() const { return {sym, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  // Positive letters order before negative ones of the same symbol.
  friend auto operator<=>(const Letter& l, const Letter& r) {
    if (auto c = l.sym <=> r.sym; c != 0) return c;
    return (l.exp < 0) <=> (r.exp < 0);
  }
};

// A word over signed generators. Construction does not reduce; use
// free_reduce / cyclic_strip / cyclic_canonical explicitly.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> ls) : ls_(std::move(ls)) {}
  static Word one(const GenSym& g, int exp = 1) { return Word({Letter{g, exp}}); }

  const std::vector<Letter>& letters() const& { return ls_; }
  std::vector<Letter>& letters() & { return ls_; }
  std::vector<Letter> letters() && { return std::move(ls_); }
  size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }

  Word inverse() const;
  Word& operator*=(const Word& o);
  friend Word operator*(Word a, const Word& b) {
    a *= b;
    return a;
  }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(a.ls_.begin(), a.ls_.end(), b.ls_.begin(),
                                                  b.ls_.end());
  }

  std::string str() const;  // space-separated tokens, "" for the empty word

 private:
  std::vector<Letter> ls_;
};

Word commutator(const Word& a, const Word& b);
Word conjugate(const Word& by, const Word& w);  // by * w * by^-1

// Cancels adjacent inverse pairs until none remain.
Word free_reduce(const Word& w);

// Freely reduces, then strips cancelling first/last letters; keeps the
// surviving rotation as produced.
Word cyclic_strip(const Word& w);

// Canonical representative of the relator class: lexicographically least
// among all rotations of the stripped word and of its inverse.
Word cyclic_canonical(const Word& w);

// Looks for nonempty words (u, v) with some rotation of w equal to
// u v u^-1 v^-1, scanning all rotations and split positions.
std::optional<std::pair<Word, Word>> commutator_witness(const Word& w);

inline bool is_commutator_shaped(const Word& w) { return commutator_witness(w).has_value(); }

}  // namespace squarebraid
