#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "squarebraid/matrix.hpp"
#include "squarebraid/word.hpp"

namespace squarebraid {

// A relator plus the family it came from. Words are stored freely and
// cyclically reduced; equality of relators is equality of cyclic canonical
// forms up to inversion.
struct Relator {
  Word word;
  std::string family;
  std::vector<int> idx;
};

struct Presentation {
  std::string stage;  // raw | s1 | s2 | s3 | final | abcd | Hp
  std::vector<GenSym> generators;
  std::vector<Relator> relators;

  bool has_generator(const GenSym& g) const;
  // Throws std::logic_error if a relator mentions an unlisted generator or
  // is empty.
  void validate() const;
  std::map<std::string, long long> family_counts() const;
};

// Raw presentation of the square-section braid group on pq-2 tokens:
// generators a_{l,i}, b_{l,i}, c_{l,i} for 1 <= l <= q-1, 1 <= i <= p-1,
// with the five relator families over their printed index ranges.
// Throws std::domain_error unless p >= q >= 3.
Presentation raw_presentation(int p, int q);

struct AbelianInvariants {
  long long rank = 0;
  std::vector<Int> torsion;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

// Smith form of the relator exponent-sum matrix.
AbelianInvariants abelianization(const Presentation& pr);

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
};

// Plain-text format: first line "gens: g1 g2 ...", then one "rel: t1 t2 ..."
// line per relator, tokens being "name" or "name^-1".
std::string render_presentation(const Presentation& pr);
Presentation parse_presentation(const std::string& text);

}  // namespace squarebraid
