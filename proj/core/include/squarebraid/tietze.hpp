#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "squarebraid/presentation.hpp"

namespace squarebraid {

// One elementary move. Every move is checked at the free-group level before
// it is committed, so a replayed log certifies the whole derivation.
struct TietzeMove {
  enum class Kind { add_gen, elim_gen, replace, drop };
  enum class Just { rotation, inversion, conjugation, free_equal, relator_product };

  struct Mult {
    int rel = -1;
    int exp = 1;
    Word conj;
  };

  Kind kind;
  GenSym sym;        // add_gen / elim_gen
  Word defining;     // add_gen: sym := defining; elim_gen: solved word
  int rel_index = -1;
  Word new_word;     // replace
  Just just = Just::free_equal;
  Word conjugator;               // conjugation justification
  std::vector<Mult> product;     // relator_product justification
  std::vector<int> dropped;      // relators that reduced to empty (elim_gen)
  uint64_t hash_before = 0;
  uint64_t hash_after = 0;
};

uint64_t presentation_hash(const Presentation& pr);

class TietzeEngine {
 public:
  explicit TietzeEngine(Presentation start);

  const Presentation& current() const { return pr_; }
  const std::vector<TietzeMove>& log() const { return log_; }
  Presentation snapshot(const std::string& stage) const;

  void add_generator(const GenSym& g, const Word& defining);
  // Solves relator rel_index for g (which must occur exactly once there),
  // substitutes everywhere, drops the relator and any relator that reduces
  // to the empty word. Refuses with a diagnostic otherwise.
  void eliminate_generator(const GenSym& g, int rel_index);
  // add_generator(neo := word) followed by eliminating old; word must
  // mention old exactly once.
  void change_basis(const GenSym& neo, const Word& word, const GenSym& old);
  void replace_relator(int idx, const Word& new_word, TietzeMove::Just just,
                       const Word& conjugator = Word(),
                       const std::vector<TietzeMove::Mult>& product = {});
  void drop_relator(int idx);

  int find_relator(const std::string& family, const std::vector<int>& idx) const;
  void set_family(int idx, std::string family, std::vector<int> fidx);

  // Finds (k, e) with target freely equal to k * stored^e * k^-1; the two
  // words must be equal as cyclic relators. Throws std::logic_error if not.
  static std::pair<Word, int> conj_between(const Word& stored, const Word& target);

 private:
  void substitute_everywhere(const GenSym& g, const Word& rep, int skip_index,
                             std::vector<int>& dropped);
  Presentation pr_;
  std::vector<TietzeMove> log_;
};

struct PipelineResult {
  Presentation raw, s1, s2, s3, fin;
  std::vector<TietzeMove> log;
  const Presentation& stage(const std::string& name) const;
};

// The scripted reduction from the raw presentation to the minimal
// commutator presentation: eliminate the c generators, pass to the
// difference basis, pass to u/v/A coordinates, rewrite the ladder-cross
// family as commutators, then recursively eliminate the upper u generators.
// Throws std::domain_error unless p >= q >= 3.
PipelineResult run_pipeline(int p, int q);

// Counts of final relators per family, and the closed forms they must equal.
std::map<std::string, long long> final_census(const Presentation& fin);
std::map<std::string, long long> expected_census(int p, int q);

// alpha/beta/gamma/delta word constructors on the q = 3 generator set
// u, v, w, A_{1,*}, A_{2,*} (with A_{2,1} and A_{1,p} substituted away).
Word alpha_word(int p, int i);
Word beta_word(int p, int i);
Word gamma_word(int p, int i);
Word delta_word(int p, int i);

struct ReorganizeResult {
  Presentation simplified;  // final presentation in u, v, w coordinates
  Presentation abcd;        // the four commutation families of the words above
};

// q = 3 reorganization. Throws std::domain_error unless p >= 4.
ReorganizeResult reorganize_q3(int p);

std::string serialize_log(int p, int q, const std::vector<TietzeMove>& log);

struct ReplayResult {
  Presentation fin;
  int moves = 0;
};
// Rebuilds the raw presentation named in the log header, re-applies every
// move (re-verifying each) and checks the recorded hashes.
ReplayResult replay_log(const std::string& text);

}  // namespace squarebraid
