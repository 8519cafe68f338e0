#pragma once

#include <map>
#include <string>
#include <vector>

#include "squarebraid/presentation.hpp"
#include "squarebraid/raag.hpp"

namespace squarebraid {

// The meta-square graph on vertices x_i, xp_i, yp_i, y_i (1 <= i <= p-3):
// four edges per pair with i+j > p-3, two more per pair with i+j < p-5,
// plus the induced subgraphs X, Y and the defining bijection between them.
struct SGraphBundle {
  int p = 0;
  RaagGraph S;
  std::vector<GenSym> X, Y;

  GenSym phi(const GenSym& g) const;
  GenSym phi_inv(const GenSym& g) const;
  bool phi_is_graph_iso() const;
};

SGraphBundle build_meta_square(int p);  // throws std::domain_error when p < 5

struct HnnGroup {
  RaagGraph base;
  GenSym stable;
  std::vector<GenSym> domain, codomain;
  std::map<GenSym, GenSym> phi, phi_inv;
};

// The braid group of 3p-2 tokens on the p x 3 grid, realized as the HNN
// extension of the meta-square RAAG. Throws std::domain_error when p < 5.
HnnGroup build_Hp(int p);

// Repeatedly removes pinches t u t^-1 (u in the domain subgroup, image
// phi(u)) and t^-1 u t (u in the codomain subgroup, image phi^-1(u)),
// normalizing the base segments. The result carries no pinch; the input is
// trivial iff the output is stable-letter-free with empty normal form.
Word britton_reduce(const HnnGroup& h, const Word& w);
bool hnn_trivial(const HnnGroup& h, const Word& w);

// Generator dictionaries between the group presented on V, A(i), B(i),
// C(i), D(i) and its base RAAG on x/xp/yp/y.
Word hword_to_base(int p, const Word& w);

// theta: words over the q=3 presentation generators u, v, w, A_{1,*},
// A_{2,*} for each V/A/B/C/D generator.
Word theta_word(int p, const GenSym& hgen);
// Theta: words over V/A/B/C/D for each q=3 presentation generator.
Word Theta_word(int p, const GenSym& gen);
Word Theta_apply(int p, const Word& w);

// The finite presentation on V, A(i), B(i), C(i), D(i): the i+j > p-3
// commutations plus the stable-letter conjugation relations.
Presentation hp_presentation(int p);

struct HnnVerdicts {
  bool theta_well_defined = false;
  bool relations_I_VIII = false;
  bool section = false;
  bool lemma_vii_viii = false;
  bool abelianization = false;
  bool phi_graph_iso = false;
  std::string note;
  bool pass() const {
    return theta_well_defined && relations_I_VIII && section && lemma_vii_viii && abelianization &&
           phi_graph_iso;
  }
};

// Machine-checks the isomorphism data for the HNN description: every
// reorganized relator dies under Theta, the bookkeeping relations hold, the
// section property Theta(theta(g)) = g holds, the conjugation identities
// hold, abelianizations agree, and phi is a graph isomorphism.
HnnVerdicts verify_theorem(int p);  // p >= 5

struct SmallIdentification {
  int p = 0;
  std::string kind;  // "free" or "raag"
  long long free_rank = 0;
  RaagGraph graph;
  bool certified = false;
  std::string detail;
};

// p = 3: free of rank 5. p = 4: the square plus three isolated vertices.
// p = 5: the p = 5 meta-square plus one isolated vertex.
SmallIdentification identify_small(int p);

}  // namespace squarebraid
