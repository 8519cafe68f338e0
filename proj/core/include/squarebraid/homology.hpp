#pragma once

#include <vector>

#include "squarebraid/complex.hpp"
#include "squarebraid/matrix.hpp"

namespace squarebraid {

struct HomologySummary {
  std::vector<long long> betti;
  std::vector<std::vector<Int>> torsion;  // invariant factors > 1, per degree
  long long euler = 0;
  int hdim_observed = 0;  // largest k with betti[k] != 0 or torsion in degree k

  bool torsion_free() const {
    for (auto& t : torsion)
      if (!t.empty()) return false;
    return true;
  }
  bool operator==(const HomologySummary& o) const {
    return betti == o.betti && torsion == o.torsion && euler == o.euler &&
           hdim_observed == o.hdim_observed;
  }
};

// Homology of an explicit chain complex: dims[k] generators in degree k,
// boundaries[k] maps degree k+1 to degree k (so boundaries.size()+1 == dims.size(),
// or boundaries is empty for a complex concentrated in degree 0).
HomologySummary chain_homology(const std::vector<long long>& dims,
                               const std::vector<IntegerMatrix>& boundaries);

HomologySummary homology(const CubeComplex& c);

// Closed-form first and second Betti numbers of the configuration space of
// pq-2 hard squares. Throws std::domain_error unless p >= q >= 3. Both
// printed forms of the beta2 polynomial are evaluated and must agree.
std::pair<long long, long long> predict_betti(int p, int q);

// 1 when p == q == 3, else 2. Throws std::domain_error unless p >= q >= 3.
int predict_hdim(int p, int q);

}  // namespace squarebraid
