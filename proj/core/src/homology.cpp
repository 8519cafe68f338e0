#include "squarebraid/homology.hpp"

#include <stdexcept>
#include <string>

namespace squarebraid {

HomologySummary chain_homology(const std::vector<long long>& dims,
                               const std::vector<IntegerMatrix>& boundaries) {
  size_t top = dims.size();
  HomologySummary h;
  std::vector<int> rank(top + 1, 0);
  std::vector<std::vector<Int>> tors(top + 1);
  for (size_t k = 0; k < boundaries.size(); ++k) {
    SmithResult s = smith_normal_form(boundaries[k]);
    rank[k + 1] = s.rank;
    for (auto& d : s.diagonal)
      if (d > 1) tors[k + 1].push_back(d);
  }
  h.betti.resize(top);
  h.torsion.resize(top);
  int sign = 1;
  for (size_t k = 0; k < top; ++k) {
    h.betti[k] = dims[k] - rank[k] - (k + 1 <= top ? rank[k + 1] : 0);
    h.torsion[k] = tors[k + 1 <= top ? k + 1 : 0];
    h.euler += sign * dims[k];
    sign = -sign;
  }
  h.hdim_observed = 0;
  for (size_t k = 0; k < top; ++k)
    if (h.betti[k] != 0 || !h.torsion[k].empty()) h.hdim_observed = static_cast<int>(k);
  return h;
}

HomologySummary homology(const CubeComplex& c) {
  std::vector<long long> dims = c.f_vector();
  std::vector<IntegerMatrix> bnd;
  for (int k = 1; k <= c.top_dim(); ++k) bnd.push_back(boundary_matrix(c, k));
  return chain_homology(dims, bnd);
}

std::pair<long long, long long> predict_betti(int p, int q) {
  if (p < q || q < 3)
    throw std::domain_error("predict_betti: need p >= q >= 3, got p=" + std::to_string(p) +
                            " q=" + std::to_string(q));
  long long P = p, Q = q;
  long long beta1 = (P - 1) * (Q - 1) + 1;
  long long num_a = (P * P + 1) * (Q * Q + 1) - P * Q * (2 * P + 2 * Q + 3) + 7 * (P + Q - 1);
  long long num_b = P * P * Q * Q + P * P + Q * Q - 2 * P * Q * Q - 2 * P * P * Q - 3 * P * Q +
                    7 * P + 7 * Q - 6;
  if (num_a != num_b || num_a % 2 != 0)
    throw std::logic_error("predict_betti: the two polynomial forms disagree");
  return {beta1, num_a / 2};
}

int predict_hdim(int p, int q) {
  if (p < q || q < 3)
    throw std::domain_error("predict_hdim: need p >= q >= 3");
  return (p == 3 && q == 3) ? 1 : 2;
}

}  // namespace squarebraid
