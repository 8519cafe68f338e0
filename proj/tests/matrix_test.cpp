#include <doctest.h>

#include <numeric>
#include <random>

#include "squarebraid/complex.hpp"
#include "squarebraid/grid.hpp"
#include "squarebraid/matrix.hpp"

using namespace squarebraid;

namespace {

// Oracle: rank over the rationals by exact fraction elimination (mpq),
// independent of the integer Smith path.
int rational_rank(const IntegerMatrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols(), 0));
  for (int r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) a[r][c] = mpq_class(v);
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[rank][c];
      for (int cc = c; cc < m.cols(); ++cc) a[r][cc] -= f * a[rank][cc];
    }
    ++rank;
  }
  return rank;
}

IntegerMatrix permuted(const IntegerMatrix& m, std::mt19937& rng) {
  std::vector<int> pr(m.rows()), pc(m.cols());
  std::iota(pr.begin(), pr.end(), 0);
  std::iota(pc.begin(), pc.end(), 0);
  std::shuffle(pr.begin(), pr.end(), rng);
  std::shuffle(pc.begin(), pc.end(), rng);
  IntegerMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) out.set(pr[r], pc[c], v);
  return out;
}

}  // namespace

TEST_CASE("smith normal form basics") {
  SmithResult id3 = smith_normal_form(IntegerMatrix::identity(3));
  CHECK(id3.rank == 3);
  CHECK(id3.diagonal == std::vector<Int>{1, 1, 1});

  IntegerMatrix six(1, 1);
  six.set(0, 0, 6);
  SmithResult s = smith_normal_form(six);
  CHECK(s.rank == 1);
  CHECK(s.diagonal == std::vector<Int>{6});

  SmithResult empty = smith_normal_form(IntegerMatrix(0, 0));
  CHECK(empty.rank == 0);
  CHECK(empty.diagonal.empty());

  // Torsion fixture: relations 2x = 0, 6y = 0 in different bases.
  IntegerMatrix t(2, 2);
  t.set(0, 0, 2);
  t.set(0, 1, 4);
  t.set(1, 0, 4);
  t.set(1, 1, 2);
  SmithResult st = smith_normal_form(t);
  CHECK(st.diagonal == std::vector<Int>{2, 6});
}

TEST_CASE("divisibility chain holds") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> val(-12, 12);
  for (int trial = 0; trial < 50; ++trial) {
    IntegerMatrix m(5, 4);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 4; ++c) m.set(r, c, val(rng));
    SmithResult s = smith_normal_form(m);
    for (size_t k = 1; k < s.diagonal.size(); ++k)
      CHECK(mpz_divisible_p(s.diagonal[k].get_mpz_t(), s.diagonal[k - 1].get_mpz_t()));
    CHECK(s.rank == rational_rank(m));
  }
}

TEST_CASE("boundary ranks against the rational oracle") {
  CubeComplex c8 = enumerate_cells(build_grid(3, 3), 8);
  IntegerMatrix d1 = boundary_matrix(c8, 1);
  SmithResult s = smith_normal_form(d1);
  CHECK(s.rank == 8);
  CHECK(rational_rank(d1) == 8);

  CubeComplex c10 = enumerate_cells(build_grid(4, 3), 10);
  IntegerMatrix d2 = boundary_matrix(c10, 2);
  CHECK(smith_normal_form(d2).rank == rational_rank(d2));
}

TEST_CASE("smith form is invariant under row and column permutation") {
  std::mt19937 rng(7);
  std::vector<IntegerMatrix> fixtures;
  fixtures.push_back(boundary_matrix(enumerate_cells(build_grid(3, 3), 8), 1));
  {
    IntegerMatrix t(3, 3);
    t.set(0, 0, 2);
    t.set(1, 1, 6);
    t.set(2, 0, 4);
    t.set(2, 2, 12);
    fixtures.push_back(t);
  }
  for (const IntegerMatrix& m : fixtures) {
    SmithResult want = smith_normal_form(m);
    for (int trial = 0; trial < 100; ++trial) {
      SmithResult got = smith_normal_form(permuted(m, rng));
      CHECK(got.diagonal == want.diagonal);
    }
  }
}
