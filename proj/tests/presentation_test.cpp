#include <doctest.h>

#include "squarebraid/presentation.hpp"

using namespace squarebraid;

namespace {

// Independent counting loops over the printed index ranges.
long long count_band_slide(int p, int q) {
  long long n = 0;
  for (int l = 1; l <= q - 1; ++l)
    for (int i = 1; i <= p - 1; ++i)
      for (int j = i + 1; j <= p - 1; ++j) ++n;
  return n;
}
long long count_cross_slide(int p, int q) {
  long long n = 0;
  for (int l = 1; l <= q - 2; ++l)
    for (int i = 1; i <= p - 1; ++i)
      for (int j = 1; j <= p - i; ++j) ++n;
  return n;
}
long long count_far_adjacent(int p, int q) {
  long long n = 0;
  for (int l = 1; l <= q - 2; ++l)
    for (int i = 3; i <= p - 1; ++i)
      for (int j = 3; j <= p - 1; ++j)
        if (i + j >= p + 2) ++n;
  return n;
}
long long count_far_distant(int p, int q) {
  long long n = 0;
  for (int l = 1; l + 1 < q - 1; ++l)
    for (int lam = l + 2; lam <= q - 1; ++lam) n += (p - 1LL) * (p - 1);
  return n;
}

}  // namespace

TEST_CASE("raw presentation sizes") {
  Presentation pr43 = raw_presentation(4, 3);
  CHECK(pr43.generators.size() == 18);
  CHECK(pr43.relators.size() == 15);
  auto fam43 = pr43.family_counts();
  CHECK(fam43["unit"] == 2);
  CHECK(fam43["band_slide"] == 6);
  CHECK(fam43["cross_slide"] == 6);
  CHECK(fam43["far_adjacent"] == 1);
  CHECK(fam43.count("far_distant") == 0);

  Presentation pr33 = raw_presentation(3, 3);
  CHECK(pr33.generators.size() == 12);
  CHECK(pr33.family_counts()["band_slide"] == 2);

  Presentation pr54 = raw_presentation(5, 4);
  CHECK(pr54.generators.size() == 36);
  CHECK(pr54.family_counts()["far_distant"] == 16);
}

TEST_CASE("raw family counts match closed forms and counting loops") {
  for (int q = 3; q <= 6; ++q)
    for (int p = q; p <= 7; ++p) {
      Presentation pr = raw_presentation(p, q);
      auto fam = pr.family_counts();
      long long P = p, Q = q;
      CHECK(fam["band_slide"] == (Q - 1) * (P - 1) * (P - 2) / 2);
      CHECK(fam["band_slide"] == count_band_slide(p, q));
      CHECK(fam["cross_slide"] == (Q - 2) * P * (P - 1) / 2);
      CHECK(fam["cross_slide"] == count_cross_slide(p, q));
      long long fa = (Q - 2) * (P - 3) * (P - 2) / 2;
      CHECK((fam.count("far_adjacent") ? fam["far_adjacent"] : 0) == fa);
      CHECK(fa == count_far_adjacent(p, q));
      long long fd = (Q - 2) * (Q - 3) / 2 * (P - 1) * (P - 1);
      CHECK((fam.count("far_distant") ? fam["far_distant"] : 0) == fd);
      CHECK(fd == count_far_distant(p, q));
    }
}

TEST_CASE("abelianization") {
  AbelianInvariants raw33 = abelianization(raw_presentation(3, 3));
  CHECK(raw33.rank == 5);
  CHECK(raw33.torsion.empty());

  Presentation torsion;
  torsion.generators = {GenSym::plain("a")};
  torsion.relators = {{Word::one(GenSym::plain("a")) * Word::one(GenSym::plain("a")), "", {}}};
  AbelianInvariants ab = abelianization(torsion);
  CHECK(ab.rank == 0);
  CHECK(ab.torsion == std::vector<Int>{2});
}

TEST_CASE("text format round-trips") {
  Presentation one;
  one.generators = {GenSym::plain("a")};
  one.relators = {{Word::one(GenSym::plain("a")), "", {}}};
  Presentation back = parse_presentation(render_presentation(one));
  CHECK(back.generators == one.generators);
  REQUIRE(back.relators.size() == 1);
  CHECK(back.relators[0].word == one.relators[0].word);

  Presentation pr = raw_presentation(4, 3);
  Presentation rt = parse_presentation(render_presentation(pr));
  CHECK(rt.generators == pr.generators);
  REQUIRE(rt.relators.size() == pr.relators.size());
  for (size_t k = 0; k < pr.relators.size(); ++k)
    CHECK(rt.relators[k].word == pr.relators[k].word);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: a^2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rel: a\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: b\n"), std::logic_error);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel:\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("nonsense\n"), ParseError);
  try {
    parse_presentation("gens: a\nrel: a^2\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}
