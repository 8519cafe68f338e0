#include <doctest.h>

#include <set>

#include "squarebraid/homology.hpp"
#include "squarebraid/tietze.hpp"

using namespace squarebraid;

namespace {

GenSym A(int l, int i) { return GenSym::make(Tag::A, l, i); }
GenSym a(int l, int i) { return GenSym::make(Tag::a, l, i); }
GenSym b(int l, int i) { return GenSym::make(Tag::b, l, i); }
GenSym u(int l) { return GenSym::make(Tag::u, l); }
GenSym v(int l) { return GenSym::make(Tag::v, l); }
Word L(const GenSym& g, int e = 1) { return Word::one(g, e); }

}  // namespace

TEST_CASE("eliminating a generator from a two-generator presentation") {
  Presentation pr;
  pr.generators = {GenSym::plain("gx"), GenSym::plain("gy")};
  pr.relators = {{free_reduce(L(GenSym::plain("gy")) * L(GenSym::plain("gx"), -1)), "", {}}};
  TietzeEngine eng(pr);
  eng.eliminate_generator(GenSym::plain("gy"), 0);
  CHECK(eng.current().generators == std::vector<GenSym>{GenSym::plain("gx")});
  CHECK(eng.current().relators.empty());
}

TEST_CASE("elimination refuses unsuitable relators") {
  Presentation pr;
  GenSym gx = GenSym::plain("gx"), gy = GenSym::plain("gy");
  pr.generators = {gx, gy};
  pr.relators = {{L(gy) * L(gx) * L(gy) * L(gx), "", {}}, {L(gx) * L(gx), "", {}}};
  TietzeEngine eng(pr);
  CHECK_THROWS_AS(eng.eliminate_generator(gy, 0), std::invalid_argument);  // two occurrences
  CHECK_THROWS_AS(eng.eliminate_generator(gy, 1), std::invalid_argument);  // absent
}

TEST_CASE("first elimination round turns conjugations into commutators") {
  PipelineResult pipe = run_pipeline(4, 3);
  // After the c's are gone, the band relator {l=1, i=2, j=3} must be the
  // commutator of a_{1,3} with b_{1,1}^-1 b_{1,2}, as a cyclic relator.
  const Presentation& s1 = pipe.s1;
  bool found = false;
  for (const Relator& r : s1.relators) {
    if (r.family == "band_slide" && r.idx == std::vector<int>{1, 2, 3}) {
      found = true;
      Word expect = commutator(L(a(1, 3)), L(b(1, 1), -1) * L(b(1, 2)));
      CHECK(cyclic_canonical(r.word) == cyclic_canonical(expect));
    }
  }
  CHECK(found);
}

TEST_CASE("stage snapshots carry the expected generator sets") {
  PipelineResult pipe = run_pipeline(4, 4);
  CHECK(pipe.raw.generators.size() == 27);
  CHECK(pipe.s1.generators.size() == 18);  // c's eliminated
  CHECK(pipe.s2.generators.size() == 12);  // only a's and the b_{l,1}
  auto [b1, b2] = predict_betti(4, 4);
  CHECK(static_cast<long long>(pipe.fin.generators.size()) == b1);
  CHECK(static_cast<long long>(pipe.fin.relators.size()) == b2);
}

TEST_CASE("ladder relators become the printed commutator after the last round") {
  PipelineResult pipe = run_pipeline(5, 4);
  // Surviving ladder relator {l=2, i>=3} must be the commutator of
  // v_2 u_1 with A_{2,i}^-1 A_{2,2}, up to the stripped conjugation.
  for (const Relator& r : pipe.fin.relators) {
    if (r.family != "ladder") continue;
    int i = r.idx[1];
    CHECK(i >= 3);
    Word expect = L(A(2, i)) * L(v(2)) * L(u(1)) * L(A(2, i), -1) * L(A(2, 2)) * L(u(1), -1) *
                  L(v(2), -1) * L(A(2, 2), -1);
    CHECK(cyclic_canonical(r.word) == cyclic_canonical(expect));
  }
  CHECK(final_census(pipe.fin)["ladder"] == expected_census(5, 4)["ladder"]);
}

TEST_CASE("census against the closed forms") {
  {
    auto got = final_census(run_pipeline(5, 3).fin);
    std::map<std::string, long long> want{{"first_band_pairs", 3},
                                          {"band_pairs", 3},
                                          {"first_band_cross", 3},
                                          {"first_band_far", 3}};
    CHECK(got == want);
    long long total = 0;
    for (auto& [k, n] : got) total += n;
    CHECK(total == predict_betti(5, 3).second);
  }
  {
    auto got = final_census(run_pipeline(5, 4).fin);
    CHECK(got == expected_census(5, 4));
    CHECK(got["loop_gen_far"] == 3);
    long long total = 0;
    for (auto& [k, n] : got) total += n;
    CHECK(total == 39);
  }
  {
    long long total = 0;
    for (auto& [k, n] : final_census(run_pipeline(4, 3).fin)) total += n;
    CHECK(total == 4);
  }
  // The census formulas must sum to beta2 across the supported range.
  for (int q = 3; q <= 6; ++q)
    for (int p = q; p <= 8; ++p) {
      long long total = 0;
      for (auto& [k, n] : expected_census(p, q)) total += n;
      CHECK(total == predict_betti(p, q).second);
    }
}

TEST_CASE("pipeline end states for q = 3") {
  PipelineResult p33 = run_pipeline(3, 3);
  CHECK(p33.fin.generators.size() == 5);
  CHECK(p33.fin.relators.empty());

  for (int p = 4; p <= 8; ++p) {
    PipelineResult pipe = run_pipeline(p, 3);
    CHECK(static_cast<long long>(pipe.fin.generators.size()) == 2LL * p - 1);
    CHECK(static_cast<long long>(pipe.fin.relators.size()) == 2LL * (p - 3) * (p - 2));
    for (const Relator& r : pipe.fin.relators) CHECK(is_commutator_shaped(r.word));
  }
}

TEST_CASE("abelianization is invariant across stages") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{4, 3}, {4, 4}, {5, 4}}) {
    PipelineResult pipe = run_pipeline(p, q);
    AbelianInvariants want{predict_betti(p, q).first, {}};
    for (const Presentation* pr : {&pipe.raw, &pipe.s1, &pipe.s2, &pipe.s3, &pipe.fin})
      CHECK(abelianization(*pr) == want);
  }
}

TEST_CASE("move logs replay deterministically") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{4, 3}, {4, 4}}) {
    PipelineResult pipe = run_pipeline(p, q);
    std::string log = serialize_log(p, q, pipe.log);
    ReplayResult r = replay_log(log);
    CHECK(r.moves == static_cast<int>(pipe.log.size()));
    CHECK(presentation_hash(r.fin) == presentation_hash(pipe.fin));
    CHECK(render_presentation(r.fin) == render_presentation(pipe.fin));
  }
}

TEST_CASE("tampered logs are rejected") {
  PipelineResult pipe = run_pipeline(4, 3);
  std::string log = serialize_log(4, 3, pipe.log);
  // Flip a hash digit.
  auto pos = log.find("hash ");
  REQUIRE(pos != std::string::npos);
  log[pos + 5] = log[pos + 5] == '0' ? '1' : '0';
  CHECK_THROWS(replay_log(log));
}

TEST_CASE("reorganized q=3 presentation") {
  ReorganizeResult r5 = reorganize_q3(5);
  CHECK(r5.abcd.generators.size() == 9);  // u, v, w and the six A generators
  CHECK(r5.abcd.relators.size() == 12);
  for (const Relator& rel : r5.abcd.relators) CHECK(is_commutator_shaped(rel.word));

  // alpha(p-3) collapses to a single generator; beta(p-3) and delta(p-3)
  // are the special boundary words.
  CHECK(alpha_word(5, 2) == Word::one(A(2, 2)));
  CHECK(beta_word(5, 2) ==
        Word::one(GenSym::make(Tag::w), -1) * Word::one(A(1, 2)) * Word::one(GenSym::make(Tag::v)));
  CHECK(delta_word(5, 2) ==
        Word::one(GenSym::make(Tag::v)) * Word::one(A(2, 4)) * Word::one(GenSym::make(Tag::u)));
  CHECK(gamma_word(5, 2) == Word::one(A(1, 4), -1));

  AbelianInvariants want{9, {}};
  CHECK(abelianization(r5.abcd) == want);
  CHECK(abelianization(r5.simplified) == want);

  CHECK_THROWS_AS(reorganize_q3(3), std::domain_error);

  ReorganizeResult r4 = reorganize_q3(4);
  CHECK(r4.abcd.generators.size() == 7);
  CHECK(r4.abcd.relators.size() == 4);
}

TEST_CASE("final relators of (4,3) are the printed four") {
  PipelineResult pipe = run_pipeline(4, 3);
  auto canon = [](const Word& w) { return cyclic_canonical(w); };
  std::multiset<std::string> got;
  for (const Relator& r : pipe.fin.relators) got.insert(canon(r.word).str());

  Word w18 = commutator(L(A(1, 3)), L(u(1), -1) * L(u(2), -1) * L(u(1)) * L(A(1, 2)) * L(v(1)));
  Word w19 = commutator(L(u(1)) * L(v(1)) * L(A(2, 3)), L(u(1)) * L(A(2, 2)) * L(u(1), -1));
  Word w21 = commutator(L(u(1), -1) * L(u(2), -1) * L(u(1)) * L(A(1, 2)) * L(v(1)), L(A(2, 2)));
  Word w23 = commutator(L(A(1, 3)), L(v(1)) * L(A(2, 3)) * L(u(1)));
  std::multiset<std::string> want{canon(w18).str(), canon(w19).str(), canon(w21).str(),
                                  canon(w23).str()};
  CHECK(got == want);
}

TEST_CASE("stage 3 keeps the full ladder before the last round") {
  PipelineResult pipe = run_pipeline(5, 4);
  auto s3 = pipe.s3.family_counts();
  CHECK(s3["ladder"] == 3);        // (p-2)(q-3) rungs before elimination
  CHECK(s3["ladder_cross"] == 3);  // already the commutator count
  auto fin = pipe.fin.family_counts();
  CHECK(fin["ladder"] == 2);  // one rung consumed per eliminated generator
}

TEST_CASE("ladder-cross relators end as conjugation-by-generator commutators") {
  PipelineResult pipe = run_pipeline(5, 4);
  for (const Relator& r : pipe.fin.relators) {
    if (r.family != "ladder_cross") continue;
    int l = r.idx[0], i = r.idx[1], j = r.idx[2];
    Word U = L(u(l - 1)) * L(A(l, i), -1) * L(u(l - 1), -1);
    CHECK(cyclic_canonical(r.word) == cyclic_canonical(commutator(L(A(l + 1, j)), U)));
  }
}

TEST_CASE("the renamed q=3 output is the four printed families") {
  int p = 5;
  ReorganizeResult r = reorganize_q3(p);
  GenSym uu = GenSym::make(Tag::u), vv = GenSym::make(Tag::v), ww = GenSym::make(Tag::w);
  std::multiset<std::string> got, want;
  for (const Relator& rel : r.simplified.relators)
    got.insert(cyclic_canonical(rel.word).str());
  for (int i = 2; i <= p - 1; ++i)
    for (int j = i + 1; j <= p - 1; ++j) {
      want.insert(cyclic_canonical(commutator(L(ww, -1) * L(A(1, i)) * L(vv), L(A(1, j)))).str());
      want.insert(cyclic_canonical(commutator(L(vv) * L(A(2, j)) * L(uu), L(A(2, i)))).str());
    }
  for (int i = 2; i <= p - 2; ++i)
    for (int j = 2; j <= p - i; ++j)
      want.insert(cyclic_canonical(commutator(L(ww, -1) * L(A(1, i)) * L(vv), L(A(2, j)))).str());
  for (int i = 3; i <= p - 1; ++i)
    for (int j = 3; j <= p - 1; ++j)
      if (i + j >= p + 2)
        want.insert(cyclic_canonical(commutator(L(vv) * L(A(2, j)) * L(uu), L(A(1, i)))).str());
  CHECK(got == want);
}

TEST_CASE("telescoping identities of the boundary words hold freely") {
  for (int p : {5, 6, 8, 10}) {
    GenSym uu = GenSym::make(Tag::u), vv = GenSym::make(Tag::v), ww = GenSym::make(Tag::w);
    for (int i = 1; i <= p - 3; ++i) {
      Word prod;
      for (int t = i; t <= p - 3; ++t) prod *= alpha_word(p, t);
      CHECK(free_reduce(prod * L(A(2, p - i - 1), -1)).empty());
      Word gprod;
      for (int t = p - 3; t >= i; --t) gprod *= gamma_word(p, t).inverse();
      CHECK(free_reduce(gprod * L(A(1, i + 2), -1)).empty());
    }
    Word a_all;
    for (int t = 1; t <= p - 3; ++t) a_all *= alpha_word(p, t);
    CHECK(free_reduce(L(vv, -1) * delta_word(p, p - 4) * L(vv) * a_all * L(A(2, p - 1), -1))
              .empty());
    Word g_all;
    for (int t = p - 3; t >= 1; --t) g_all *= gamma_word(p, t).inverse();
    CHECK(free_reduce(g_all * L(vv) * beta_word(p, p - 4).inverse() * L(vv, -1) *
                      L(A(1, 2), -1))
              .empty());
    CHECK(free_reduce(a_all.inverse() * L(vv, -1) * delta_word(p, p - 4).inverse() *
                      delta_word(p, p - 3) * L(uu, -1))
              .empty());
    CHECK(free_reduce(g_all * L(vv) * beta_word(p, p - 4).inverse() *
                      beta_word(p, p - 3).inverse() * L(ww, -1))
              .empty());
  }
}
