#include "squarebraid/tietze.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "squarebraid/homology.hpp"

namespace squarebraid {

namespace {

GenSym sym_a(int l, int i) { return GenSym::make(Tag::a, l, i); }
GenSym sym_b(int l, int i) { return GenSym::make(Tag::b, l, i); }
GenSym sym_c(int l, int i) { return GenSym::make(Tag::c, l, i); }
GenSym sym_B(int l, int i) { return GenSym::make(Tag::B, l, i); }
GenSym sym_A(int l, int i) { return GenSym::make(Tag::A, l, i); }
GenSym sym_u(int l) { return GenSym::make(Tag::u, l); }
GenSym sym_v(int l) { return GenSym::make(Tag::v, l); }

Word W(const GenSym& g, int e = 1) { return Word::one(g, e); }

uint64_t fnv64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

uint64_t presentation_hash(const Presentation& pr) { return fnv64(render_presentation(pr)); }

TietzeEngine::TietzeEngine(Presentation start) : pr_(std::move(start)) { pr_.validate(); }

Presentation TietzeEngine::snapshot(const std::string& stage) const {
  Presentation copy = pr_;
  copy.stage = stage;
  return copy;
}

int TietzeEngine::find_relator(const std::string& family, const std::vector<int>& idx) const {
  for (size_t k = 0; k < pr_.relators.size(); ++k)
    if (pr_.relators[k].family == family && pr_.relators[k].idx == idx)
      return static_cast<int>(k);
  return -1;
}

void TietzeEngine::set_family(int idx, std::string family, std::vector<int> fidx) {
  pr_.relators.at(idx).family = std::move(family);
  pr_.relators.at(idx).idx = std::move(fidx);
}

void TietzeEngine::add_generator(const GenSym& g, const Word& defining) {
  if (pr_.has_generator(g))
    throw std::invalid_argument("add_generator: symbol already present: " + g.str());
  for (const Letter& l : defining.letters())
    if (!pr_.has_generator(l.sym))
      throw std::invalid_argument("add_generator: defining word uses unknown generator " +
                                  l.sym.str());
  TietzeMove mv;
  mv.kind = TietzeMove::Kind::add_gen;
  mv.sym = g;
  mv.defining = defining;
  mv.hash_before = presentation_hash(pr_);
  pr_.generators.push_back(g);
  pr_.relators.push_back({free_reduce(W(g) * defining.inverse()), "basis", {}});
  mv.rel_index = static_cast<int>(pr_.relators.size()) - 1;
  mv.hash_after = presentation_hash(pr_);
  log_.push_back(std::move(mv));
}

void TietzeEngine::substitute_everywhere(const GenSym& g, const Word& rep, int skip_index,
                                         std::vector<int>& dropped) {
  Word rep_inv = rep.inverse();
  for (size_t k = 0; k < pr_.relators.size(); ++k) {
    if (static_cast<int>(k) == skip_index) continue;
    Word& w = pr_.relators[k].word;
    bool touched = false;
    std::vector<Letter> out;
    for (const Letter& l : w.letters()) {
      if (l.sym == g) {
        const Word& r = (l.exp > 0) ? rep : rep_inv;
        out.insert(out.end(), r.letters().begin(), r.letters().end());
        touched = true;
      } else {
        out.push_back(l);
      }
    }
    if (!touched) continue;
    w = cyclic_strip(Word(std::move(out)));
    if (w.empty()) dropped.push_back(static_cast<int>(k));
  }
}

void TietzeEngine::eliminate_generator(const GenSym& g, int rel_index) {
  if (rel_index < 0 || rel_index >= static_cast<int>(pr_.relators.size()))
    throw std::invalid_argument("eliminate_generator: no relator at index " +
                                std::to_string(rel_index));
  const Word& w = pr_.relators[rel_index].word;
  int count = 0, pos = -1;
  for (size_t k = 0; k < w.size(); ++k)
    if (w.letters()[k].sym == g) {
      ++count;
      pos = static_cast<int>(k);
    }
  if (count != 1)
    throw std::invalid_argument("eliminate_generator: " + g.str() + " occurs " +
                                std::to_string(count) + " times in relator '" + w.str() +
                                "', need exactly one");

  // Rotate the cyclic word so g^e leads, then solve.
  std::vector<Letter> rot;
  for (size_t k = 0; k < w.size(); ++k) rot.push_back(w.letters()[(pos + k) % w.size()]);
  Word rest(std::vector<Letter>(rot.begin() + 1, rot.end()));
  Word defining = (rot[0].exp > 0) ? rest.inverse() : rest;

  TietzeMove mv;
  mv.kind = TietzeMove::Kind::elim_gen;
  mv.sym = g;
  mv.defining = defining;
  mv.rel_index = rel_index;
  mv.hash_before = presentation_hash(pr_);

  substitute_everywhere(g, defining, rel_index, mv.dropped);
  std::vector<int> remove = mv.dropped;
  remove.push_back(rel_index);
  std::sort(remove.begin(), remove.end(), std::greater<int>());
  for (int k : remove) pr_.relators.erase(pr_.relators.begin() + k);
  pr_.generators.erase(std::find(pr_.generators.begin(), pr_.generators.end(), g));

  mv.hash_after = presentation_hash(pr_);
  log_.push_back(std::move(mv));
}

void TietzeEngine::change_basis(const GenSym& neo, const Word& word, const GenSym& old) {
  int occ = 0;
  for (const Letter& l : word.letters())
    if (l.sym == old) ++occ;
  if (occ != 1)
    throw std::invalid_argument("change_basis: word must mention " + old.str() +
                                " exactly once, found " + std::to_string(occ));
  add_generator(neo, word);
  eliminate_generator(old, static_cast<int>(pr_.relators.size()) - 1);
}

void TietzeEngine::replace_relator(int idx, const Word& new_word, TietzeMove::Just just,
                                   const Word& conjugator,
                                   const std::vector<TietzeMove::Mult>& product) {
  if (idx < 0 || idx >= static_cast<int>(pr_.relators.size()))
    throw std::invalid_argument("replace_relator: bad index");
  const Word& old = pr_.relators[idx].word;
  Word target = free_reduce(new_word);
  bool ok = false;
  switch (just) {
    case TietzeMove::Just::free_equal:
      ok = (target == free_reduce(old));
      break;
    case TietzeMove::Just::rotation: {
      for (size_t r = 0; r < old.size() && !ok; ++r) {
        std::vector<Letter> rot;
        for (size_t k = 0; k < old.size(); ++k) rot.push_back(old.letters()[(r + k) % old.size()]);
        ok = (Word(rot) == target);
      }
      if (old.empty()) ok = target.empty();
      break;
    }
    case TietzeMove::Just::inversion:
      ok = (target == free_reduce(old.inverse()));
      break;
    case TietzeMove::Just::conjugation:
      ok = (target == free_reduce(conjugator * old * conjugator.inverse()));
      break;
    case TietzeMove::Just::relator_product: {
      int uses_self = 0;
      Word prod;
      for (const auto& m : product) {
        if (m.rel < 0 || m.rel >= static_cast<int>(pr_.relators.size()))
          throw std::invalid_argument("replace_relator: product references bad relator");
        if (m.exp != 1 && m.exp != -1)
          throw std::invalid_argument("replace_relator: product exponents must be +-1");
        if (m.rel == idx) ++uses_self;
        Word base = pr_.relators[m.rel].word;
        if (m.exp < 0) base = base.inverse();
        prod *= m.conj * base * m.conj.inverse();
      }
      if (uses_self != 1)
        throw std::invalid_argument(
            "replace_relator: product must use the replaced relator exactly once");
      ok = (free_reduce(prod) == target);
      break;
    }
  }
  if (!ok)
    throw std::invalid_argument("replace_relator: verification failed for relator " +
                                std::to_string(idx));

  TietzeMove mv;
  mv.kind = TietzeMove::Kind::replace;
  mv.rel_index = idx;
  mv.new_word = target;
  mv.just = just;
  mv.conjugator = conjugator;
  mv.product = product;
  mv.hash_before = presentation_hash(pr_);
  pr_.relators[idx].word = cyclic_strip(target);
  if (pr_.relators[idx].word.empty())
    throw std::invalid_argument("replace_relator: replacement reduces to the empty word");
  mv.hash_after = presentation_hash(pr_);
  log_.push_back(std::move(mv));
}

void TietzeEngine::drop_relator(int idx) {
  if (idx < 0 || idx >= static_cast<int>(pr_.relators.size()))
    throw std::invalid_argument("drop_relator: bad index");
  if (!free_reduce(pr_.relators[idx].word).empty())
    throw std::invalid_argument("drop_relator: relator is not trivial");
  TietzeMove mv;
  mv.kind = TietzeMove::Kind::drop;
  mv.rel_index = idx;
  mv.hash_before = presentation_hash(pr_);
  pr_.relators.erase(pr_.relators.begin() + idx);
  mv.hash_after = presentation_hash(pr_);
  log_.push_back(std::move(mv));
}

std::pair<Word, int> TietzeEngine::conj_between(const Word& stored, const Word& target) {
  // stored = cs * core_s * cs^-1 and likewise for target.
  auto split = [](const Word& w) {
    Word r = free_reduce(w);
    const auto& ls = r.letters();
    size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo].sym == ls[hi - 1].sym && ls[lo].exp == -ls[hi - 1].exp) {
      ++lo;
      --hi;
    }
    Word prefix(std::vector<Letter>(ls.begin(), ls.begin() + lo));
    Word core(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi));
    return std::make_pair(prefix, core);
  };
  auto [cs, core_s] = split(stored);
  auto [ct, core_t] = split(target);
  if (core_s.size() == core_t.size()) {
    for (int e : {1, -1}) {
      Word base = (e > 0) ? core_s : core_s.inverse();
      size_t n = base.size();
      for (size_t r = 0; r < std::max<size_t>(n, 1); ++r) {
        std::vector<Letter> rot;
        for (size_t k = 0; k < n; ++k) rot.push_back(base.letters()[(r + k) % n]);
        if (Word(rot) == core_t) {
          Word pre(std::vector<Letter>(base.letters().begin(), base.letters().begin() + r));
          Word k = free_reduce(ct * pre.inverse() * cs.inverse());
          return {k, e};
        }
        if (n == 0) break;
      }
    }
  }
  throw std::logic_error("conj_between: words are not cyclically equal");
}

const Presentation& PipelineResult::stage(const std::string& name) const {
  if (name == "raw") return raw;
  if (name == "s1") return s1;
  if (name == "s2") return s2;
  if (name == "s3") return s3;
  if (name == "final") return fin;
  throw std::invalid_argument("unknown pipeline stage: " + name);
}

namespace {

// After the coordinate change, relators are grouped into the families whose
// counts the census checks. The grouping is read off the raw provenance.
void retag_stage3(TietzeEngine& eng) {
  const Presentation& pr = eng.current();
  for (size_t k = 0; k < pr.relators.size(); ++k) {
    const Relator& r = pr.relators[k];
    const auto& ix = r.idx;
    if (r.family == "band_slide") {
      int l = ix[0], i = ix[1], j = ix[2];
      if (l == 1)
        eng.set_family(static_cast<int>(k), "first_band_pairs", {i, j});
      else
        eng.set_family(static_cast<int>(k), "band_pairs", {l, i, j});
    } else if (r.family == "cross_slide") {
      int l = ix[0], i = ix[1], j = ix[2];
      if (i >= 2 && j == 1)
        eng.set_family(static_cast<int>(k), "ladder", {l, i});
      else if (i >= 2 && j >= 2 && l == 1)
        eng.set_family(static_cast<int>(k), "first_band_cross", {i, j});
      else
        eng.set_family(static_cast<int>(k), "ladder_cross", {l, i, j});
    } else if (r.family == "far_adjacent") {
      int l = ix[0], i = ix[1], j = ix[2];
      if (l == 1)
        eng.set_family(static_cast<int>(k), "first_band_far", {i, j});
      else
        eng.set_family(static_cast<int>(k), "band_far", {l, i, j});
    } else if (r.family == "far_distant") {
      int l = ix[0], lam = ix[1], i = ix[2], j = ix[3];
      if (i == 1 && j == 1)
        eng.set_family(static_cast<int>(k), "loop_loop_far", {l, lam});
      else if (i == 1)
        eng.set_family(static_cast<int>(k), "loop_gen_far", {l, lam, j});
      else if (l == 1 && j == 1)
        eng.set_family(static_cast<int>(k), "first_loop_far", {lam, i});
      else if (l == 1)
        eng.set_family(static_cast<int>(k), "first_gen_far", {lam, i, j});
      else if (j == 1)
        eng.set_family(static_cast<int>(k), "band_loop_far", {l, lam, i});
      else
        eng.set_family(static_cast<int>(k), "band_gen_far", {l, lam, i, j});
    }
  }
}

// Rewrites [X, Y A] as [X, A] using the partner relator [X, Y].
void strip_far_anchor(TietzeEngine& eng, int idx, int partner, const Word& X, const Word& Y,
                      const Word& A) {
  Word lit_partner = free_reduce(X * Y * X.inverse() * Y.inverse());
  Word lit_self = free_reduce(X * Y * A * X.inverse() * A.inverse() * Y.inverse());
  Word target = commutator(X, A);
  auto [kp, ep] = TietzeEngine::conj_between(eng.current().relators[partner].word, lit_partner);
  auto [ks, es] = TietzeEngine::conj_between(eng.current().relators[idx].word, lit_self);
  std::vector<TietzeMove::Mult> mults;
  mults.push_back({partner, -ep, free_reduce(Y.inverse() * kp)});
  mults.push_back({idx, es, free_reduce(Y.inverse() * ks)});
  eng.replace_relator(idx, target, TietzeMove::Just::relator_product, Word(), mults);
}

}  // namespace

PipelineResult run_pipeline(int p, int q) {
  PipelineResult out;
  out.raw = raw_presentation(p, q);  // validates p >= q >= 3
  TietzeEngine eng(out.raw);

  // Stage 1: remove the c generators.
  eng.eliminate_generator(sym_c(q - 1, 1), eng.find_relator("unit", {q - 1, 1}));
  for (int l = 1; l <= q - 2; ++l)
    eng.eliminate_generator(sym_c(l, 1), eng.find_relator("cross_slide", {l, 1, 1}));
  for (int l = 1; l <= q - 1; ++l)
    for (int j = 2; j <= p - 1; ++j)
      eng.eliminate_generator(sym_c(l, j), eng.find_relator("band_slide", {l, 1, j}));
  out.s1 = eng.snapshot("s1");

  // Stage 2: difference basis B_{l,i} = b_{l,1}^-1 b_{l,i}, then remove it.
  for (int l = 1; l <= q - 1; ++l)
    for (int i = 2; i <= p - 1; ++i)
      eng.change_basis(sym_B(l, i), W(sym_b(l, 1), -1) * W(sym_b(l, i)), sym_b(l, i));
  for (int i = 2; i <= p - 1; ++i)
    eng.eliminate_generator(sym_B(1, i), eng.find_relator("cross_slide", {1, i, 1}));
  for (int l = 1; l <= q - 2; ++l)
    for (int j = 2; j <= p - 1; ++j)
      eng.eliminate_generator(sym_B(l + 1, j), eng.find_relator("cross_slide", {l, 1, j}));
  out.s2 = eng.snapshot("s2");

  // Stage 3: u/v/A coordinates.
  for (int l = 1; l <= q - 1; ++l) eng.change_basis(sym_u(l), W(sym_b(l, 1)), sym_b(l, 1));
  for (int l = 1; l <= q - 2; ++l)
    eng.change_basis(sym_v(l), W(sym_u(l), -1) * W(sym_a(l + 1, 1)), sym_a(l + 1, 1));
  for (int i = 2; i <= p - 1; ++i) eng.change_basis(sym_A(1, i), W(sym_a(1, i)), sym_a(1, i));
  for (int l = 2; l <= q - 1; ++l)
    for (int i = 2; i <= p - 1; ++i)
      eng.change_basis(sym_A(l, i),
                       W(sym_v(l - 1), -1) * W(sym_u(l - 1), -1) * W(sym_a(l, i)), sym_a(l, i));
  eng.eliminate_generator(sym_a(1, 1), eng.find_relator("unit", {1, 1}));
  retag_stage3(eng);

  // The far commutators against a generator simplify against their
  // anchor-only partners.
  for (int l = 1; l + 1 <= q - 2; ++l)
    for (int lam = l + 2; lam <= q - 1; ++lam) {
      Word Y = W(sym_u(lam - 1)) * W(sym_v(lam - 1));
      Word Xloop = W(sym_u(l + 1)) * W(sym_u(l)) * W(sym_v(l), -1) * W(sym_u(l), -1);
      for (int j = 2; j <= p - 1; ++j) {
        int idx = eng.find_relator("loop_gen_far", {l, lam, j});
        int partner = eng.find_relator("loop_loop_far", {l, lam});
        strip_far_anchor(eng, idx, partner, Xloop, Y, W(sym_A(lam, j)));
      }
      if (l == 1) {
        for (int i = 2; i <= p - 1; ++i) {
          Word Xfirst = W(sym_u(1)) * W(sym_A(1, i)) * W(sym_u(1), -1);
          for (int j = 2; j <= p - 1; ++j) {
            int idx = eng.find_relator("first_gen_far", {lam, i, j});
            int partner = eng.find_relator("first_loop_far", {lam, i});
            strip_far_anchor(eng, idx, partner, Xfirst, Y, W(sym_A(lam, j)));
          }
        }
      }
      if (l >= 2) {
        for (int i = 2; i <= p - 1; ++i) {
          Word Xband = W(sym_u(l)) * W(sym_u(l - 1)) * W(sym_v(l - 1)) * W(sym_A(l, i)) *
                       W(sym_u(l), -1);
          for (int j = 2; j <= p - 1; ++j) {
            int idx = eng.find_relator("band_gen_far", {l, lam, i, j});
            int partner = eng.find_relator("band_loop_far", {l, lam, i});
            strip_far_anchor(eng, idx, partner, Xband, Y, W(sym_A(lam, j)));
          }
        }
      }
    }
  out.s3 = eng.snapshot("s3");

  // Final round: write the ladder-cross relators as commutators, then
  // recursively eliminate u_{l+1} down the ladder.
  for (int l = 2; l <= q - 2; ++l)
    for (int i = 2; i <= p - 2; ++i) {
      Word X = W(sym_u(l)) * W(sym_u(l - 1)) * W(sym_v(l - 1)) * W(sym_A(l, i)) * W(sym_v(l));
      Word U = W(sym_u(l - 1)) * W(sym_A(l, i), -1) * W(sym_u(l - 1), -1);
      Word Y = W(sym_u(l), -1) * W(sym_u(l + 1), -1);
      int ladder = eng.find_relator("ladder", {l, i});
      Word lit_ladder = free_reduce(X * U * Y);
      auto [k20, e20] = TietzeEngine::conj_between(eng.current().relators[ladder].word, lit_ladder);
      for (int j = 2; j <= p - i; ++j) {
        int idx = eng.find_relator("ladder_cross", {l, i, j});
        Word A = W(sym_A(l + 1, j));
        Word lit_self = free_reduce(X * A * U * A.inverse() * Y);
        Word target = commutator(A, U);
        auto [ks, es] = TietzeEngine::conj_between(eng.current().relators[idx].word, lit_self);
        std::vector<TietzeMove::Mult> mults;
        mults.push_back({idx, es, free_reduce(X.inverse() * ks)});
        mults.push_back({ladder, -e20, free_reduce(X.inverse() * k20)});
        eng.replace_relator(idx, target, TietzeMove::Just::relator_product, Word(), mults);
      }
    }
  for (int l = q - 2; l >= 2; --l)
    eng.eliminate_generator(sym_u(l + 1), eng.find_relator("ladder", {l, 2}));
  out.fin = eng.snapshot("final");
  out.log = eng.log();

  // Exit checks: the final presentation realizes the minimal Betti counts
  // and is made of commutators only.
  auto [b1, b2] = predict_betti(p, q);
  if (static_cast<long long>(out.fin.generators.size()) != b1)
    throw std::logic_error("run_pipeline: final generator count != beta1");
  if (static_cast<long long>(out.fin.relators.size()) != b2)
    throw std::logic_error("run_pipeline: final relator count != beta2");
  for (const Relator& r : out.fin.relators)
    if (!is_commutator_shaped(r.word))
      throw std::logic_error("run_pipeline: non-commutator relator survived: " + r.word.str());
  return out;
}

std::map<std::string, long long> final_census(const Presentation& fin) {
  return fin.family_counts();
}

std::map<std::string, long long> expected_census(int p, int q) {
  long long P = p, Q = q;
  std::map<std::string, long long> m;
  auto put = [&](const std::string& k, long long v) {
    if (v > 0) m[k] = v;
  };
  put("first_band_pairs", (P - 3) * (P - 2) / 2);
  put("band_pairs", (P - 3) * (P - 2) * (Q - 2) / 2);
  put("ladder", (P - 3) * (Q - 3));
  put("first_band_cross", (P - 3) * (P - 2) / 2);
  put("ladder_cross", (P - 3) * (P - 2) * (Q - 3) / 2);
  put("first_band_far", (P - 3) * (P - 2) / 2);
  put("band_far", (P - 3) * (P - 2) * (Q - 3) / 2);
  put("loop_loop_far", (Q - 3) * (Q - 2) / 2);
  put("loop_gen_far", (P - 2) * (Q - 3) * (Q - 2) / 2);
  put("first_loop_far", (P - 2) * (Q - 3));
  put("first_gen_far", (P - 2) * (P - 2) * (Q - 3));
  put("band_loop_far", (P - 2) * (Q - 4) * (Q - 3) / 2);
  put("band_gen_far", (P - 2) * (P - 2) * (Q - 4) * (Q - 3) / 2);
  return m;
}

namespace {

GenSym sym_uu() { return GenSym::make(Tag::u); }
GenSym sym_vv() { return GenSym::make(Tag::v); }
GenSym sym_ww() { return GenSym::make(Tag::w); }

}  // namespace

Word alpha_word(int p, int i) {
  Word w = W(sym_A(2, p - i - 1));
  if (p - i - 2 >= 2) w *= W(sym_A(2, p - i - 2), -1);
  return w;
}

Word beta_word(int p, int i) {
  if (i == p - 3) return W(sym_ww(), -1) * W(sym_A(1, 2)) * W(sym_vv());
  return W(sym_vv(), -1) * W(sym_A(1, p - i - 2), -1) * W(sym_A(1, p - i - 1)) * W(sym_vv());
}

Word gamma_word(int p, int i) {
  Word w = W(sym_A(1, i + 2), -1);
  if (i + 3 <= p - 1) w *= W(sym_A(1, i + 3));
  return w;
}

Word delta_word(int p, int i) {
  if (i == p - 3) return W(sym_vv()) * W(sym_A(2, p - 1)) * W(sym_uu());
  return W(sym_vv()) * W(sym_A(2, i + 3)) * W(sym_A(2, i + 2), -1) * W(sym_vv(), -1);
}

ReorganizeResult reorganize_q3(int p) {
  if (p < 4) throw std::domain_error("reorganize_q3: need p >= 4");
  PipelineResult pipe = run_pipeline(p, 3);
  TietzeEngine eng(pipe.fin);
  eng.change_basis(sym_uu(), W(sym_u(1)), sym_u(1));
  eng.change_basis(sym_vv(), W(sym_v(1)), sym_v(1));
  eng.change_basis(sym_ww(), W(sym_uu(), -1) * W(sym_u(2)) * W(sym_uu()), sym_u(2));

  ReorganizeResult out;
  out.simplified = eng.snapshot("abcd");

  Presentation ab;
  ab.stage = "abcd";
  ab.generators.push_back(sym_uu());
  ab.generators.push_back(sym_vv());
  ab.generators.push_back(sym_ww());
  for (int i = 2; i <= p - 1; ++i) ab.generators.push_back(sym_A(1, i));
  for (int i = 2; i <= p - 1; ++i) ab.generators.push_back(sym_A(2, i));
  int k = p - 3;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      if (i + j <= k) continue;
      ab.relators.push_back({commutator(alpha_word(p, i), beta_word(p, j)), "ab", {i, j}});
      ab.relators.push_back({commutator(beta_word(p, i), gamma_word(p, j)), "bc", {i, j}});
      ab.relators.push_back({commutator(gamma_word(p, i), delta_word(p, j)), "cd", {i, j}});
      ab.relators.push_back({commutator(delta_word(p, i), alpha_word(p, j)), "da", {i, j}});
    }
  for (Relator& r : ab.relators) r.word = cyclic_strip(r.word);
  ab.validate();
  if (static_cast<long long>(ab.relators.size()) != 2LL * (p - 3) * (p - 2))
    throw std::logic_error("reorganize_q3: relator count is off");

  AbelianInvariants want{2LL * p - 1, {}};
  if (!(abelianization(out.simplified) == want) || !(abelianization(ab) == want))
    throw std::logic_error("reorganize_q3: abelianization mismatch");
  out.abcd = std::move(ab);
  return out;
}

namespace {

std::string word_tokens(const Word& w) { return w.empty() ? "1" : w.str(); }

Word parse_word_tokens(const std::vector<std::string>& toks, size_t lo, size_t hi) {
  std::vector<Letter> ls;
  for (size_t k = lo; k < hi; ++k) {
    if (toks[k] == "1") continue;
    std::string_view sv(toks[k]);
    int exp = 1;
    if (auto cut = sv.find('^'); cut != std::string_view::npos) {
      if (sv.substr(cut) != "^-1") throw std::invalid_argument("bad exponent in log word");
      exp = -1;
      sv = sv.substr(0, cut);
    }
    auto g = GenSym::parse(sv);
    if (!g) throw std::invalid_argument("bad token in log word: " + toks[k]);
    ls.push_back({*g, exp});
  }
  return Word(std::move(ls));
}

}  // namespace

std::string serialize_log(int p, int q, const std::vector<TietzeMove>& log) {
  std::ostringstream out;
  out << "squarebraid-log v1\n";
  out << "base " << p << " " << q << "\n";
  char hex[17];
  for (const TietzeMove& mv : log) {
    switch (mv.kind) {
      case TietzeMove::Kind::add_gen:
        out << "MOVE add " << mv.sym.str() << " ; " << word_tokens(mv.defining) << "\n";
        break;
      case TietzeMove::Kind::elim_gen:
        out << "MOVE elim " << mv.sym.str() << " ; " << mv.rel_index << "\n";
        break;
      case TietzeMove::Kind::replace:
        out << "MOVE replace " << mv.rel_index << " ; ";
        switch (mv.just) {
          case TietzeMove::Just::rotation:
            out << "rotation ; ";
            break;
          case TietzeMove::Just::inversion:
            out << "inversion ; ";
            break;
          case TietzeMove::Just::free_equal:
            out << "free ; ";
            break;
          case TietzeMove::Just::conjugation:
            out << "conj ; " << word_tokens(mv.conjugator) << " ; ";
            break;
          case TietzeMove::Just::relator_product:
            out << "product " << mv.product.size() << " ; ";
            for (const auto& m : mv.product)
              out << m.rel << " " << m.exp << " ; " << word_tokens(m.conj) << " ; ";
            break;
        }
        out << word_tokens(mv.new_word) << "\n";
        break;
      case TietzeMove::Kind::drop:
        out << "MOVE drop " << mv.rel_index << "\n";
        break;
    }
    snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(mv.hash_after));
    out << "hash " << hex << "\n";
  }
  return out.str();
}

ReplayResult replay_log(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "squarebraid-log v1")
    throw std::invalid_argument("replay: bad header");
  int p = 0, q = 0;
  {
    if (!std::getline(in, line)) throw std::invalid_argument("replay: missing base line");
    std::istringstream ls(line);
    std::string kw;
    ls >> kw >> p >> q;
    if (kw != "base") throw std::invalid_argument("replay: missing base line");
  }
  TietzeEngine eng(raw_presentation(p, q));
  ReplayResult res;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> toks;
    {
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) toks.push_back(t);
    }
    auto next_sep = [&](size_t from) {
      size_t k = from;
      while (k < toks.size() && toks[k] != ";") ++k;
      return k;
    };
    size_t base = 0;
    if (toks[0] == "MOVE") base = 1;
    const std::string& kw = toks[base];
    if (kw == "hash") {
      uint64_t want = std::stoull(toks.at(1), nullptr, 16);
      if (presentation_hash(eng.current()) != want)
        throw std::logic_error("replay: hash mismatch after move " + std::to_string(res.moves));
      continue;
    }
    ++res.moves;
    if (kw == "add") {
      auto g = GenSym::parse(toks.at(base + 1));
      size_t sep = next_sep(base + 2);
      eng.add_generator(*g, parse_word_tokens(toks, sep + 1, toks.size()));
    } else if (kw == "elim") {
      auto g = GenSym::parse(toks.at(base + 1));
      size_t sep = next_sep(base + 2);
      eng.eliminate_generator(*g, std::stoi(toks.at(sep + 1)));
    } else if (kw == "drop") {
      eng.drop_relator(std::stoi(toks.at(base + 1)));
    } else if (kw == "replace") {
      int idx = std::stoi(toks.at(base + 1));
      size_t sep = next_sep(base);
      const std::string& just = toks.at(sep + 1);
      if (just == "rotation" || just == "inversion" || just == "free") {
        size_t wordlo = next_sep(sep + 1) + 1;
        Word neww = parse_word_tokens(toks, wordlo, toks.size());
        auto j = just == "rotation"   ? TietzeMove::Just::rotation
                 : just == "inversion" ? TietzeMove::Just::inversion
                                       : TietzeMove::Just::free_equal;
        eng.replace_relator(idx, neww, j);
      } else if (just == "conj") {
        size_t s1 = next_sep(sep + 1);
        size_t s2 = next_sep(s1 + 1);
        Word conj = parse_word_tokens(toks, s1 + 1, s2);
        Word neww = parse_word_tokens(toks, s2 + 1, toks.size());
        eng.replace_relator(idx, neww, TietzeMove::Just::conjugation, conj);
      } else if (just == "product") {
        int m = std::stoi(toks.at(sep + 2));
        std::vector<TietzeMove::Mult> mults;
        size_t cur = next_sep(sep + 2);  // points at ';' after count
        for (int t = 0; t < m; ++t) {
          int rel = std::stoi(toks.at(cur + 1));
          int exp = std::stoi(toks.at(cur + 2));
          size_t s1 = next_sep(cur + 3);
          size_t s2 = next_sep(s1 + 1);
          Word conj = parse_word_tokens(toks, s1 + 1, s2);
          mults.push_back({rel, exp, conj});
          cur = s2;
        }
        Word neww = parse_word_tokens(toks, cur + 1, toks.size());
        eng.replace_relator(idx, neww, TietzeMove::Just::relator_product, Word(), mults);
      } else {
        throw std::invalid_argument("replay: unknown justification " + just);
      }
    } else {
      throw std::invalid_argument("replay: unknown move " + kw);
    }
  }
  res.fin = eng.snapshot("final");
  return res;
}

}  // namespace squarebraid
