#include "squarebraid/report.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "squarebraid/hnn.hpp"
#include "squarebraid/homology.hpp"
#include "squarebraid/morse.hpp"
#include "squarebraid/tietze.hpp"

namespace squarebraid {

namespace {

using Clock = std::chrono::steady_clock;

std::string join(const std::vector<long long>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct Runner {
  VerificationReport& rep;

  template <class F>
  void check(const std::string& name, const std::string& formula, F&& body) {
    CheckRecord rec;
    rec.name = name;
    rec.formula = formula;
    auto t0 = Clock::now();
    try {
      body(rec);
    } catch (const std::exception& e) {
      rec.pass = false;
      rec.computed = std::string("error: ") + e.what();
    }
    rec.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    rep.checks.push_back(std::move(rec));
  }
};

}  // namespace

VerificationReport report_all(int p, int q) {
  if (p < q || q < 3)
    throw std::domain_error("report_all: need p >= q >= 3, got p=" + std::to_string(p) +
                            " q=" + std::to_string(q));
  VerificationReport rep;
  rep.p = p;
  rep.q = q;
  Runner run{rep};
  auto t0 = Clock::now();

  GridGraph g = build_grid(p, q);
  int n2 = p * q - 2, n1 = p * q - 1;
  auto [b1, b2] = predict_betti(p, q);
  std::vector<long long> crit = predict_critical(p, q);

  CubeComplex c2 = enumerate_cells(g, n2);
  CubeComplex c1 = enumerate_cells(g, n1);

  run.check("euler.triple",
            "sum_k (-1)^k f_k = 1 - c1 + c2 = 1 - beta1 + beta2",
            [&](CheckRecord& r) {
              long long chi_f = c2.euler();
              long long chi_c = 1 - crit[1] + crit[2];
              long long chi_b = 1 - b1 + b2;
              r.predicted = std::to_string(chi_b);
              r.computed = join({chi_f, chi_c, chi_b});
              r.pass = chi_f == chi_c && chi_c == chi_b;
            });

  HomologySummary h2 = homology(c2);
  run.check("homology.full", "betti = (1, (p-1)(q-1)+1, beta2), no torsion",
            [&](CheckRecord& r) {
              std::vector<long long> want{1, b1, b2};
              r.predicted = join(want) + " torsion-free";
              r.computed = join(h2.betti) + (h2.torsion_free() ? " torsion-free" : " torsion!");
              r.pass = h2.betti == want && h2.torsion_free();
            });
  run.check("homology.hdim", "1 when p = q = 3, else 2", [&](CheckRecord& r) {
    r.predicted = std::to_string(predict_hdim(p, q));
    r.computed = std::to_string(h2.hdim_observed);
    r.pass = h2.hdim_observed == predict_hdim(p, q);
  });

  HomologySummary h1 = homology(c1);
  run.check("homology.wedge", "betti = (1, (p-1)(q-1)) at n = pq-1", [&](CheckRecord& r) {
    std::vector<long long> want{1, static_cast<long long>(p - 1) * (q - 1)};
    r.predicted = join(want);
    r.computed = join(h1.betti);
    r.pass = h1.betti == want && h1.torsion_free();
  });

  SpanningTree tree = build_tree(g);
  GradientField f2 = gradient_field(c2, tree);
  run.check("morse.census", "(1, 3(p-1)(q-1)-2, C((p-1)(q-1),2)-(p-2)(q-2))",
            [&](CheckRecord& r) {
              r.predicted = join(crit);
              r.computed = join(f2.census());
              r.pass = f2.census() == crit && f2.acyclic;
            });
  run.check("morse.homology", "critical-cell chain complex matches the incidence homology",
            [&](CheckRecord& r) {
              HomologySummary hm = morse_homology(f2, c2);
              r.predicted = join(h2.betti);
              r.computed = join(hm.betti);
              r.pass = hm == h2;
            });
  run.check("morse.homology.wedge", "same agreement on the pq-1 complex", [&](CheckRecord& r) {
    GradientField f1 = gradient_field(c1, tree);
    HomologySummary hm = morse_homology(f1, c1);
    r.predicted = join(h1.betti);
    r.computed = join(hm.betti);
    r.pass = hm == h1;
  });

  run.check("pipeline.counts", "beta1 generators, beta2 relators, all commutators",
            [&](CheckRecord& r) {
              PipelineResult pipe = run_pipeline(p, q);
              long long gens = static_cast<long long>(pipe.fin.generators.size());
              long long rels = static_cast<long long>(pipe.fin.relators.size());
              bool comm = true;
              for (const Relator& rel : pipe.fin.relators)
                comm = comm && is_commutator_shaped(rel.word);
              r.predicted = "(" + std::to_string(b1) + "," + std::to_string(b2) + ") commutators";
              r.computed = "(" + std::to_string(gens) + "," + std::to_string(rels) + ")" +
                           (comm ? " commutators" : " non-commutator present");
              r.pass = gens == b1 && rels == b2 && comm;
            });
  run.check("pipeline.census", "per-family counts match their closed forms",
            [&](CheckRecord& r) {
              PipelineResult pipe = run_pipeline(p, q);
              auto got = final_census(pipe.fin);
              auto want = expected_census(p, q);
              r.predicted = std::to_string(want.size()) + " families";
              r.computed = std::to_string(got.size()) + " families";
              r.pass = got == want;
            });
  run.check("pipeline.abelianization", "rank beta1 and torsion-free at every stage",
            [&](CheckRecord& r) {
              PipelineResult pipe = run_pipeline(p, q);
              AbelianInvariants want{b1, {}};
              bool ok = true;
              for (const Presentation* pr :
                   {&pipe.raw, &pipe.s1, &pipe.s2, &pipe.s3, &pipe.fin})
                ok = ok && abelianization(*pr) == want;
              r.predicted = "rank " + std::to_string(b1) + ", torsion-free";
              r.computed = ok ? "all stages agree" : "some stage disagrees";
              r.pass = ok;
            });
  run.check("pipeline.replay", "serialized move log replays to the same presentation",
            [&](CheckRecord& r) {
              PipelineResult pipe = run_pipeline(p, q);
              ReplayResult rr = replay_log(serialize_log(p, q, pipe.log));
              r.predicted = "hash match";
              r.computed = presentation_hash(rr.fin) == presentation_hash(pipe.fin)
                               ? "hash match"
                               : "hash mismatch";
              r.pass = presentation_hash(rr.fin) == presentation_hash(pipe.fin);
            });

  if (q == 3 && p >= 3 && p <= 5) {
    run.check("identify.small", "free of rank 5 / square + 3 / meta-square + 1",
              [&](CheckRecord& r) {
                SmallIdentification id = identify_small(p);
                r.predicted = "certified";
                r.computed = id.certified ? "certified (" + id.detail + ")" : "not certified";
                r.pass = id.certified;
              });
  }
  if (q == 3 && p >= 5) {
    run.check("hnn.verify", "all six isomorphism verdicts", [&](CheckRecord& r) {
      HnnVerdicts v = verify_theorem(p);
      r.predicted = "6 verdicts true";
      std::string got;
      got += v.theta_well_defined ? "" : " theta";
      got += v.relations_I_VIII ? "" : " relations";
      got += v.section ? "" : " section";
      got += v.lemma_vii_viii ? "" : " conjugations";
      got += v.abelianization ? "" : " abelianization";
      got += v.phi_graph_iso ? "" : " phi";
      r.computed = v.pass() ? "all true" : "failing:" + got;
      r.pass = v.pass();
    });
  }

  rep.pass = true;
  for (const CheckRecord& c : rep.checks) rep.pass = rep.pass && c.pass;
  rep.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

std::string report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckRecord& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["formula"] = c.formula;
    jc["predicted"] = c.predicted;
    jc["computed"] = c.computed;
    jc["pass"] = c.pass;
    j["checks"].push_back(jc);
  }
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "verification report for p=" << r.p << " q=" << r.q << "\n";
  for (const CheckRecord& c : r.checks) {
    out << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  [" << c.formula << "]\n"
        << "        predicted " << c.predicted << "  computed " << c.computed << "  ("
        << static_cast<long long>(c.ms + 0.5) << " ms)\n";
  }
  out << (r.pass ? "PASS" : "FAIL") << " overall (" << static_cast<long long>(r.total_ms + 0.5)
      << " ms)\n";
  return out.str();
}

}  // namespace squarebraid
