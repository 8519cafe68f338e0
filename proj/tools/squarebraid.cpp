#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "squarebraid/hnn.hpp"
#include "squarebraid/homology.hpp"
#include "squarebraid/morse.hpp"
#include "squarebraid/report.hpp"
#include "squarebraid/tietze.hpp"

using namespace squarebraid;
using nlohmann::ordered_json;

namespace {

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << text;
}

ordered_json torsion_json(const HomologySummary& h) {
  ordered_json t = ordered_json::array();
  for (auto& layer : h.torsion) {
    ordered_json l = ordered_json::array();
    for (auto& d : layer) l.push_back(d.get_str());
    t.push_back(l);
  }
  return t;
}

int cmd_complex(int p, int q, int n, const std::string& format, bool list_cells) {
  GridGraph g = build_grid(p, q);
  CubeComplex c = enumerate_cells(g, n);
  if (format == "json") {
    ordered_json j;
    j["p"] = p;
    j["q"] = q;
    j["n"] = n;
    j["f"] = c.f_vector();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "f-vector:";
    for (long long f : c.f_vector()) std::cout << " " << f;
    std::cout << "  (euler " << c.euler() << ")\n";
    if (list_cells) {
      for (int k = 0; k <= c.top_dim(); ++k)
        for (size_t i = 0; i < c.cells[k].size(); ++i) {
          std::cout << "cell " << k << "/" << i << ":";
          for (int id : c.cells[k][i]) {
            const Piece& pc = c.pieces.piece(id);
            const char* kind = pc.kind == PieceKind::vertex   ? "v"
                               : pc.kind == PieceKind::hedge  ? "h"
                               : pc.kind == PieceKind::vedge  ? "v|"
                                                              : "sq";
            std::cout << " " << kind << "(" << pc.x << "," << pc.y << ")";
          }
          std::cout << "\n";
        }
    }
  }
  return 0;
}

int cmd_homology(int p, int q, int n, const std::string& format) {
  GridGraph g = build_grid(p, q);
  CubeComplex c = enumerate_cells(g, n);
  HomologySummary h = homology(c);
  bool have_prediction = p >= q && q >= 3 && (n == p * q - 2 || n == p * q - 1);
  long long pb1 = 0, pb2 = 0;
  bool match = false;
  if (have_prediction) {
    if (n == p * q - 2) {
      std::tie(pb1, pb2) = predict_betti(p, q);
      match = h.betti == std::vector<long long>{1, pb1, pb2} && h.torsion_free();
    } else {
      pb1 = static_cast<long long>(p - 1) * (q - 1);
      pb2 = 0;
      match = h.betti == std::vector<long long>{1, pb1} && h.torsion_free();
    }
  }
  if (format == "json") {
    ordered_json j;
    j["betti"] = h.betti;
    j["torsion"] = torsion_json(h);
    j["euler"] = h.euler;
    if (have_prediction) {
      j["predicted"] = {{"beta1", pb1}, {"beta2", pb2}};
      j["match"] = match;
    } else {
      j["predicted"] = nullptr;
      j["match"] = nullptr;
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "betti:";
    for (long long b : h.betti) std::cout << " " << b;
    std::cout << (h.torsion_free() ? "  torsion-free" : "  TORSION") << "  euler " << h.euler
              << "\n";
    if (have_prediction)
      std::cout << "predicted beta1 " << pb1 << " beta2 " << pb2
                << (match ? "  match" : "  MISMATCH") << "\n";
  }
  return have_prediction && !match ? 1 : 0;
}

int cmd_morse(int p, int q, const std::string& format) {
  GridGraph g = build_grid(p, q);
  CubeComplex c = enumerate_cells(g, p * q - 2);
  SpanningTree t = build_tree(g);
  GradientField f = gradient_field(c, t);
  std::vector<long long> predicted = predict_critical(p, q);
  bool match = f.census() == predicted;
  if (format == "json") {
    ordered_json j;
    j["critical"] = f.census();
    j["predicted"] = predicted;
    j["match"] = match;
    j["acyclic"] = f.acyclic;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "critical:";
    for (long long v : f.census()) std::cout << " " << v;
    std::cout << "  predicted:";
    for (long long v : predicted) std::cout << " " << v;
    std::cout << (match ? "  match" : "  MISMATCH") << (f.acyclic ? "  acyclic" : "") << "\n";
  }
  return match ? 0 : 1;
}

int cmd_present(int p, int q, const std::string& stage, const std::string& out,
                const std::string& logfile) {
  if (stage == "abcd") {
    if (q != 3) throw std::domain_error("present: stage abcd needs q = 3");
    if (!logfile.empty())
      throw std::domain_error("present: move logs cover the raw..final stages only");
    ReorganizeResult r = reorganize_q3(p);
    write_out(out, render_presentation(r.abcd));
    return 0;
  }
  PipelineResult pipe = run_pipeline(p, q);
  write_out(out, render_presentation(pipe.stage(stage)));
  if (!logfile.empty()) {
    std::ofstream f(logfile);
    if (!f) throw std::runtime_error("cannot open log file " + logfile);
    f << serialize_log(p, q, pipe.log);
  }
  return 0;
}

int cmd_replay(const std::string& logfile) {
  std::ifstream f(logfile);
  if (!f) throw std::runtime_error("cannot open log file " + logfile);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  ReplayResult r = replay_log(text);
  std::cerr << "replayed " << r.moves << " moves\n";
  std::cout << render_presentation(r.fin);
  return 0;
}

int cmd_hnn(int p, const std::string& action, const std::string& format,
            const std::string& out) {
  if (action == "graph") {
    SGraphBundle sb = build_meta_square(p);
    write_out(out, sb.S.edge_list_text());
    return 0;
  }
  HnnVerdicts v = verify_theorem(p);
  if (format == "json") {
    ordered_json j;
    j["p"] = p;
    j["verdicts"] = {{"theta_well_defined", v.theta_well_defined},
                     {"relations_I_VIII", v.relations_I_VIII},
                     {"section", v.section},
                     {"lemma_vii_viii", v.lemma_vii_viii},
                     {"abelianization", v.abelianization},
                     {"phi_graph_iso", v.phi_graph_iso}};
    j["pass"] = v.pass();
    std::cout << j.dump() << "\n";
  } else {
    auto line = [](const char* name, bool ok) {
      std::cout << "  " << (ok ? "pass  " : "FAIL  ") << name << "\n";
    };
    std::cout << "hnn certification for p=" << p << "\n";
    line("theta_well_defined", v.theta_well_defined);
    line("relations_I_VIII", v.relations_I_VIII);
    line("section", v.section);
    line("lemma_vii_viii", v.lemma_vii_viii);
    line("abelianization", v.abelianization);
    line("phi_graph_iso", v.phi_graph_iso);
    std::cout << (v.pass() ? "PASS" : "FAIL") << "\n";
    std::cout << "note: " << v.note << "\n";
  }
  return v.pass() ? 0 : 1;
}

int cmd_report(int p, int q, const std::string& format) {
  VerificationReport r = report_all(p, q);
  std::cout << (format == "json" ? report_json(r) : report_text(r));
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard-square configuration spaces: homology, Morse data, presentations"};
  app.require_subcommand(1);

  int p = 3, q = 3, n = -1;
  std::string format = "text", stage = "final", out, logfile, action = "verify";
  bool list_cells = false;

  auto add_pq = [&](CLI::App* cmd, bool with_n) {
    cmd->add_option("--p", p, "columns")->required();
    cmd->add_option("--q", q, "rows")->required();
    if (with_n) cmd->add_option("--n", n, "token count (default pq-2)");
    cmd->add_option("--format", format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* c_complex = app.add_subcommand("complex", "f-vector of the configuration complex");
  add_pq(c_complex, true);
  c_complex->add_flag("--cells", list_cells, "list cells (text format)");

  CLI::App* c_hom = app.add_subcommand("homology", "exact integer homology");
  add_pq(c_hom, true);

  CLI::App* c_morse = app.add_subcommand("morse", "gradient field and critical census");
  add_pq(c_morse, false);

  CLI::App* c_present = app.add_subcommand("present", "group presentations by stage");
  c_present->add_option("--p", p, "columns")->required();
  c_present->add_option("--q", q, "rows")->required();
  c_present->add_option("--stage", stage, "raw|s1|s2|s3|final|abcd")
      ->check(CLI::IsMember({"raw", "s1", "s2", "s3", "final", "abcd"}));
  c_present->add_option("--out", out, "write the presentation here instead of stdout");
  c_present->add_option("--log", logfile, "write the move log here");

  CLI::App* c_replay = app.add_subcommand("replay", "re-verify a move log");
  c_replay->add_option("--log", logfile, "move log file")->required();

  CLI::App* c_hnn = app.add_subcommand("hnn", "HNN certification for q = 3");
  c_hnn->add_option("--p", p, "columns")->required();
  c_hnn->add_option("action", action, "verify|graph")
      ->check(CLI::IsMember({"verify", "graph"}));
  c_hnn->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
  c_hnn->add_option("--out", out, "write the edge list here (graph action)");

  CLI::App* c_report = app.add_subcommand("report", "consolidated verification report");
  add_pq(c_report, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_complex->parsed()) return cmd_complex(p, q, n < 0 ? p * q - 2 : n, format, list_cells);
    if (c_hom->parsed()) return cmd_homology(p, q, n < 0 ? p * q - 2 : n, format);
    if (c_morse->parsed()) return cmd_morse(p, q, format);
    if (c_present->parsed()) return cmd_present(p, q, stage, out, logfile);
    if (c_replay->parsed()) return cmd_replay(logfile);
    if (c_hnn->parsed()) return cmd_hnn(p, action, format, out);
    if (c_report->parsed()) return cmd_report(p, q, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
