#pragma once

#include <string>
#include <vector>

namespace squarebraid {

struct CheckRecord {
  std::string name;
  std::string formula;    // closed form or rule the prediction came from
  std::string predicted;
  std::string computed;
  bool pass = false;
  double ms = 0.0;  // wall time; text output only, never serialized to JSON
};

struct VerificationReport {
  int p = 0, q = 0;
  std::vector<CheckRecord> checks;
  bool pass = false;
  double total_ms = 0.0;
};

// Runs the whole battery for one grid: complex and homology at n = pq-2 and
// pq-1, the gradient-field census, the presentation pipeline with its
// census, and for q = 3 the small identifications and the HNN certificate.
// Module failures become failed checks, never silent omissions.
VerificationReport report_all(int p, int q);

// Deterministic serializations; the JSON form is byte-stable across runs
// and worker counts.
std::string report_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);

}  // namespace squarebraid
