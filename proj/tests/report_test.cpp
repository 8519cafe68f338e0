#include <doctest.h>

#include <cstdlib>

#include "squarebraid/parallel.hpp"
#include "squarebraid/report.hpp"

using namespace squarebraid;

TEST_CASE("reports pass and serialize deterministically") {
  VerificationReport a = report_all(4, 3);
  CHECK(a.pass);
  VerificationReport b = report_all(4, 3);
  CHECK(report_json(a) == report_json(b));
  CHECK(report_json(a).find("\"pass\": true") != std::string::npos);
}

TEST_CASE("reports are identical across worker counts") {
  setenv("SQUAREBRAID_THREADS", "1", 1);
  std::string one = report_json(report_all(5, 3));
  setenv("SQUAREBRAID_THREADS", "4", 1);
  std::string four = report_json(report_all(5, 3));
  unsetenv("SQUAREBRAID_THREADS");
  CHECK(one == four);
  CHECK(thread_budget() == 1);
}

TEST_CASE("out-of-range grids are rejected up front") {
  CHECK_THROWS_AS(report_all(4, 2), std::domain_error);
  CHECK_THROWS_AS(report_all(3, 4), std::domain_error);
}

TEST_CASE("text report prints one line per check") {
  VerificationReport r = report_all(3, 3);
  std::string text = report_text(r);
  size_t count = 0;
  for (size_t pos = 0; (pos = text.find("pass  ", pos)) != std::string::npos; ++pos) ++count;
  CHECK(count >= r.checks.size());
  CHECK(text.find("PASS overall") != std::string::npos);
}
