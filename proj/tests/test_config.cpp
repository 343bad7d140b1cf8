#include <doctest.h>

#include "paulibc/config.hpp"

using namespace pauli;

namespace {
const char* kMinimal =
    "[problem]\n"
    "half_width = 0.785398\n"
    "field = 0\n"
    "a_plus = 0 0 0 0\n"
    "a_minus = 0 0 0 0\n";
}

TEST_CASE("minimal Neumann config parses") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.problem.half_width == doctest::Approx(0.785398));
  CHECK(cfg.problem.field == 0.0);
  CHECK(cfg.problem.boundary.a_plus.cwiseAbs().maxCoeff() == 0.0);
  CHECK_FALSE(cfg.problem.potential.has_value());
}

TEST_CASE("complex literal (0,1) parses to i") {
  const RunConfig cfg = parse_config(
      "[problem]\nhalf_width = 1\na_plus = (0,1) 0 0 (0,1)\na_minus = 0 0 0 0\n");
  CHECK(cfg.problem.boundary.a_plus(0, 0) == Complex(0.0, 1.0));
  CHECK(cfg.problem.boundary.a_plus(1, 1) == Complex(0.0, 1.0));
  CHECK(cfg.problem.boundary.a_plus(0, 1) == Complex(0.0, 0.0));
}

TEST_CASE("missing half_width is rejected naming the key") {
  try {
    parse_config("[problem]\nfield = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("half_width") != std::string::npos);
  }
}

TEST_CASE("unknown key rejected with line number") {
  try {
    parse_config("[problem]\nhalf_width = 1\nbogus = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("bogus") != std::string::npos);
  }
}

TEST_CASE("non-finite and malformed numbers are rejected") {
  CHECK_THROWS_AS(parse_config("[problem]\nhalf_width = inf\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nhalf_width = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nhalf_width = 1 2\n"), ConfigError);
}

TEST_CASE("matrix needs exactly four entries") {
  CHECK_THROWS_AS(parse_config("[problem]\nhalf_width = 1\na_plus = 0 0 0\n"),
                  ConfigError);
}

TEST_CASE("potential pieces parse into the spec") {
  const RunConfig cfg = parse_config(
      "[problem]\nhalf_width = 2\n"
      "potential_breakpoints = -1 1\npotential_values = 2\n");
  REQUIRE(cfg.problem.potential.has_value());
  CHECK(cfg.problem.potential->at(0.0) == 2.0);
}

TEST_CASE("sweep family names") {
  const RunConfig cfg = parse_config(std::string(kMinimal) +
                                     "[sweep]\nfamily = exB\nbeta = -0.5\n");
  CHECK(cfg.sweep.family == SweepFamily::ExB);
  CHECK(cfg.sweep.beta == -0.5);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[sweep]\nfamily = nope\n"),
                  ConfigError);
}

TEST_CASE("hash changes with content") {
  CHECK(config_hash("a") != config_hash("b"));
  CHECK(config_hash("a") == config_hash("a"));
}
