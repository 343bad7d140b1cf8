#pragma once

#include "paulibc/types.hpp"

#include <optional>
#include <string>

namespace pauli {

/// Malformed run configuration. The message carries the offending line
/// number; callers map it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepFamily { ExA, ExB, ExPT, BcEnergy, Custom };

std::string to_string(SweepFamily f);

struct SweepConfig {
  SweepFamily family = SweepFamily::Custom;
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  int alpha_steps = 51;   // grid points inclusive of both ends
  double beta = 0.0;      // fixed beta for the exB family
};

struct SearchConfig {
  SearchRegion window{-5.0, 25.0, -3.0, 3.0};
  double tol = 1e-10;
  double lambda_max = 15.0;  // pte energy cap
};

struct PseudoConfig {
  int nx = 41;
  int ny = 41;
  int n = 200;  // discretization points per channel
};

struct MetricConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  int n_eigs = 4;
  int grid_points = 1025;
};

struct OutputConfig {
  std::string directory = ".";
  int precision = 17;  // significant digits
};

struct RunConfig {
  ProblemSpec problem;
  SearchConfig search;
  SweepConfig sweep;
  PseudoConfig pseudo;
  MetricConfig metric;
  OutputConfig output;
  std::uint64_t hash = 0;  // FNV-1a of the config text
};

/// Parse the line-oriented `[section]` / `key = value` format. Complex
/// values are written `(re,im)`, 2x2 matrices as four complex values in
/// row-major order. Unknown sections or keys are rejected with the line
/// number; all numeric fields must be finite. Throws ConfigError.
RunConfig parse_config(const std::string& text);

/// parse_config over a file's contents; the filename is prepended to any
/// error message.
RunConfig load_config(const std::string& path);

std::uint64_t config_hash(const std::string& text);

}  // namespace pauli
