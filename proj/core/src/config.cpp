#include "paulibc/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace pauli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& tok, int line, const std::string& key) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': '" + tok + "' is not a number");
  }
  if (pos != tok.size()) fail(line, "key '" + key + "': trailing characters in '" + tok + "'");
  if (!std::isfinite(v)) fail(line, "key '" + key + "': value must be finite");
  return v;
}

int parse_int(const std::string& tok, int line, const std::string& key) {
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': '" + tok + "' is not an integer");
  }
  if (pos != tok.size()) fail(line, "key '" + key + "': trailing characters in '" + tok + "'");
  return static_cast<int>(v);
}

// complex literal "(re,im)"; a bare real is also accepted
Complex parse_complex(const std::string& tok, int line, const std::string& key) {
  const std::string t = trim(tok);
  if (t.empty()) fail(line, "key '" + key + "': empty complex value");
  if (t.front() != '(') return Complex(parse_real(t, line, key), 0.0);
  if (t.back() != ')') fail(line, "key '" + key + "': unbalanced parentheses in '" + t + "'");
  const std::string inner = t.substr(1, t.size() - 2);
  const std::size_t comma = inner.find(',');
  if (comma == std::string::npos)
    fail(line, "key '" + key + "': expected '(re,im)', got '" + t + "'");
  return Complex(parse_real(trim(inner.substr(0, comma)), line, key),
                 parse_real(trim(inner.substr(comma + 1)), line, key));
}

// split on whitespace, but keep "(...)" groups intact
std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Mat2 parse_matrix(const std::string& value, int line, const std::string& key) {
  const std::vector<std::string> toks = split_values(value);
  if (toks.size() != 4)
    fail(line, "key '" + key + "': a 2x2 matrix needs four row-major complex values, got " +
                   std::to_string(toks.size()));
  Mat2 m;
  m << parse_complex(toks[0], line, key), parse_complex(toks[1], line, key),
      parse_complex(toks[2], line, key), parse_complex(toks[3], line, key);
  return m;
}

std::vector<double> parse_reals(const std::string& value, int line, const std::string& key) {
  std::vector<double> out;
  for (const std::string& t : split_values(value)) out.push_back(parse_real(t, line, key));
  return out;
}

SweepFamily parse_family(const std::string& tok, int line) {
  if (tok == "exA") return SweepFamily::ExA;
  if (tok == "exB") return SweepFamily::ExB;
  if (tok == "exPT") return SweepFamily::ExPT;
  if (tok == "bc-energy") return SweepFamily::BcEnergy;
  if (tok == "custom") return SweepFamily::Custom;
  fail(line, "family must be one of exA, exB, exPT, bc-energy, custom; got '" + tok + "'");
}

}  // namespace

std::string to_string(SweepFamily f) {
  switch (f) {
    case SweepFamily::ExA: return "exA";
    case SweepFamily::ExB: return "exB";
    case SweepFamily::ExPT: return "exPT";
    case SweepFamily::BcEnergy: return "bc-energy";
    case SweepFamily::Custom: return "custom";
  }
  return "custom";
}

std::uint64_t config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.hash = config_hash(text);

  bool have_half_width = false;
  std::vector<double> pot_breaks, pot_values;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t hash_pos = s.find('#');
    if (hash_pos != std::string::npos) s = s.substr(0, hash_pos);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header '" + s + "'");
      section = s.substr(1, s.size() - 2);
      if (section != "problem" && section != "search" && section != "sweep" &&
          section != "pseudo" && section != "metric" && section != "output")
        fail(line, "unknown section '" + section + "'");
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (value.empty()) fail(line, "key '" + key + "': empty value");
    if (section.empty()) fail(line, "key '" + key + "' appears before any [section] header");

    if (section == "problem") {
      if (key == "half_width") {
        cfg.problem.half_width = parse_real(value, line, key);
        have_half_width = true;
      } else if (key == "field") {
        cfg.problem.field = parse_real(value, line, key);
      } else if (key == "a_plus") {
        cfg.problem.boundary.a_plus = parse_matrix(value, line, key);
      } else if (key == "a_minus") {
        cfg.problem.boundary.a_minus = parse_matrix(value, line, key);
      } else if (key == "potential_breakpoints") {
        pot_breaks = parse_reals(value, line, key);
      } else if (key == "potential_values") {
        pot_values = parse_reals(value, line, key);
      } else {
        fail(line, "unknown key '" + key + "' in [problem]");
      }
    } else if (section == "search") {
      if (key == "re_min") cfg.search.window.re_min = parse_real(value, line, key);
      else if (key == "re_max") cfg.search.window.re_max = parse_real(value, line, key);
      else if (key == "im_min") cfg.search.window.im_min = parse_real(value, line, key);
      else if (key == "im_max") cfg.search.window.im_max = parse_real(value, line, key);
      else if (key == "tol") cfg.search.tol = parse_real(value, line, key);
      else if (key == "lambda_max") cfg.search.lambda_max = parse_real(value, line, key);
      else fail(line, "unknown key '" + key + "' in [search]");
    } else if (section == "sweep") {
      if (key == "family") cfg.sweep.family = parse_family(value, line);
      else if (key == "alpha_min") cfg.sweep.alpha_min = parse_real(value, line, key);
      else if (key == "alpha_max") cfg.sweep.alpha_max = parse_real(value, line, key);
      else if (key == "alpha_steps") cfg.sweep.alpha_steps = parse_int(value, line, key);
      else if (key == "beta") cfg.sweep.beta = parse_real(value, line, key);
      else fail(line, "unknown key '" + key + "' in [sweep]");
    } else if (section == "pseudo") {
      if (key == "nx") cfg.pseudo.nx = parse_int(value, line, key);
      else if (key == "ny") cfg.pseudo.ny = parse_int(value, line, key);
      else if (key == "n") cfg.pseudo.n = parse_int(value, line, key);
      else fail(line, "unknown key '" + key + "' in [pseudo]");
    } else if (section == "metric") {
      if (key == "alpha") cfg.metric.alpha = parse_real(value, line, key);
      else if (key == "beta") cfg.metric.beta = parse_real(value, line, key);
      else if (key == "c") cfg.metric.c = parse_real(value, line, key);
      else if (key == "n_eigs") cfg.metric.n_eigs = parse_int(value, line, key);
      else if (key == "grid_points") cfg.metric.grid_points = parse_int(value, line, key);
      else fail(line, "unknown key '" + key + "' in [metric]");
    } else {  // output
      if (key == "directory") cfg.output.directory = value;
      else if (key == "precision") cfg.output.precision = parse_int(value, line, key);
      else fail(line, "unknown key '" + key + "' in [output]");
    }
  }

  if (!have_half_width) throw ConfigError("missing required key 'half_width' in [problem]");
  if (!(cfg.problem.half_width > 0.0))
    throw ConfigError("key 'half_width': must be positive");
  if (!std::isfinite(cfg.problem.field)) throw ConfigError("key 'field': must be finite");
  if (!pot_breaks.empty() || !pot_values.empty()) {
    PiecewisePotential pot;
    pot.breakpoints = pot_breaks;
    pot.values = pot_values;
    try {
      validate(pot, cfg.problem.half_width);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("potential: ") + e.what());
    }
    cfg.problem.potential = pot;
  }
  if (cfg.search.window.re_min >= cfg.search.window.re_max ||
      cfg.search.window.im_min >= cfg.search.window.im_max)
    throw ConfigError("search window is empty");
  if (!(cfg.search.tol > 0.0)) throw ConfigError("key 'tol': must be positive");
  if (cfg.sweep.alpha_steps < 2) throw ConfigError("key 'alpha_steps': need at least 2");
  if (cfg.sweep.alpha_min > cfg.sweep.alpha_max)
    throw ConfigError("sweep alpha range is empty");
  if (cfg.pseudo.nx < 2 || cfg.pseudo.ny < 2)
    throw ConfigError("pseudospectrum grid sizes must be >= 2");
  if (cfg.pseudo.n < 8) throw ConfigError("key 'n': discretization needs >= 8 points");
  if (cfg.metric.n_eigs < 1) throw ConfigError("key 'n_eigs': must be >= 1");
  if (cfg.metric.grid_points < 65) throw ConfigError("key 'grid_points': must be >= 65");
  if (cfg.output.precision < 1 || cfg.output.precision > 17)
    throw ConfigError("key 'precision': must be in [1, 17]");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace pauli
