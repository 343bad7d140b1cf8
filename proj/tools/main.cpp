// Command-line front end: reads a run config, dispatches one subcommand,
// writes a CSV. Exit codes: 0 success, 1 bad config/usage, 2 numerical
// failure.

#include "paulibc/config.hpp"
#include "paulibc/metric.hpp"
#include "paulibc/oracle.hpp"
#include "paulibc/pseudo.hpp"
#include "paulibc/scattering.hpp"
#include "paulibc/secular.hpp"
#include "paulibc/spectra.hpp"
#include "paulibc/symmetry.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace pauli;

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string csv_header(const RunConfig& cfg, const std::string& columns) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, cfg.hash);
  return "# config " + std::string(buf) + "\n" + columns + "\n";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << body;
}

std::string run_classify(const RunConfig& cfg) {
  const SymmetryReport rep = classify(cfg.problem.boundary);
  std::ostringstream os;
  os << csv_header(cfg, "flag,value");
  os << "self_adjoint," << (rep.self_adjoint ? 1 : 0) << "\n";
  os << "pt_symmetric," << (rep.pt_symmetric ? 1 : 0) << "\n";
  os << "pk_symmetric," << (rep.pk_symmetric ? 1 : 0) << "\n";
  os << "p_self_adjoint," << (rep.p_self_adjoint ? 1 : 0) << "\n";
  os << "t_self_adjoint," << (rep.t_self_adjoint ? 1 : 0) << "\n";
  os << "k_self_adjoint," << (rep.k_self_adjoint ? 1 : 0) << "\n";
  os << "tolerance," << fmt(rep.tolerance, cfg.output.precision) << "\n";
  return os.str();
}

std::string run_spectrum(const RunConfig& cfg) {
  const std::vector<Eigenvalue> eigs =
      find_eigenvalues(cfg.problem, cfg.search.window, cfg.search.tol);
  std::ostringstream os;
  os << csv_header(cfg, "re_lambda,im_lambda,alg_mult,geom_mult,residual");
  const int p = cfg.output.precision;
  for (const Eigenvalue& e : eigs)
    os << fmt(e.lambda.real(), p) << ',' << fmt(e.lambda.imag(), p) << ','
       << e.algebraic_mult << ',' << e.geometric_mult << ','
       << fmt(e.residual, p) << "\n";
  return os.str();
}

BoundaryFamily make_family(const RunConfig& cfg) {
  const double beta = cfg.sweep.beta;
  const double b = cfg.problem.field;
  switch (cfg.sweep.family) {
    case SweepFamily::ExA:
      return [](double alpha) {
        Mat2 m;
        m << Complex(0, 0), Complex(0, alpha), Complex(0, -alpha), Complex(0, 0);
        return BoundaryPair{m, m};
      };
    case SweepFamily::ExB:
      return [beta](double alpha) {
        return BoundaryPair{Mat2(Mat2::Identity() * Complex(beta, alpha)),
                            Mat2(Mat2::Identity() * Complex(-beta, alpha))};
      };
    case SweepFamily::ExPT:
      return [](double alpha) {
        Mat2 plus, minus;
        plus << Complex(0, 0), Complex(0, alpha), Complex(0, alpha), Complex(0, 0);
        minus = -plus;
        return BoundaryPair{plus, minus};
      };
    case SweepFamily::BcEnergy:
      return [b](double alpha) { return energy_dependent_boundary(alpha, b); };
    case SweepFamily::Custom:
      return [boundary = cfg.problem.boundary](double) { return boundary; };
  }
  throw ConfigError("unreachable sweep family");
}

std::string run_sweep(const RunConfig& cfg) {
  std::vector<double> alphas(cfg.sweep.alpha_steps);
  for (int i = 0; i < cfg.sweep.alpha_steps; ++i)
    alphas[i] = cfg.sweep.alpha_min + (cfg.sweep.alpha_max - cfg.sweep.alpha_min) *
                                          i / (cfg.sweep.alpha_steps - 1);
  const SweepResult res = sweep(make_family(cfg), cfg.problem, alphas,
                                cfg.search.window, cfg.search.tol);

  // the event column is filled on the first branch row of the grid point
  // closing each event's bracketing interval
  std::vector<std::string> event_at(alphas.size());
  for (const SweepEvent& e : res.events) {
    for (std::size_t i = 0; i < alphas.size(); ++i)
      if (alphas[i] == e.alpha_hi) {
        if (!event_at[i].empty()) event_at[i] += ';';
        event_at[i] += to_string(e.kind);
        break;
      }
  }

  std::ostringstream os;
  os << csv_header(cfg, "alpha,branch_id,re_lambda,im_lambda,event");
  const int p = cfg.output.precision;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    bool first_row = true;
    for (const SweepBranch& br : res.branches) {
      if (!br.values[i]) continue;
      os << fmt(alphas[i], p) << ',' << br.id << ','
         << fmt(br.values[i]->real(), p) << ',' << fmt(br.values[i]->imag(), p)
         << ',' << (first_row ? event_at[i] : std::string()) << "\n";
      first_row = false;
    }
  }
  return os.str();
}

std::string run_enclosure(const RunConfig& cfg) {
  const EnclosureRegion region = enclosure(cfg.problem);
  std::ostringstream os;
  os << csv_header(cfg, "re_z,im_z_boundary");
  const int p = cfg.output.precision;
  const int n = 513;
  const double re_lo = -region.c_const;
  const double re_hi = std::max(cfg.search.window.re_max, re_lo + 1.0);
  for (int i = 0; i < n; ++i) {
    const double re = re_lo + (re_hi - re_lo) * i / (n - 1);
    const double im = region.slope * std::sqrt(std::max(0.0, re - re_lo)) + region.offset;
    os << fmt(re, p) << ',' << fmt(im, p) << "\n";
  }
  return os.str();
}

std::string run_pseudospectrum(const RunConfig& cfg) {
  const std::vector<PseudoSample> table = pseudospectrum_grid(
      cfg.problem, cfg.search.window, cfg.pseudo.nx, cfg.pseudo.ny, cfg.pseudo.n);
  std::ostringstream os;
  os << csv_header(cfg, "re_z,im_z,sigma_min");
  const int p = cfg.output.precision;
  for (const PseudoSample& s : table)
    os << fmt(s.z.real(), p) << ',' << fmt(s.z.imag(), p) << ','
       << fmt(s.sigma_min, p) << "\n";
  return os.str();
}

std::string run_pte(const RunConfig& cfg) {
  const PTEResult res = pte_solve(cfg.problem, cfg.search.lambda_max, cfg.search.tol);
  std::ostringstream os;
  os << csv_header(cfg, "lambda_star,channel,branch,residual");
  if (res.trivially_perfect) os << "# trivially_perfect\n";
  const int p = cfg.output.precision;
  for (const PTERecord& r : res.records)
    os << fmt(r.lambda_star, p) << ',' << r.channel << ',' << r.branch << ','
       << fmt(r.residual, p) << "\n";
  return os.str();
}

std::string run_metric(const RunConfig& cfg) {
  MetricParams mp;
  mp.alpha = cfg.metric.alpha;
  mp.beta = cfg.metric.beta;
  mp.c = cfg.metric.c;
  mp.a = cfg.problem.half_width;
  const Eigen::MatrixXcd gram =
      theta_orthogonality(cfg.problem, mp, cfg.metric.n_eigs, cfg.metric.grid_points);
  double offdiag = 0.0;
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(gram(i, j)));
  const PositivityResult pos = theta_positivity(mp, std::min(cfg.metric.grid_points, 512));

  std::ostringstream os;
  os << csv_header(cfg, "flag,value");
  const int p = cfg.output.precision;
  os << "offdiag_max," << fmt(offdiag, p) << "\n";
  os << "positive," << (pos.positive ? 1 : 0) << "\n";
  os << "smallest_eigenvalue," << fmt(pos.smallest_eigenvalue, p) << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolbox for the 2x2 spinor Robin problem on an interval"};
  app.require_subcommand(1);

  std::string config_path, output_path;
  const std::vector<std::string> names = {"classify",       "spectrum", "sweep",
                                          "enclosure",      "pte",      "metric",
                                          "pseudospectrum"};
  for (const std::string& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "run configuration file")->required();
    sub->add_option("-o,--output", output_path, "output CSV path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const pauli::RunConfig cfg = pauli::load_config(config_path);
    std::string body;
    if (sub == "classify") body = run_classify(cfg);
    else if (sub == "spectrum") body = run_spectrum(cfg);
    else if (sub == "sweep") body = run_sweep(cfg);
    else if (sub == "enclosure") body = run_enclosure(cfg);
    else if (sub == "pseudospectrum") body = run_pseudospectrum(cfg);
    else if (sub == "pte") body = run_pte(cfg);
    else body = run_metric(cfg);

    if (output_path.empty()) output_path = cfg.output.directory + "/" + sub + ".csv";
    write_file(output_path, body);
    return 0;
  } catch (const pauli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const pauli::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
