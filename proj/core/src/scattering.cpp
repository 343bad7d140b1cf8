#include "paulibc/scattering.hpp"

#include "paulibc/oracle.hpp"
#include "paulibc/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pauli {

namespace {

constexpr Complex kImag(0.0, 1.0);

void check_channel(int channel) {
  if (channel != 1 && channel != -1)
    throw std::invalid_argument("channel must be +1 (upper) or -1 (lower)");
}

// piece boundaries covering [-a, a] with the potential value per piece
struct Pieces {
  std::vector<double> x;  // m+1 boundaries
  std::vector<double> v;  // m values
};

Pieces build_pieces(const PiecewisePotential& pot, double a) {
  Pieces p;
  p.x.push_back(-a);
  if (!pot.values.empty()) {
    for (std::size_t i = 0; i < pot.breakpoints.size(); ++i) {
      p.x.push_back(pot.breakpoints[i]);
      p.v.push_back(i == 0 ? 0.0 : pot.values[i - 1]);
    }
    p.v.push_back(0.0);
  }
  p.x.push_back(a);
  if (p.v.empty()) p.v.push_back(0.0);
  return p;
}

// (psi, psi') propagator across a constant piece; entire in mu
Mat2 piece_propagator(Complex mu, double length) {
  const double half = 0.5 * length;
  const Complex c = trig_c(mu, half);
  const Complex s = trig_s(mu, half);
  Mat2 P;
  P << c, s, -mu * s, c;
  return P;
}

}  // namespace

BoundaryPair energy_dependent_boundary(double alpha, double field) {
  const Complex kp = std::sqrt(Complex(alpha - field));
  const Complex km = std::sqrt(Complex(alpha + field));
  Mat2 A;
  A << -kImag * kp, Complex(0.0), Complex(0.0), -kImag * km;
  return {A, A};
}

Mat2 transfer_matrix(Complex lambda, int channel, const PiecewisePotential& potential,
                     double field, double half_width) {
  check_channel(channel);
  if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be positive");
  validate(potential, half_width);

  const Complex mu_out = lambda - double(channel) * field;
  const Pieces pieces = build_pieces(potential, half_width);

  Mat2 P = Mat2::Identity();
  for (std::size_t i = 0; i < pieces.v.size(); ++i) {
    const double len = pieces.x[i + 1] - pieces.x[i];
    if (len <= 0.0) continue;
    P = piece_propagator(mu_out - pieces.v[i], len) * P;
  }

  const double a = half_width;
  const Complex k = std::sqrt(mu_out);
  if (std::abs(mu_out) < 1e-14 * (1.0 + std::abs(lambda))) {
    // threshold: outer solutions are 1 and x
    Mat2 Sm, Sp_inv;
    Sm << Complex(1.0), Complex(-a), Complex(0.0), Complex(1.0);
    Sp_inv << Complex(1.0), Complex(-a), Complex(0.0), Complex(1.0);
    return Sp_inv * P * Sm;
  }
  const Complex ep = std::exp(kImag * k * a), em = std::exp(-kImag * k * a);
  Mat2 Sm, Sp;
  Sm << em, ep, kImag * k * em, -kImag * k * ep;  // S(-a)
  Sp << ep, em, kImag * k * ep, -kImag * k * em;  // S(+a)
  return Sp.inverse() * P * Sm;
}

ChannelScattering transmission(Complex lambda, int channel,
                               const PiecewisePotential& potential, double field,
                               double half_width) {
  const Mat2 M = transfer_matrix(lambda, channel, potential, field, half_width);
  ChannelScattering out;
  out.channel = channel;
  if (M(1, 1) == Complex(0.0))
    throw NumericalError("transmission: vanishing m22 (total reflection limit)");
  out.r = -M(1, 0) / M(1, 1);
  out.t = M(0, 0) + M(0, 1) * out.r;
  return out;
}

// ---- perfect-transmission energies ------------------------------------

namespace {

constexpr int kShootSteps = 4096;

// shooting determinant of the linear alpha-problem in a single channel:
// scalar Robin parameter -i sqrt(alpha - channel*b) at both endpoints
// (alpha may be complex so diagonal Newton probes stay analytic)
Complex channel_determinant(Complex lambda, Complex alpha, int channel,
                            const ProblemSpec& spec) {
  const Complex p = -kImag * std::sqrt(alpha - double(channel) * spec.field);
  return scalar_shooting_determinant(lambda, channel, spec.half_width, spec.field,
                                     spec.potential ? &*spec.potential : nullptr, p, p,
                                     kShootSteps);
}

// Newton in complex lambda at fixed alpha, finite-difference derivative
bool newton_lambda(Complex& lambda, double alpha, int channel, const ProblemSpec& spec,
                   double tol) {
  Complex z = lambda;
  for (int it = 0; it < 60; ++it) {
    const Complex f = channel_determinant(z, alpha, channel, spec);
    const double h = 1e-6 * (1.0 + std::abs(z));
    const Complex df = (channel_determinant(z + h, alpha, channel, spec) -
                        channel_determinant(z - h, alpha, channel, spec)) /
                       (2.0 * h);
    if (df == Complex(0.0)) return false;
    const Complex step = f / df;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(step) < 0.01 * tol * (1.0 + std::abs(z))) {
      lambda = z;
      return true;
    }
  }
  return false;
}

// Newton in complex alpha along the diagonal lambda = alpha
bool newton_diagonal(Complex& alpha, int channel, const ProblemSpec& spec, double tol) {
  auto h_of = [&](Complex a) { return channel_determinant(a, a, channel, spec); };
  Complex z = alpha;
  for (int it = 0; it < 60; ++it) {
    const Complex f = h_of(z);
    const double h = 1e-6 * (1.0 + std::abs(z));
    const Complex df = (h_of(z + h) - h_of(z - h)) / (2.0 * h);
    if (df == Complex(0.0)) return false;
    const Complex step = f / df;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(step) < 0.01 * tol * (1.0 + std::abs(z))) {
      alpha = z;
      return true;
    }
  }
  return false;
}

std::vector<double> dedup_sorted(std::vector<double> xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

// DIRECT route: real roots of alpha -> det(lambda = alpha; A_alpha)
std::vector<double> pte_direct(int channel, const ProblemSpec& spec, double lambda_max,
                               double tol, double grid_lo, double& scale_out) {
  const int n_grid = 120;
  std::vector<double> grid(n_grid), absh(n_grid);
  double scale = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    grid[i] = grid_lo + (lambda_max - grid_lo) * (double(i) + 0.5) / n_grid;
    absh[i] = std::abs(channel_determinant(grid[i], grid[i], channel, spec));
    scale = std::max(scale, absh[i]);
  }
  scale_out = scale;
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  for (int i = 0; i < n_grid; ++i) {
    if (i > 0 && absh[i] > absh[i - 1]) continue;
    if (i + 1 < n_grid && absh[i] > absh[i + 1]) continue;
    Complex z(grid[i], 0.0);
    if (!newton_diagonal(z, channel, spec, tol)) continue;
    if (std::abs(z.imag()) >= tol) continue;
    const double lam = z.real();
    if (lam <= grid_lo || lam > lambda_max) continue;
    if (std::abs(channel_determinant(lam, lam, channel, spec)) > 1e-5 * scale) continue;
    roots.push_back(lam);
  }
  return dedup_sorted(std::move(roots), std::max(10.0 * tol, 1e-9));
}

// real eigenvalues of the linear alpha-problem in a lambda window
std::vector<double> real_eigenvalues_at(double alpha, int channel, const ProblemSpec& spec,
                                        double lo, double hi, double tol) {
  const double gap = std::pow(M_PI / (2.0 * spec.half_width), 2.0);
  const double step = std::min(0.1, gap / 6.0);
  std::vector<double> lam_grid, absd;
  for (double x = lo; x <= hi; x += step) {
    lam_grid.push_back(x);
    absd.push_back(std::abs(channel_determinant(x, alpha, channel, spec)));
  }
  double scale = 0.0;
  for (double v : absd) scale = std::max(scale, v);
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  for (std::size_t i = 0; i < lam_grid.size(); ++i) {
    if (i > 0 && absd[i] > absd[i - 1]) continue;
    if (i + 1 < lam_grid.size() && absd[i] > absd[i + 1]) continue;
    Complex z(lam_grid[i], 0.0);
    if (!newton_lambda(z, alpha, channel, spec, tol)) continue;
    if (std::abs(z.imag()) >= 100.0 * tol) continue;
    if (z.real() < lo - step || z.real() > hi + step) continue;
    if (std::abs(channel_determinant(z, alpha, channel, spec)) > 1e-5 * scale) continue;
    roots.push_back(z.real());
  }
  return dedup_sorted(std::move(roots), std::max(10.0 * tol, 1e-9));
}

// EIGENCURVE route: track lambda_n(alpha) on the grid and solve
// lambda_n(alpha) = alpha by secant with Newton-polished branch values.
// Complex eigenvalue pairs can land on the real axis between grid points,
// creating branches that exist on one side of an interval only; intervals
// whose branch topology changes are bisected in alpha until every branch
// continues across them.
class EigencurveScan {
 public:
  EigencurveScan(int channel, const ProblemSpec& spec, double lambda_max, double tol,
                 double grid_lo)
      : channel_(channel), spec_(spec), lambda_max_(lambda_max), tol_(tol),
        grid_lo_(grid_lo),
        jump_tol_(0.5 * std::pow(M_PI / (2.0 * spec.half_width), 2.0)) {}

  std::vector<double> run() {
    const int n_grid = 100;
    std::vector<double> alphas(n_grid);
    std::vector<std::vector<double>> eig(n_grid);
    for (int i = 0; i < n_grid; ++i) {
      alphas[i] = grid_lo_ + (lambda_max_ - grid_lo_) * (double(i) + 0.5) / n_grid;
      eig[i] = branches_at(alphas[i]);
    }
    for (int i = 0; i + 1 < n_grid; ++i)
      scan_interval(alphas[i], eig[i], alphas[i + 1], eig[i + 1], kMaxDepth);
    return dedup_sorted(std::move(fixed_points_), std::max(10.0 * tol_, 1e-9));
  }

 private:
  static constexpr int kMaxDepth = 40;  // alpha resolution ~1e-13 of a step

  std::vector<double> branches_at(double alpha) const {
    return real_eigenvalues_at(alpha, channel_, spec_, grid_lo_, lambda_max_ + 1.0,
                               tol_);
  }

  static double nearest_gap(double x, const std::vector<double>& ys) {
    double best = std::numeric_limits<double>::infinity();
    for (double y : ys) best = std::min(best, std::abs(y - x));
    return best;
  }

  void scan_interval(double a0, const std::vector<double>& e0, double a1,
                     const std::vector<double>& e1, int depth) {
    bool regular = e0.size() == e1.size();
    if (regular)
      for (std::size_t j = 0; j < e0.size(); ++j)
        if (std::abs(e1[j] - e0[j]) > jump_tol_) regular = false;
    if (regular) {
      for (std::size_t j = 0; j < e0.size(); ++j) {
        const double f0 = e0[j] - a0;
        const double f1 = e1[j] - a1;
        if (f0 == 0.0 || f0 * f1 > 0.0) continue;
        solve_on_branch(a0, f0, a1, f1, e0[j]);
      }
      return;
    }

    // a branch was born, died, or moved too fast; the lambda range of the
    // offending branches tells whether a fixed point can hide there
    double r_lo = std::numeric_limits<double>::infinity();
    double r_hi = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (double x : e0)
      if (nearest_gap(x, e1) > jump_tol_) {
        r_lo = std::min(r_lo, x); r_hi = std::max(r_hi, x); found = true;
      }
    for (double y : e1)
      if (nearest_gap(y, e0) > jump_tol_) {
        r_lo = std::min(r_lo, y); r_hi = std::max(r_hi, y); found = true;
      }
    const bool near_diagonal =
        !found || (r_hi + jump_tol_ >= a0 && r_lo - jump_tol_ <= a1);
    if (near_diagonal && depth > 0 && a1 - a0 > 1e-13 * (1.0 + std::abs(a1))) {
      const double am = 0.5 * (a0 + a1);
      const std::vector<double> em = branches_at(am);
      scan_interval(a0, e0, am, em, depth - 1);
      scan_interval(am, em, a1, e1, depth - 1);
      return;
    }
    // topology change away from the diagonal (or depth exhausted): still
    // sign-check the branches that do continue across the interval
    for (double lam0 : e0) {
      double best = std::numeric_limits<double>::infinity();
      double lam1 = lam0;
      for (double cand : e1)
        if (std::abs(cand - lam0) < best) {
          best = std::abs(cand - lam0);
          lam1 = cand;
        }
      if (!std::isfinite(best) || best > jump_tol_) continue;
      const double f0 = lam0 - a0;
      const double f1 = lam1 - a1;
      if (f0 == 0.0 || f0 * f1 > 0.0) continue;
      solve_on_branch(a0, f0, a1, f1, lam0);
    }
  }

  // secant on alpha -> lambda_branch(alpha) - alpha
  void solve_on_branch(double a0, double g0, double a1, double g1, double lam_warm) {
    for (int it = 0; it < 60; ++it) {
      if (g1 == g0) return;
      const double an = a1 - g1 * (a1 - a0) / (g1 - g0);
      Complex z(lam_warm, 0.0);
      if (!newton_lambda(z, an, channel_, spec_, tol_)) return;
      lam_warm = z.real();
      const double gn = lam_warm - an;
      a0 = a1; g0 = g1; a1 = an; g1 = gn;
      if (std::abs(gn) < 0.5 * tol_) {
        if (a1 > grid_lo_ && a1 <= lambda_max_) fixed_points_.push_back(a1);
        return;
      }
    }
  }

  int channel_;
  const ProblemSpec& spec_;
  double lambda_max_, tol_, grid_lo_, jump_tol_;
  std::vector<double> fixed_points_;
};

std::vector<double> pte_eigencurve(int channel, const ProblemSpec& spec, double lambda_max,
                                   double tol, double grid_lo) {
  return EigencurveScan(channel, spec, lambda_max, tol, grid_lo).run();
}

}  // namespace

PTEResult pte_solve(const ProblemSpec& spec, double lambda_max, double tol) {
  validate(spec);
  if (!(tol > 0.0)) throw std::invalid_argument("pte_solve: tol must be positive");
  const double b_abs = std::abs(spec.field);
  if (!(lambda_max > b_abs))
    throw std::invalid_argument("pte_solve: lambda_max must exceed |b|");

  PTEResult result;
  if (!spec.potential || spec.potential->values.empty()) {
    result.trivially_perfect = true;  // free propagation matches identically
    return result;
  }

  const double grid_lo = b_abs + 0.02 * (lambda_max - b_abs);
  for (int channel : {+1, -1}) {
    double scale = 0.0;
    std::vector<double> direct = pte_direct(channel, spec, lambda_max, tol, grid_lo, scale);
    if (scale == 0.0) {
      result.trivially_perfect = true;
      continue;
    }
    std::vector<double> curve = pte_eigencurve(channel, spec, lambda_max, tol, grid_lo);

    const double agree = 10.0 * tol;
    bool match = direct.size() == curve.size();
    if (match)
      for (std::size_t i = 0; i < direct.size(); ++i)
        if (std::abs(direct[i] - curve[i]) > agree) match = false;
    if (!match) {
      std::ostringstream os;
      os << "pte_solve: routes disagree in channel " << (channel > 0 ? "+" : "-")
         << "; direct = {";
      for (double x : direct) os << " " << x;
      os << " }, eigencurve = {";
      for (double x : curve) os << " " << x;
      os << " }";
      throw NumericalError(os.str());
    }

    for (std::size_t n = 0; n < direct.size(); ++n) {
      const double lam = direct[n];
      const ChannelScattering sc =
          transmission(lam, channel, *spec.potential, spec.field, spec.half_width);
      if (std::abs(sc.r) >= 10.0 * tol) {
        std::ostringstream os;
        os << "pte_solve: candidate " << lam << " fails the no-reflection check, |r| = "
           << std::abs(sc.r);
        throw NumericalError(os.str());
      }
      PTERecord rec;
      rec.lambda_star = lam;
      rec.channel = channel;
      rec.branch = int(n);
      rec.residual = std::abs(channel_determinant(lam, lam, channel, spec)) / scale;
      result.records.push_back(rec);
    }
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const PTERecord& a, const PTERecord& b) {
              return std::make_pair(a.lambda_star, a.channel) <
                     std::make_pair(b.lambda_star, b.channel);
            });
  return result;
}

}  // namespace pauli
