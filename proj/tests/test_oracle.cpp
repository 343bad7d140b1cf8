#include <doctest.h>

#include "paulibc/oracle.hpp"
#include "paulibc/secular.hpp"

#include <cmath>

using namespace pauli;

namespace {

const double kA = M_PI / 4.0;

ProblemSpec decoupled_spec(double alpha, double beta, double b, double a = kA) {
  ProblemSpec spec;
  spec.half_width = a;
  spec.field = b;
  spec.boundary.a_plus = Mat2::Identity() * Complex(beta, alpha);
  spec.boundary.a_minus = Mat2::Identity() * Complex(-beta, alpha);
  return spec;
}

ProblemSpec coupled_hermitian_spec(double alpha, double b, double a = kA) {
  ProblemSpec spec;
  spec.half_width = a;
  spec.field = b;
  Mat2 m;
  m << Complex(0, 0), Complex(0, alpha), Complex(0, -alpha), Complex(0, 0);
  spec.boundary.a_plus = m;
  spec.boundary.a_minus = m;
  return spec;
}

double boundary_residual(const SpinorGridFunction& f, const ProblemSpec& spec) {
  // one-sided 4th-order difference for the derivative at each endpoint
  const double h = f.grid[1] - f.grid[0];
  const std::size_t n = f.size();
  auto deriv_left = [&](const std::vector<Complex>& y) {
    return (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) /
           (12.0 * h);
  };
  auto deriv_right = [&](const std::vector<Complex>& y) {
    return (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] +
            3.0 * y[n - 5]) /
           (12.0 * h);
  };
  Vec2 psi_m(f.up.front(), f.dn.front()), dpsi_m(deriv_left(f.up), deriv_left(f.dn));
  Vec2 psi_p(f.up.back(), f.dn.back()), dpsi_p(deriv_right(f.up), deriv_right(f.dn));
  const Vec2 rm = dpsi_m + spec.boundary.a_minus * psi_m;
  const Vec2 rp = dpsi_p + spec.boundary.a_plus * psi_p;
  return std::max(rm.cwiseAbs().maxCoeff(), rp.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("shooting determinant vanishes at an explicit eigenvalue") {
  const ProblemSpec spec = decoupled_spec(1.0, 0.0, 0.4);
  CHECK(std::abs(shooting_determinant(Complex(0.6), spec, 4096)) < 1e-8);
  CHECK(std::abs(shooting_determinant(Complex(0.8), spec, 4096)) > 1e-3);
}

TEST_CASE("shooting agrees with the closed form on zero sets for a barrier-free spec") {
  const ProblemSpec spec = decoupled_spec(0.8, 0.4, 0.3, 1.1);
  for (double lam : {0.5, 1.7, 4.2}) {
    const Complex shoot = shooting_determinant(Complex(lam), spec, 2048);
    const CharValue closed = char_function(Complex(lam), spec);
    const bool shoot_small = std::abs(shoot) < 1e-6;
    const bool closed_small = std::abs(closed.value) < 1e-6 * closed.scale;
    CHECK(shoot_small == closed_small);
  }
}

TEST_CASE("RK4 convergence order") {
  // half-width 1 keeps the potential breakpoints +-0.5 on every grid whose
  // step count is a multiple of 4, so no snapping error pollutes the order
  ProblemSpec spec = decoupled_spec(1.0, 0.5, 0.4, 1.0);
  PiecewisePotential v;
  v.breakpoints = {-0.5, 0.5};
  v.values = {1.5};
  spec.potential = v;
  const Complex lam(2.3, 0.4);
  const Complex ref = shooting_determinant(lam, spec, 16384);
  const double e1 = std::abs(shooting_determinant(lam, spec, 512) - ref);
  const double e2 = std::abs(shooting_determinant(lam, spec, 1024) - ref);
  const double ratio = e1 / e2;
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
}

TEST_CASE("scalar channel shooting matches the spinor determinant for decoupled pairs") {
  const double alpha = 0.9, beta = 0.2, b = 0.4;
  const ProblemSpec spec = decoupled_spec(alpha, beta, b, 0.8);
  const Complex lam(1.3, 0.2);
  const Complex up = scalar_shooting_determinant(lam, +1, 0.8, b, nullptr,
                                                 Complex(-beta, alpha),
                                                 Complex(beta, alpha), 2048);
  const Complex dn = scalar_shooting_determinant(lam, -1, 0.8, b, nullptr,
                                                 Complex(-beta, alpha),
                                                 Complex(beta, alpha), 2048);
  const Complex full = shooting_determinant(lam, spec, 2048);
  CHECK(std::abs(full - up * dn) < 1e-9 * std::max(1.0, std::abs(full)));
}

TEST_CASE("eigenfunction of the decoupled pair satisfies the boundary conditions") {
  const ProblemSpec spec = decoupled_spec(1.0, 0.5, 0.4);
  // locate the lowest real eigenvalue by a coarse scan of |det| followed
  // by a shrinking-step descent
  auto f = [&](double lam) {
    return shooting_determinant(Complex(lam), spec, 2048);
  };
  double lo = 0.1, hi = 2.0, flo = std::abs(f(lo));
  double best = lo;
  for (int i = 0; i <= 200; ++i) {
    const double x = lo + (hi - lo) * i / 200.0;
    const double fx = std::abs(f(x));
    if (fx < flo) flo = fx, best = x;
  }
  // polish with a parabolic step via plain bisection on |f| descent
  double step = (hi - lo) / 200.0;
  while (step > 1e-12) {
    bool moved = false;
    for (double cand : {best - step, best + step})
      if (std::abs(f(cand)) < flo) {
        flo = std::abs(f(cand));
        best = cand;
        moved = true;
      }
    if (!moved) step *= 0.5;
  }
  const SpinorGridFunction ef = eigenfunction(Complex(best), spec, 2048);
  CHECK(boundary_residual(ef, spec) < 1e-6);
  // decoupled boundary: the eigenfunction lives in one channel
  double up_norm = 0.0, dn_norm = 0.0;
  for (std::size_t i = 0; i < ef.size(); ++i) {
    up_norm = std::max(up_norm, std::abs(ef.up[i]));
    dn_norm = std::max(dn_norm, std::abs(ef.dn[i]));
  }
  CHECK(std::min(up_norm, dn_norm) < 1e-6 * std::max(up_norm, dn_norm));
}

TEST_CASE("eigenfunction of the coupled pair mixes both components") {
  const ProblemSpec spec = coupled_hermitian_spec(1.0, 1.0);
  // find the lowest eigenvalue by scanning the closed form
  auto g = [&](double lam) {
    const CharValue f = char_function(Complex(lam), spec);
    return std::abs(f.value) / f.scale;
  };
  double best = -2.0, fbest = g(-2.0);
  for (int i = 0; i <= 400; ++i) {
    const double x = -2.0 + 8.0 * i / 400.0;
    if (g(x) < fbest) fbest = g(x), best = x;
  }
  double step = 0.02;
  while (step > 1e-12) {
    bool moved = false;
    for (double cand : {best - step, best + step})
      if (g(cand) < fbest) {
        fbest = g(cand);
        best = cand;
        moved = true;
      }
    if (!moved) step *= 0.5;
  }
  const SpinorGridFunction ef = eigenfunction(Complex(best), spec, 2048);
  double up_norm = 0.0, dn_norm = 0.0;
  for (std::size_t i = 0; i < ef.size(); ++i) {
    up_norm = std::max(up_norm, std::abs(ef.up[i]));
    dn_norm = std::max(dn_norm, std::abs(ef.dn[i]));
  }
  CHECK(up_norm > 1e-3);
  CHECK(dn_norm > 1e-3);
  CHECK(boundary_residual(ef, spec) < 1e-5);
}

TEST_CASE("eigenfunction_basis is empty away from the spectrum") {
  const ProblemSpec spec = decoupled_spec(1.0, 0.0, 0.4);
  CHECK(eigenfunction_basis(Complex(0.9, 0.1), spec, 512).empty());
  CHECK_THROWS_AS(eigenfunction(Complex(0.9, 0.1), spec, 512), NumericalError);
}
