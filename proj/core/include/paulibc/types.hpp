#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pauli {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;

/// Thrown when a numerical procedure cannot certify its result
/// (unresolved contour, disagreeing solver routes, ...). The CLI maps
/// this to exit code 2, as opposed to configuration errors (exit 1).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The two complex Robin matrices of the boundary conditions
/// Psi'(+-a) + A^{+-} Psi(+-a) = 0, stored exactly as given.
struct BoundaryPair {
  Mat2 a_plus;   // matrix at x = +a
  Mat2 a_minus;  // matrix at x = -a
};

bool is_finite(const Mat2& m);
void validate(const BoundaryPair& b);

/// Piecewise-constant electric potential supported inside (-a,a).
/// values[i] is the constant on (breakpoints[i], breakpoints[i+1]);
/// V = 0 outside [breakpoints.front(), breakpoints.back()].
struct PiecewisePotential {
  std::vector<double> breakpoints;
  std::vector<double> values;

  double at(double x) const;
};

void validate(const PiecewisePotential& v, double half_width);

/// Dimensionless data of the spinor Hamiltonian on (-a,a):
/// two channels -d^2/dx^2 +- field (+ optional potential),
/// coupled through the Robin boundary matrices.
struct ProblemSpec {
  double half_width = 1.0;  // a > 0
  double field = 0.0;       // b, sign meaningful (channel + carries +b)
  BoundaryPair boundary;
  std::optional<PiecewisePotential> potential;
};

void validate(const ProblemSpec& spec);

/// Two-component spinor sampled on a uniform closed grid over [-a,a].
struct SpinorGridFunction {
  std::vector<double> grid;
  std::vector<Complex> up;  // psi_+
  std::vector<Complex> dn;  // psi_-

  std::size_t size() const { return grid.size(); }
};

SpinorGridFunction make_spinor_grid(double half_width, std::size_t n_points);
void validate(const SpinorGridFunction& f);

/// Axis-aligned rectangle in the complex spectral plane.
struct SearchRegion {
  double re_min, re_max, im_min, im_max;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  double diameter() const;
  Complex center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
};

void validate(const SearchRegion& r);

}  // namespace pauli
