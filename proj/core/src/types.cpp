#include "paulibc/types.hpp"

#include <cmath>

namespace pauli {

bool is_finite(const Mat2& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

void validate(const BoundaryPair& b) {
  if (!is_finite(b.a_plus) || !is_finite(b.a_minus))
    throw std::invalid_argument("BoundaryPair: non-finite matrix entry");
}

double PiecewisePotential::at(double x) const {
  if (breakpoints.empty()) return 0.0;
  if (x <= breakpoints.front() || x >= breakpoints.back()) return 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (x < breakpoints[i + 1]) return values[i];
  return 0.0;
}

void validate(const PiecewisePotential& v, double half_width) {
  if (v.breakpoints.empty() && v.values.empty()) return;
  if (v.breakpoints.size() < 2 || v.values.size() + 1 != v.breakpoints.size())
    throw std::invalid_argument("PiecewisePotential: need k+1 breakpoints for k values");
  for (std::size_t i = 0; i + 1 < v.breakpoints.size(); ++i)
    if (!(v.breakpoints[i] < v.breakpoints[i + 1]))
      throw std::invalid_argument("PiecewisePotential: breakpoints must be strictly increasing");
  if (!(v.breakpoints.front() > -half_width) || !(v.breakpoints.back() < half_width))
    throw std::invalid_argument("PiecewisePotential: support must lie inside (-a,a)");
  for (double val : v.values)
    if (!std::isfinite(val)) throw std::invalid_argument("PiecewisePotential: non-finite value");
}

void validate(const ProblemSpec& spec) {
  if (!(spec.half_width > 0.0)) throw std::invalid_argument("ProblemSpec: half_width must be positive");
  if (!std::isfinite(spec.field)) throw std::invalid_argument("ProblemSpec: field must be finite");
  validate(spec.boundary);
  if (spec.potential) validate(*spec.potential, spec.half_width);
}

SpinorGridFunction make_spinor_grid(double half_width, std::size_t n_points) {
  if (n_points < 3) throw std::invalid_argument("spinor grid needs at least 3 points");
  SpinorGridFunction f;
  f.grid.resize(n_points);
  const double h = 2.0 * half_width / double(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) f.grid[i] = -half_width + double(i) * h;
  f.grid.front() = -half_width;
  f.grid.back() = half_width;
  f.up.assign(n_points, Complex(0));
  f.dn.assign(n_points, Complex(0));
  return f;
}

void validate(const SpinorGridFunction& f) {
  if (f.grid.size() < 3) throw std::invalid_argument("spinor grid needs at least 3 points");
  if (f.up.size() != f.grid.size() || f.dn.size() != f.grid.size())
    throw std::invalid_argument("spinor grid/value size mismatch");
  for (std::size_t i = 0; i + 1 < f.grid.size(); ++i)
    if (!(f.grid[i] < f.grid[i + 1]))
      throw std::invalid_argument("spinor grid must be strictly increasing");
  if (std::abs(f.grid.front() + f.grid.back()) > 1e-14 * std::abs(f.grid.back()))
    throw std::invalid_argument("spinor grid endpoints must be symmetric (+-a)");
}

double SearchRegion::diameter() const { return std::hypot(width(), height()); }

void validate(const SearchRegion& r) {
  if (!(r.re_min < r.re_max) || !(r.im_min < r.im_max))
    throw std::invalid_argument("SearchRegion: empty rectangle");
}

}  // namespace pauli
