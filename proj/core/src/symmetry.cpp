#include "paulibc/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace pauli {

namespace {

double max_entry_norm(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max({m, std::abs(a(i, j)), std::abs(b(i, j))});
  return m;
}

bool entrywise_close(const Mat2& a, const Mat2& b, double abs_tol) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(a(i, j) - b(i, j)) > abs_tol) return false;
  return true;
}

}  // namespace

SpinorGridFunction apply_parity(const SpinorGridFunction& f) {
  validate(f);
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double mirror = -f.grid[n - 1 - i];
    if (std::abs(f.grid[i] - mirror) > 1e-12 * (std::abs(f.grid.back()) + 1.0))
      throw std::invalid_argument("apply_parity: grid not symmetric about 0");
  }
  SpinorGridFunction g = f;
  std::reverse(g.up.begin(), g.up.end());
  std::reverse(g.dn.begin(), g.dn.end());
  return g;
}

SpinorGridFunction apply_time_reversal(const SpinorGridFunction& f) {
  validate(f);
  SpinorGridFunction g = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    g.up[i] = std::conj(f.dn[i]);
    g.dn[i] = -std::conj(f.up[i]);
  }
  return g;
}

SpinorGridFunction apply_conjugation(const SpinorGridFunction& f) {
  validate(f);
  SpinorGridFunction g = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    g.up[i] = std::conj(f.up[i]);
    g.dn[i] = std::conj(f.dn[i]);
  }
  return g;
}

Mat2 t_conjugate_matrix(const Mat2& m) {
  Mat2 r;
  r << -std::conj(m(1, 1)), std::conj(m(1, 0)),
        std::conj(m(0, 1)), -std::conj(m(0, 0));
  return r;
}

SymmetryReport classify(const BoundaryPair& boundary, double tol) {
  validate(boundary);
  if (tol < 0.0) throw std::invalid_argument("classify: tol must be nonnegative");
  const Mat2& ap = boundary.a_plus;
  const Mat2& am = boundary.a_minus;
  const double scale = std::max(max_entry_norm(ap, am), 1.0);
  const double abs_tol = tol * scale;

  SymmetryReport rep;
  rep.tolerance = tol;
  rep.self_adjoint = entrywise_close(ap.adjoint(), ap, abs_tol) &&
                     entrywise_close(am.adjoint(), am, abs_tol);
  rep.pt_symmetric = entrywise_close(am, t_conjugate_matrix(ap), abs_tol);
  rep.pk_symmetric = entrywise_close(am, Mat2(-ap.conjugate()), abs_tol);
  rep.p_self_adjoint = entrywise_close(am, Mat2(-ap.adjoint()), abs_tol);
  // T-self-adjoint: both matrices scalar multiples of the identity.
  auto is_scalar = [abs_tol](const Mat2& m) {
    return std::abs(m(0, 1)) <= abs_tol && std::abs(m(1, 0)) <= abs_tol &&
           std::abs(m(0, 0) - m(1, 1)) <= abs_tol;
  };
  rep.t_self_adjoint = is_scalar(ap) && is_scalar(am);
  // K-self-adjoint: (A)^* = conj(A), i.e. both matrices symmetric.
  rep.k_self_adjoint = std::abs(ap(0, 1) - ap(1, 0)) <= abs_tol &&
                       std::abs(am(0, 1) - am(1, 0)) <= abs_tol;
  return rep;
}

BoundaryPair adjoint_boundary(const BoundaryPair& boundary) {
  validate(boundary);
  return {boundary.a_plus.adjoint(), boundary.a_minus.adjoint()};
}

}  // namespace pauli
