#pragma once

#include "paulibc/types.hpp"

namespace pauli {

/// Dense 2n x 2n finite-difference discretisation of the spinor operator:
/// three-point stencil per channel, +-b on the diagonal, Robin boundary
/// conditions eliminated through second-order ghost points (coupling the
/// channels through the A^{+-} entries). Channel + occupies rows 0..n-1.
struct DiscreteOperator {
  int n = 0;          // grid points per channel
  double h = 0.0;     // 2a/(n-1)
  Eigen::MatrixXcd mat;
};

DiscreteOperator discretize(const ProblemSpec& spec, int n);

/// Smallest singular value of (M - zI) by inverse power iteration on
/// (M - zI)(M - zI)^*, one LU per factor. Returns 0 when the shifted
/// matrix is singular to machine precision.
double smallest_singular_value(Complex z, const DiscreteOperator& op, double tol);

/// 1/sigma_min(M - zI); +infinity when z is (numerically) a discrete
/// eigenvalue.
double resolvent_norm_estimate(Complex z, const DiscreteOperator& op, double tol);

struct PseudoSample {
  Complex z;
  double sigma_min;  // +infinity marker propagated as is
};

/// Row-major (im outer, re inner) table of sigma_min over a rectangular
/// z-grid with nx x ny points including the region corners.
std::vector<PseudoSample> pseudospectrum_grid(const ProblemSpec& spec,
                                              const SearchRegion& region,
                                              int nx, int ny, int n);

}  // namespace pauli
