#pragma once

#include "paulibc/types.hpp"

namespace pauli {

/// Per-channel scattering data at energy lambda (incoming from the left).
/// For real lambda above the channel threshold, |t|^2 + |r|^2 = 1.
struct ChannelScattering {
  int channel;  // +1 upper component (+b), -1 lower component (-b)
  Complex t, r;
};

/// Record of a perfect-transmission energy (a real fixed point of the
/// energy-dependent boundary problem).
struct PTERecord {
  double lambda_star;
  int channel;
  int branch;
  double residual;
};

struct PTEResult {
  // with V = 0 the matching is identically satisfied: every energy above
  // threshold transmits perfectly and no discrete records exist
  bool trivially_perfect = false;
  std::vector<PTERecord> records;
};

/// The energy-dependent Robin pair diag(-i sqrt(alpha-b), -i sqrt(alpha+b))
/// at both endpoints (principal branch below threshold).
BoundaryPair energy_dependent_boundary(double alpha, double field);

/// 2x2 transfer matrix in the outer e^{+-ikx} basis, k = sqrt(lambda -
/// channel*b), mapping amplitude pairs at -a to +a; det = 1. At the
/// channel threshold k = 0 the outer basis degenerates and the matrix is
/// returned in the linear-solution basis {1, x} instead.
Mat2 transfer_matrix(Complex lambda, int channel, const PiecewisePotential& potential,
                     double field, double half_width);

ChannelScattering transmission(Complex lambda, int channel,
                               const PiecewisePotential& potential, double field,
                               double half_width);

/// Perfect-transmission energies in (|b|, lambda_max] for both channels,
/// computed by two independent routes (lambda = alpha substitution in the
/// shooting determinant, and fixed points of the eigencurves of the linear
/// alpha-problem). Throws NumericalError when the routes disagree.
PTEResult pte_solve(const ProblemSpec& spec, double lambda_max, double tol);

}  // namespace pauli
