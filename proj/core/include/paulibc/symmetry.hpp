#pragma once

#include "paulibc/types.hpp"

namespace pauli {

/// Entrywise classification of a boundary pair against the discrete
/// symmetries of the spinor Hamiltonian. A flag is set iff the matrix
/// identity characterising the symmetry holds within the tolerance.
struct SymmetryReport {
  bool self_adjoint = false;
  bool pt_symmetric = false;
  bool pk_symmetric = false;
  bool p_self_adjoint = false;
  bool t_self_adjoint = false;
  bool k_self_adjoint = false;
  double tolerance = 0.0;
};

/// Default relative tolerance for the symmetry flags.
inline constexpr double kSymmetryTol = 1e-12;

// Discrete symmetry operators on sampled spinors.
// P: (P Psi)(x) = Psi(-x).  T: i*sigma_2*conj, so T^2 = -1.  K: conj.
SpinorGridFunction apply_parity(const SpinorGridFunction& f);
SpinorGridFunction apply_time_reversal(const SpinorGridFunction& f);
SpinorGridFunction apply_conjugation(const SpinorGridFunction& f);

/// T M T for a 2x2 matrix: [[-conj m22, conj m21], [conj m12, -conj m11]].
Mat2 t_conjugate_matrix(const Mat2& m);

SymmetryReport classify(const BoundaryPair& boundary, double tol = kSymmetryTol);

/// Boundary pair of the adjoint operator: conjugate transpose of both matrices.
BoundaryPair adjoint_boundary(const BoundaryPair& boundary);

}  // namespace pauli
