#pragma once

#include "paulibc/types.hpp"

namespace pauli {

/// Independent verification path: fixed-step RK4 shooting across [-a,a].
/// Integrates the two channel equations -psi'' + (V +- b) psi = lambda psi
/// for the two spinor solutions spanning the left boundary subspace
/// { Psi(-a) = e_i, Psi'(-a) = -A^- e_i } and returns the determinant of
/// the 2x2 matrix with columns Psi_i'(a) + A^+ Psi_i(a). Its zero set is
/// the spectrum (up to O(steps^-4) discretisation error).
Complex shooting_determinant(Complex lambda, const ProblemSpec& spec, int steps);

/// Single-channel variant with scalar Robin parameters: integrates
/// -psi'' + (V + channel_sign*b) psi = lambda psi with psi(-a) = 1,
/// psi'(-a) = -robin_minus and returns psi'(a) + robin_plus * psi(a).
Complex scalar_shooting_determinant(Complex lambda, int channel_sign, double half_width,
                                    double field, const PiecewisePotential* potential,
                                    Complex robin_minus, Complex robin_plus, int steps);

/// Basis of the numerical eigenspace at an accepted eigenvalue, each
/// element normalised to unit discrete L2 norm. Empty result means the
/// terminal matrix has no numerical kernel ("not an eigenvalue here").
std::vector<SpinorGridFunction> eigenfunction_basis(Complex lambda,
                                                    const ProblemSpec& spec, int steps);

/// First element of eigenfunction_basis; throws NumericalError when the
/// kernel is empty.
SpinorGridFunction eigenfunction(Complex lambda, const ProblemSpec& spec, int steps);

}  // namespace pauli
