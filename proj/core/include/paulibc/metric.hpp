#pragma once

#include "paulibc/types.hpp"

namespace pauli {

/// Parameters of the per-channel metric operator Theta = I + K for the
/// decoupled boundary family (i alpha +- beta) * Identity; c is the free
/// real parameter of the metric family.
struct MetricParams {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  double a = 1.0;  // half-width
};

/// Kernel K(x,y) = exp(i alpha (x-y) - beta |x-y|) (c + i alpha sgn(x-y)),
/// with sgn(0) := 0 so the diagonal value is c. Hermitian: K(x,y) =
/// conj(K(y,x)).
Complex metric_kernel(double x, double y, const MetricParams& p);

/// (Theta f)(x_i) = f(x_i) + sum_j w_j K(x_i, x_j) f(x_j) with composite
/// trapezoid weights, applied per spinor component.
SpinorGridFunction apply_metric(const SpinorGridFunction& f, const MetricParams& p);

/// Gram matrix (Psi_m, Theta Psi_n) of the first n_eigs eigenfunctions of
/// the decoupled-family spec (which must carry the same alpha, beta as p).
/// Off-diagonal entries are the quasi-Hermiticity test statistic. Throws
/// NumericalError when a complex eigenvalue enters the scanned window.
Eigen::MatrixXcd theta_orthogonality(const ProblemSpec& spec, const MetricParams& p,
                                     int n_eigs, int grid_points);

struct PositivityResult {
  bool positive;
  double smallest_eigenvalue;
};

/// Positivity of the symmetrised quadrature matrix W^(1/2)(I + K)W^(1/2):
/// Cholesky success decides; the smallest eigenvalue is estimated by
/// inverse iteration (or shift bisection when Cholesky fails).
PositivityResult theta_positivity(const MetricParams& p, int grid_points);

}  // namespace pauli
