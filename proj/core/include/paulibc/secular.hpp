#pragma once

#include "paulibc/types.hpp"

namespace pauli {

/// Squared momenta mu_+- = lambda -+ b and their principal square roots
/// (Re k >= 0; Im k >= 0 on the cut Re k = 0).
struct ChannelMomenta {
  Complex mu_plus, mu_minus;
  Complex k_plus, k_minus;
};

ChannelMomenta channel_momenta(Complex lambda, double field);

/// Value of the regularized characteristic function, optionally its
/// lambda-derivative, and the magnitude of the largest additive term
/// (so callers can form relative residuals |value| / scale).
struct CharValue {
  Complex value;
  std::optional<Complex> derivative;
  double scale = 0.0;
};

// Entire building blocks c(mu) = cos(2a sqrt(mu)) and
// s(mu) = sin(2a sqrt(mu)) / sqrt(mu), with Taylor branches near mu = 0,
// plus their mu-derivatives. Exposed for tests.
Complex trig_c(Complex mu, double a);
Complex trig_s(Complex mu, double a);
Complex trig_dc(Complex mu, double a);
Complex trig_ds(Complex mu, double a);

/// Regularized characteristic function F(lambda): an entire function of
/// lambda whose zeros, with orders, are the eigenvalues of the operator
/// with their algebraic multiplicities. Closed form, so the spec must
/// have no interior potential.
CharValue char_function(Complex lambda, const ProblemSpec& spec,
                        bool with_derivative = false);

/// 4x4 matrix of the four scalar boundary conditions applied to the
/// entire fundamental system {cos k(x+a), sin k(x+a)/k} per channel.
/// Its nullity at an eigenvalue is the geometric multiplicity.
Mat4 boundary_matrix(Complex lambda, const ProblemSpec& spec);

}  // namespace pauli
