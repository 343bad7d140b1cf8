#include "paulibc/secular.hpp"

#include <algorithm>
#include <cmath>

namespace pauli {

namespace {

// Series branch when |mu| (2a)^2 < 1e-2: a handful of terms reaches
// machine precision and avoids cancellation at the thresholds lambda = +-b.
constexpr double kSeriesThreshold = 1e-2;

bool use_series(Complex mu, double a) {
  return std::abs(mu) * (2.0 * a) * (2.0 * a) < kSeriesThreshold;
}

}  // namespace

ChannelMomenta channel_momenta(Complex lambda, double field) {
  ChannelMomenta m;
  m.mu_plus = lambda - field;
  m.mu_minus = lambda + field;
  m.k_plus = std::sqrt(m.mu_plus);
  m.k_minus = std::sqrt(m.mu_minus);
  return m;
}

Complex trig_c(Complex mu, double a) {
  const double L = 2.0 * a;
  if (use_series(mu, a)) {
    // cos(L sqrt(mu)) = sum (-1)^n (L^2 mu)^n / (2n)!
    const Complex w = L * L * mu;
    Complex term(1.0), sum(1.0);
    for (int n = 1; n <= 8; ++n) {
      term *= -w / double((2 * n - 1) * (2 * n));
      sum += term;
    }
    return sum;
  }
  return std::cos(L * std::sqrt(mu));
}

Complex trig_s(Complex mu, double a) {
  const double L = 2.0 * a;
  if (use_series(mu, a)) {
    // sin(L sqrt(mu)) / sqrt(mu) = L sum (-1)^n (L^2 mu)^n / (2n+1)!
    const Complex w = L * L * mu;
    Complex term(1.0), sum(1.0);
    for (int n = 1; n <= 8; ++n) {
      term *= -w / double((2 * n) * (2 * n + 1));
      sum += term;
    }
    return L * sum;
  }
  const Complex k = std::sqrt(mu);
  return std::sin(L * k) / k;
}

Complex trig_dc(Complex mu, double a) {
  // d/dmu cos(2a sqrt(mu)) = -a s(mu)
  return -a * trig_s(mu, a);
}

Complex trig_ds(Complex mu, double a) {
  const double L = 2.0 * a;
  if (use_series(mu, a)) {
    // d/dmu [L sum (-1)^n w^n/(2n+1)!] with w = L^2 mu
    const Complex w = L * L * mu;
    Complex pow(1.0);  // w^(n-1) built incrementally
    Complex sum(0.0);
    double fact = 6.0;  // (2*1+1)!
    double sign = -1.0;
    for (int n = 1; n <= 8; ++n) {
      sum += sign * double(n) * pow / fact;
      pow *= w;
      sign = -sign;
      fact *= double((2 * n + 2) * (2 * n + 3));
    }
    return L * L * L * sum;
  }
  return (a * trig_c(mu, a) - 0.5 * trig_s(mu, a)) / mu;
}

CharValue char_function(Complex lambda, const ProblemSpec& spec, bool with_derivative) {
  validate(spec);
  if (spec.potential && !spec.potential->values.empty())
    throw std::invalid_argument(
        "char_function: closed form requires V = 0; use the shooting oracle");

  const double a = spec.half_width;
  const Mat2& Ap = spec.boundary.a_plus;
  const Mat2& Am = spec.boundary.a_minus;
  const ChannelMomenta m = channel_momenta(lambda, spec.field);

  const Complex detp = Ap.determinant();
  const Complex detm = Am.determinant();

  const Complex g_cc = detp + detm - Ap(0, 0) * Am(1, 1) - Ap(1, 1) * Am(0, 0);
  const Complex g_ss = detp * detm + Ap(0, 0) * Am(0, 0) * m.mu_minus +
                       Ap(1, 1) * Am(1, 1) * m.mu_plus + m.mu_minus * m.mu_plus;
  const Complex g_sc = -detp * Am(1, 1) + Ap(1, 1) * detm +
                       (Am(0, 0) - Ap(0, 0)) * m.mu_minus;
  const Complex g_cs = -detp * Am(0, 0) + Ap(0, 0) * detm +
                       (Am(1, 1) - Ap(1, 1)) * m.mu_plus;
  const Complex g_0 = Ap(1, 0) * Am(0, 1) + Ap(0, 1) * Am(1, 0);

  const Complex cp = trig_c(m.mu_plus, a), cm = trig_c(m.mu_minus, a);
  const Complex sp = trig_s(m.mu_plus, a), sm = trig_s(m.mu_minus, a);

  const Complex t1 = g_cc * cm * cp;
  const Complex t2 = g_ss * sm * sp;
  const Complex t3 = g_sc * sm * cp;
  const Complex t4 = g_cs * cm * sp;

  CharValue out;
  out.value = t1 + t2 + t3 + t4 + g_0;

  // Residual scale: the coefficient sums taken with absolute values, times
  // envelope bounds on the trig factors. Using |t_i| directly is too
  // optimistic -- at a zero every product can vanish simultaneously.
  const double ep = std::exp(std::abs((2.0 * a * m.k_plus).imag()));
  const double em = std::exp(std::abs((2.0 * a * m.k_minus).imag()));
  const double bs_p = 2.0 * a * ep / std::max(1.0, 2.0 * a * std::abs(m.k_plus));
  const double bs_m = 2.0 * a * em / std::max(1.0, 2.0 * a * std::abs(m.k_minus));
  const double g_cc_abs = std::abs(detp) + std::abs(detm) +
                          std::abs(Ap(0, 0) * Am(1, 1)) + std::abs(Ap(1, 1) * Am(0, 0));
  const double g_ss_abs = std::abs(detp * detm) + std::abs(Ap(0, 0) * Am(0, 0) * m.mu_minus) +
                          std::abs(Ap(1, 1) * Am(1, 1) * m.mu_plus) +
                          std::abs(m.mu_minus * m.mu_plus);
  const double g_sc_abs = std::abs(detp * Am(1, 1)) + std::abs(Ap(1, 1) * detm) +
                          (std::abs(Am(0, 0)) + std::abs(Ap(0, 0))) * std::abs(m.mu_minus);
  const double g_cs_abs = std::abs(detp * Am(0, 0)) + std::abs(Ap(0, 0) * detm) +
                          (std::abs(Am(1, 1)) + std::abs(Ap(1, 1))) * std::abs(m.mu_plus);
  const double g_0_abs = std::abs(Ap(1, 0) * Am(0, 1)) + std::abs(Ap(0, 1) * Am(1, 0));
  out.scale = std::max({g_cc_abs * em * ep, g_ss_abs * bs_m * bs_p,
                        g_sc_abs * bs_m * ep, g_cs_abs * em * bs_p, g_0_abs,
                        1e-300});

  if (with_derivative) {
    const Complex dcp = trig_dc(m.mu_plus, a), dcm = trig_dc(m.mu_minus, a);
    const Complex dsp = trig_ds(m.mu_plus, a), dsm = trig_ds(m.mu_minus, a);
    // d mu_+/- / d lambda = 1 for both channels
    const Complex dg_ss = Ap(0, 0) * Am(0, 0) + Ap(1, 1) * Am(1, 1) + m.mu_minus + m.mu_plus;
    const Complex dg_sc = Am(0, 0) - Ap(0, 0);
    const Complex dg_cs = Am(1, 1) - Ap(1, 1);
    out.derivative = g_cc * (dcm * cp + cm * dcp) +
                     dg_ss * sm * sp + g_ss * (dsm * sp + sm * dsp) +
                     dg_sc * sm * cp + g_sc * (dsm * cp + sm * dcp) +
                     dg_cs * cm * sp + g_cs * (dcm * sp + cm * dsp);
  }
  return out;
}

Mat4 boundary_matrix(Complex lambda, const ProblemSpec& spec) {
  validate(spec);
  if (spec.potential && !spec.potential->values.empty())
    throw std::invalid_argument(
        "boundary_matrix: closed form requires V = 0; use the shooting oracle");

  const double a = spec.half_width;
  const Mat2& Ap = spec.boundary.a_plus;
  const Mat2& Am = spec.boundary.a_minus;
  const ChannelMomenta m = channel_momenta(lambda, spec.field);

  const Complex cp = trig_c(m.mu_plus, a), cm = trig_c(m.mu_minus, a);
  const Complex sp = trig_s(m.mu_plus, a), sm = trig_s(m.mu_minus, a);

  // Basis: u1 = (cos k+(x+a), 0), u2 = (sin k+(x+a)/k+, 0),
  //        u3 = (0, cos k-(x+a)), u4 = (0, sin k-(x+a)/k-).
  // Rows: the two components of Psi' + A^- Psi at -a, then of
  // Psi' + A^+ Psi at +a.
  Mat4 M;
  M(0, 0) = Am(0, 0);
  M(0, 1) = Complex(1.0);
  M(0, 2) = Am(0, 1);
  M(0, 3) = Complex(0.0);

  M(1, 0) = Am(1, 0);
  M(1, 1) = Complex(0.0);
  M(1, 2) = Am(1, 1);
  M(1, 3) = Complex(1.0);

  M(2, 0) = -m.mu_plus * sp + Ap(0, 0) * cp;
  M(2, 1) = cp + Ap(0, 0) * sp;
  M(2, 2) = Ap(0, 1) * cm;
  M(2, 3) = Ap(0, 1) * sm;

  M(3, 0) = Ap(1, 0) * cp;
  M(3, 1) = Ap(1, 0) * sp;
  M(3, 2) = -m.mu_minus * sm + Ap(1, 1) * cm;
  M(3, 3) = cm + Ap(1, 1) * sm;
  return M;
}

}  // namespace pauli
