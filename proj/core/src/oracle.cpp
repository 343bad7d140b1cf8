#include "paulibc/oracle.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pauli {

namespace {

// potential values per step, sampled at step midpoints with breakpoints
// snapped to the grid (a step never straddles a discontinuity when the
// caller aligns the grid; snapping keeps 4th order otherwise)
std::vector<double> sample_potential(const PiecewisePotential* v, double a, int steps) {
  std::vector<double> out(steps, 0.0);
  if (!v || v->values.empty()) return out;
  const double h = 2.0 * a / steps;
  PiecewisePotential snapped = *v;
  for (double& bp : snapped.breakpoints) bp = -a + h * std::round((bp + a) / h);
  for (int i = 0; i < steps; ++i) out[i] = snapped.at(-a + (double(i) + 0.5) * h);
  return out;
}

// one RK4 step of u' = (y', q y) with q frozen over the step
inline void rk4_step(Complex& y, Complex& dy, Complex q, double h) {
  const Complex k1y = dy, k1d = q * y;
  const Complex k2y = dy + 0.5 * h * k1d, k2d = q * (y + 0.5 * h * k1y);
  const Complex k3y = dy + 0.5 * h * k2d, k3d = q * (y + 0.5 * h * k2y);
  const Complex k4y = dy + h * k3d, k4d = q * (y + h * k3y);
  y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
}

struct SpinorState {
  Complex up, dup, dn, ddn;
  double norm() const {
    return std::max(std::max(std::abs(up), std::abs(dup)),
                    std::max(std::abs(dn), std::abs(ddn)));
  }
  void scale(double s) { up *= s; dup *= s; dn *= s; ddn *= s; }
};

constexpr double kRenormCap = 1e100;

}  // namespace

Complex shooting_determinant(Complex lambda, const ProblemSpec& spec, int steps) {
  validate(spec);
  if (steps < 64) throw std::invalid_argument("shooting_determinant: steps must be >= 64");

  const double a = spec.half_width;
  const double b = spec.field;
  const double h = 2.0 * a / steps;
  const std::vector<double> vmid =
      sample_potential(spec.potential ? &*spec.potential : nullptr, a, steps);

  const Mat2& Am = spec.boundary.a_minus;
  const Mat2& Ap = spec.boundary.a_plus;
  SpinorState s[2] = {
      {Complex(1.0), -Am(0, 0), Complex(0.0), -Am(1, 0)},
      {Complex(0.0), -Am(0, 1), Complex(1.0), -Am(1, 1)},
  };
  double log_scale = 0.0;  // per-solution renormalisation bookkeeping

  for (int i = 0; i < steps; ++i) {
    const Complex qp = vmid[i] + b - lambda;
    const Complex qm = vmid[i] - b - lambda;
    for (SpinorState& st : s) {
      rk4_step(st.up, st.dup, qp, h);
      rk4_step(st.dn, st.ddn, qm, h);
    }
    if ((i & 31) == 31) {
      const double m = std::max(s[0].norm(), s[1].norm());
      if (m > kRenormCap) {
        s[0].scale(1.0 / m);
        s[1].scale(1.0 / m);
        log_scale += std::log(m);
      }
    }
  }

  Mat2 T;
  T(0, 0) = s[0].dup + Ap(0, 0) * s[0].up + Ap(0, 1) * s[0].dn;
  T(1, 0) = s[0].ddn + Ap(1, 0) * s[0].up + Ap(1, 1) * s[0].dn;
  T(0, 1) = s[1].dup + Ap(0, 0) * s[1].up + Ap(0, 1) * s[1].dn;
  T(1, 1) = s[1].ddn + Ap(1, 0) * s[1].up + Ap(1, 1) * s[1].dn;

  // undo the renormalisation only while it stays representable
  const double undo = std::min(2.0 * log_scale, 600.0);
  return T.determinant() * std::exp(undo);
}

Complex scalar_shooting_determinant(Complex lambda, int channel_sign, double half_width,
                                    double field, const PiecewisePotential* potential,
                                    Complex robin_minus, Complex robin_plus, int steps) {
  if (steps < 64) throw std::invalid_argument("scalar_shooting_determinant: steps must be >= 64");
  if (channel_sign != 1 && channel_sign != -1)
    throw std::invalid_argument("channel_sign must be +-1");
  const double h = 2.0 * half_width / steps;
  const std::vector<double> vmid = sample_potential(potential, half_width, steps);

  Complex y(1.0), dy = -robin_minus;
  double log_scale = 0.0;
  for (int i = 0; i < steps; ++i) {
    const Complex q = vmid[i] + channel_sign * field - lambda;
    rk4_step(y, dy, q, h);
    if ((i & 31) == 31) {
      const double m = std::max(std::abs(y), std::abs(dy));
      if (m > kRenormCap) {
        y /= m;
        dy /= m;
        log_scale += std::log(m);
      }
    }
  }
  return (dy + robin_plus * y) * std::exp(std::min(log_scale, 600.0));
}

std::vector<SpinorGridFunction> eigenfunction_basis(Complex lambda,
                                                    const ProblemSpec& spec, int steps) {
  validate(spec);
  if (steps < 64) throw std::invalid_argument("eigenfunction_basis: steps must be >= 64");

  const double a = spec.half_width;
  const double b = spec.field;
  const double h = 2.0 * a / steps;
  const std::vector<double> vmid =
      sample_potential(spec.potential ? &*spec.potential : nullptr, a, steps);

  const Mat2& Am = spec.boundary.a_minus;
  const Mat2& Ap = spec.boundary.a_plus;
  SpinorState s[2] = {
      {Complex(1.0), -Am(0, 0), Complex(0.0), -Am(1, 0)},
      {Complex(0.0), -Am(0, 1), Complex(1.0), -Am(1, 1)},
  };

  std::vector<std::vector<Complex>> up(2), dn(2);
  for (int i = 0; i < 2; ++i) {
    up[i].reserve(steps + 1);
    dn[i].reserve(steps + 1);
    up[i].push_back(s[i].up);
    dn[i].push_back(s[i].dn);
  }
  for (int i = 0; i < steps; ++i) {
    const Complex qp = vmid[i] + b - lambda;
    const Complex qm = vmid[i] - b - lambda;
    for (int j = 0; j < 2; ++j) {
      rk4_step(s[j].up, s[j].dup, qp, h);
      rk4_step(s[j].dn, s[j].ddn, qm, h);
      up[j].push_back(s[j].up);
      dn[j].push_back(s[j].dn);
    }
  }

  Mat2 T;
  T(0, 0) = s[0].dup + Ap(0, 0) * s[0].up + Ap(0, 1) * s[0].dn;
  T(1, 0) = s[0].ddn + Ap(1, 0) * s[0].up + Ap(1, 1) * s[0].dn;
  T(0, 1) = s[1].dup + Ap(0, 0) * s[1].up + Ap(0, 1) * s[1].dn;
  T(1, 1) = s[1].ddn + Ap(1, 0) * s[1].up + Ap(1, 1) * s[1].dn;

  Eigen::JacobiSVD<Mat2> svd(T, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = std::max(1e-5 * sv(0), 1e-12);
  std::vector<SpinorGridFunction> basis;
  for (int k = 0; k < 2; ++k) {
    if (sv(k) >= thresh) continue;
    const Vec2 c = svd.matrixV().col(k);
    SpinorGridFunction f = make_spinor_grid(a, std::size_t(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
      f.up[i] = c(0) * up[0][i] + c(1) * up[1][i];
      f.dn[i] = c(0) * dn[0][i] + c(1) * dn[1][i];
    }
    // unit discrete L2 norm (trapezoid)
    double nrm2 = 0.0;
    for (int i = 0; i <= steps; ++i) {
      const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
      nrm2 += w * (std::norm(f.up[i]) + std::norm(f.dn[i]));
    }
    nrm2 *= h;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int i = 0; i <= steps; ++i) {
      f.up[i] *= inv;
      f.dn[i] *= inv;
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

SpinorGridFunction eigenfunction(Complex lambda, const ProblemSpec& spec, int steps) {
  std::vector<SpinorGridFunction> basis = eigenfunction_basis(lambda, spec, steps);
  if (basis.empty())
    throw NumericalError("eigenfunction: no numerical kernel at this lambda (not an eigenvalue here)");
  return basis.front();
}

}  // namespace pauli
