#include "paulibc/metric.hpp"

#include "paulibc/oracle.hpp"
#include "paulibc/spectra.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace pauli {

namespace {

double sgn0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// I + W^(1/2) K W^(1/2): Hermitian, congruent to the quadrature form of
// Theta, with eigenvalues approximating the operator's
Eigen::MatrixXcd symmetrized_matrix(const MetricParams& p, int n) {
  const double h = 2.0 * p.a / (n - 1);
  Eigen::VectorXd sqw(n);
  for (int i = 0; i < n; ++i) sqw(i) = std::sqrt(h * ((i == 0 || i == n - 1) ? 0.5 : 1.0));
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = -p.a + i * h;
    for (int j = 0; j < n; ++j) {
      const double xj = -p.a + j * h;
      M(i, j) += sqw(i) * sqw(j) * metric_kernel(xi, xj, p);
    }
  }
  return M;
}

}  // namespace

Complex metric_kernel(double x, double y, const MetricParams& p) {
  if (!(p.a > 0.0)) throw std::invalid_argument("metric_kernel: half-width must be positive");
  if (std::abs(x) > p.a * (1.0 + 1e-12) || std::abs(y) > p.a * (1.0 + 1e-12))
    throw std::invalid_argument("metric_kernel: point outside [-a,a]");
  const double d = x - y;
  const Complex phase = std::exp(Complex(-p.beta * std::abs(d), p.alpha * d));
  return phase * Complex(p.c, p.alpha * sgn0(d));
}

SpinorGridFunction apply_metric(const SpinorGridFunction& f, const MetricParams& p) {
  validate(f);
  const std::size_t n = f.size();
  const double h = f.grid[1] - f.grid[0];
  SpinorGridFunction g = f;
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc_up(0.0), acc_dn(0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = h * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
      const Complex k = metric_kernel(f.grid[i], f.grid[j], p);
      acc_up += w * k * f.up[j];
      acc_dn += w * k * f.dn[j];
    }
    g.up[i] = f.up[i] + acc_up;
    g.dn[i] = f.dn[i] + acc_dn;
  }
  return g;
}

Eigen::MatrixXcd theta_orthogonality(const ProblemSpec& spec, const MetricParams& p,
                                     int n_eigs, int grid_points) {
  validate(spec);
  if (n_eigs < 1) throw std::invalid_argument("theta_orthogonality: n_eigs must be >= 1");
  if (grid_points < 65) throw std::invalid_argument("theta_orthogonality: grid too coarse");

  // the metric is only valid for the decoupled family (i alpha +- beta) I
  const Complex pp(p.beta, p.alpha), pm(-p.beta, p.alpha);
  Mat2 exp_plus = Mat2::Identity() * pp, exp_minus = Mat2::Identity() * pm;
  if ((spec.boundary.a_plus - exp_plus).cwiseAbs().maxCoeff() > 1e-10 ||
      (spec.boundary.a_minus - exp_minus).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument(
        "theta_orthogonality: boundary pair is not the decoupled family with these (alpha, beta)");
  if (std::abs(p.a - spec.half_width) > 1e-12)
    throw std::invalid_argument("theta_orthogonality: half-width mismatch");

  const double a = spec.half_width;
  const double re_max = std::pow((double(n_eigs) + 2.0) * M_PI / (2.0 * a), 2.0) +
                        std::abs(spec.field) + p.alpha * p.alpha + p.beta * p.beta + 1.0;
  const EnclosureRegion xi = enclosure(spec);
  SearchRegion window{-xi.c_const - 0.5, re_max, -2.0, 2.0};
  std::vector<Eigenvalue> eigs = find_eigenvalues(spec, window, 1e-10);
  if (int(eigs.size()) < n_eigs)
    throw NumericalError("theta_orthogonality: window produced too few eigenvalues");
  for (int i = 0; i < n_eigs; ++i)
    if (std::abs(eigs[i].lambda.imag()) > 1e-8)
      throw NumericalError("theta_orthogonality: complex eigenvalue in window, test undefined");

  const int steps = grid_points - 1;
  std::vector<SpinorGridFunction> funcs;
  for (int i = 0; i < n_eigs; ++i)
    funcs.push_back(eigenfunction(eigs[i].lambda, spec, steps));

  const double h = 2.0 * a / steps;
  Eigen::MatrixXcd G(n_eigs, n_eigs);
  for (int n = 0; n < n_eigs; ++n) {
    const SpinorGridFunction tf = apply_metric(funcs[n], p);
    for (int m = 0; m < n_eigs; ++m) {
      Complex acc(0.0);
      for (int i = 0; i <= steps; ++i) {
        const double w = h * ((i == 0 || i == steps) ? 0.5 : 1.0);
        acc += w * (std::conj(funcs[m].up[i]) * tf.up[i] +
                    std::conj(funcs[m].dn[i]) * tf.dn[i]);
      }
      G(m, n) = acc;
    }
  }
  return G;
}

PositivityResult theta_positivity(const MetricParams& p, int grid_points) {
  if (grid_points < 8) throw std::invalid_argument("theta_positivity: grid too coarse");
  const int n = grid_points;
  Eigen::MatrixXcd M = symmetrized_matrix(p, n);
  // enforce exact Hermiticity against quadrature round-off
  M = Complex(0.5) * (M + M.adjoint().eval());

  Eigen::LLT<Eigen::MatrixXcd> llt(M);
  PositivityResult res;
  res.positive = llt.info() == Eigen::Success;

  if (res.positive) {
    // inverse iteration for the smallest eigenvalue
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n).eval();
    v.normalize();
    double est = 0.0;
    for (int it = 0; it < 300; ++it) {
      Eigen::VectorXcd u = llt.solve(v);
      const double growth = u.norm();
      const double next = 1.0 / growth;
      v = u / growth;
      if (it > 3 && std::abs(next - est) < 1e-10 * std::abs(next)) {
        est = next;
        break;
      }
      est = next;
    }
    res.smallest_eigenvalue = est;
  } else {
    // bisection on shifts: M - sI positive definite iff s < lambda_min
    double lo = -(M.cwiseAbs().rowwise().sum().maxCoeff() + 1.0);
    double hi = 0.0;
    for (int it = 0; it < 100 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      Eigen::MatrixXcd shifted = M - mid * Eigen::MatrixXcd::Identity(n, n);
      Eigen::LLT<Eigen::MatrixXcd> test(shifted);
      if (test.info() == Eigen::Success)
        lo = mid;
      else
        hi = mid;
    }
    res.smallest_eigenvalue = 0.5 * (lo + hi);
  }
  return res;
}

}  // namespace pauli
