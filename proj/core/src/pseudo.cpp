#include "paulibc/pseudo.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

namespace pauli {

DiscreteOperator discretize(const ProblemSpec& spec, int n) {
  validate(spec);
  if (n < 8) throw std::invalid_argument("discretize: need at least 8 grid points");

  DiscreteOperator op;
  op.n = n;
  const double a = spec.half_width;
  const double h = 2.0 * a / (n - 1);
  op.h = h;
  op.mat = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  Eigen::MatrixXcd& M = op.mat;

  const double inv_h2 = 1.0 / (h * h);
  const double b = spec.field;
  auto idx = [n](int channel, int j) { return channel == 0 ? j : n + j; };

  for (int ch = 0; ch < 2; ++ch) {
    const double diag_b = ch == 0 ? b : -b;
    for (int j = 1; j + 1 < n; ++j) {
      M(idx(ch, j), idx(ch, j - 1)) = -inv_h2;
      M(idx(ch, j), idx(ch, j)) = 2.0 * inv_h2 + diag_b;
      M(idx(ch, j), idx(ch, j + 1)) = -inv_h2;
    }
    // ghost-point Robin elimination at both endpoints
    M(idx(ch, 0), idx(ch, 0)) = 2.0 * inv_h2 + diag_b;
    M(idx(ch, 0), idx(ch, 1)) = -2.0 * inv_h2;
    M(idx(ch, n - 1), idx(ch, n - 1)) = 2.0 * inv_h2 + diag_b;
    M(idx(ch, n - 1), idx(ch, n - 2)) = -2.0 * inv_h2;
  }
  const Mat2& Am = spec.boundary.a_minus;
  const Mat2& Ap = spec.boundary.a_plus;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      M(idx(r, 0), idx(c, 0)) -= 2.0 / h * Am(r, c);
      M(idx(r, n - 1), idx(c, n - 1)) += 2.0 / h * Ap(r, c);
    }

  if (spec.potential && !spec.potential->values.empty()) {
    for (int ch = 0; ch < 2; ++ch)
      for (int j = 0; j < n; ++j)
        M(idx(ch, j), idx(ch, j)) += spec.potential->at(-a + j * h);
  }
  return op;
}

double smallest_singular_value(Complex z, const DiscreteOperator& op, double tol) {
  if (op.n < 8) throw std::invalid_argument("smallest_singular_value: empty operator");
  if (!(tol > 0.0)) tol = 1e-8;
  const int dim = 2 * op.n;
  Eigen::MatrixXcd B = op.mat - z * Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(B);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_adj(B.adjoint());

  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(std::sin(0.7 * i + 0.3), std::cos(1.3 * i));
  v.normalize();

  double prev = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd w = lu.solve(v);
    Eigen::VectorXcd u = lu_adj.solve(w);
    const double growth = u.norm();
    if (!std::isfinite(growth) || growth > 1e300) return 0.0;  // singular shift
    if (growth == 0.0) return std::numeric_limits<double>::infinity();
    const double sigma = 1.0 / std::sqrt(growth);
    v = u / growth;
    if (it > 2 && std::abs(sigma - prev) <= tol * sigma) return sigma;
    prev = sigma;
  }
  return prev;
}

double resolvent_norm_estimate(Complex z, const DiscreteOperator& op, double tol) {
  const double sigma = smallest_singular_value(z, op, tol);
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / sigma;
}

std::vector<PseudoSample> pseudospectrum_grid(const ProblemSpec& spec,
                                              const SearchRegion& region,
                                              int nx, int ny, int n) {
  validate(region);
  if (nx < 2 || ny < 2) throw std::invalid_argument("pseudospectrum_grid: grid sizes must be >= 2");
  const DiscreteOperator op = discretize(spec, n);
  std::vector<PseudoSample> table;
  table.reserve(std::size_t(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    const double y = region.im_min + (region.im_max - region.im_min) * iy / (ny - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double x = region.re_min + (region.re_max - region.re_min) * ix / (nx - 1);
      const Complex z(x, y);
      table.push_back({z, smallest_singular_value(z, op, 1e-8)});
    }
  }
  return table;
}

}  // namespace pauli
