#include <doctest.h>

#include "paulibc/metric.hpp"

#include <cmath>

using namespace pauli;

namespace {

const double kA = M_PI / 4.0;

ProblemSpec decoupled_spec(double alpha, double beta, double b, double a = kA) {
  ProblemSpec spec;
  spec.half_width = a;
  spec.field = b;
  spec.boundary.a_plus = Mat2::Identity() * Complex(beta, alpha);
  spec.boundary.a_minus = Mat2::Identity() * Complex(-beta, alpha);
  return spec;
}

}  // namespace

TEST_CASE("kernel is Hermitian with diagonal c") {
  MetricParams p{1.3, 0.4, 0.7, 1.0};
  for (double x : {-0.8, 0.0, 0.3})
    for (double y : {-0.5, 0.1, 0.9})
      CHECK(std::abs(metric_kernel(x, y, p) - std::conj(metric_kernel(y, x, p))) <
            1e-15);
  CHECK(metric_kernel(0.2, 0.2, p) == Complex(0.7, 0.0));
}

TEST_CASE("identity metric for alpha = c = 0, beta arbitrary sign irrelevant") {
  MetricParams p{0.0, 0.7, 0.0, 1.0};
  for (double x : {-0.5, 0.25})
    CHECK(std::abs(metric_kernel(x, x, p)) == 0.0);
  const PositivityResult res = theta_positivity(MetricParams{0.0, 0.0, 0.0, 1.0}, 64);
  CHECK(res.positive);
  CHECK(res.smallest_eigenvalue == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("positivity in the small-interval and large-beta regimes") {
  const PositivityResult small_a =
      theta_positivity(MetricParams{1.0, 0.5, 0.5, 0.1}, 256);
  CHECK(small_a.positive);
  CHECK(small_a.smallest_eigenvalue > 0.0);

  const PositivityResult large_beta =
      theta_positivity(MetricParams{1.0, 20.0, 1.0, kA}, 256);
  CHECK(large_beta.positive);
  CHECK(large_beta.smallest_eigenvalue > 0.0);
}

TEST_CASE("positivity verdict is stable under grid refinement") {
  const MetricParams p{1.0, 0.5, 0.5, 0.1};
  const bool coarse = theta_positivity(p, 128).positive;
  const bool fine = theta_positivity(p, 384).positive;
  CHECK(coarse == fine);
}

TEST_CASE("a negative enough diagonal breaks positivity and is reported") {
  // c = -2 pushes the diagonal of I + K below zero on any reasonable grid
  const PositivityResult res = theta_positivity(MetricParams{0.0, 0.0, -2.0, 1.0}, 64);
  CHECK_FALSE(res.positive);
  CHECK(res.smallest_eigenvalue < 0.0);
}

TEST_CASE("apply_metric reduces to the identity for a vanishing kernel") {
  MetricParams p{0.0, 0.0, 0.0, 1.0};
  SpinorGridFunction f = make_spinor_grid(1.0, 33);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.up[i] = Complex(std::sin(0.3 * i), 0.1);
    f.dn[i] = Complex(0.2, std::cos(0.2 * i));
  }
  const SpinorGridFunction g = apply_metric(f, p);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::abs(g.up[i] - f.up[i]) < 1e-15);
    CHECK(std::abs(g.dn[i] - f.dn[i]) < 1e-15);
  }
}

TEST_CASE("metric-orthogonality of eigenfunctions, moderate grid") {
  const ProblemSpec spec = decoupled_spec(1.0, 0.5, 0.4);
  MetricParams p{1.0, 0.5, 0.0, kA};
  const Eigen::MatrixXcd gram = theta_orthogonality(spec, p, 3, 513);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(std::abs(gram(i, j)) < 1e-4 * std::abs(gram(i, i)));
    }
}

TEST_CASE("orthogonality residual shrinks under refinement") {
  const ProblemSpec spec = decoupled_spec(1.0, 0.5, 0.4);
  MetricParams p{1.0, 0.5, 0.3, kA};
  // eigenfunctions 0 and 1 sit in different channels and are orthogonal
  // exactly; 0 and 2 share a channel and probe the quadrature error
  auto offdiag = [&](int n) {
    const Eigen::MatrixXcd g = theta_orthogonality(spec, p, 3, n);
    return std::abs(g(0, 2)) + std::abs(g(2, 0));
  };
  const double coarse = offdiag(257);
  const double fine = offdiag(1025);
  CHECK(fine < 0.5 * coarse);
}

TEST_CASE("mismatched boundary family is rejected") {
  const ProblemSpec spec = decoupled_spec(1.0, 0.5, 0.4);
  MetricParams p{2.0, 0.5, 0.0, kA};  // alpha disagrees with the spec
  CHECK_THROWS_AS(theta_orthogonality(spec, p, 2, 257), std::invalid_argument);
}
