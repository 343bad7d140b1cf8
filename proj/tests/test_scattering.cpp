#include <doctest.h>

#include "paulibc/scattering.hpp"

#include <cmath>

using namespace pauli;

namespace {

ProblemSpec barrier_spec(double v0 = 2.0, double b = 0.4, double a = 2.0) {
  ProblemSpec spec;
  spec.half_width = a;
  spec.field = b;
  spec.boundary.a_plus = Mat2::Zero();
  spec.boundary.a_minus = Mat2::Zero();
  PiecewisePotential v;
  v.breakpoints = {-1.0, 1.0};
  v.values = {v0};
  spec.potential = v;
  return spec;
}

}  // namespace

TEST_CASE("energy-dependent boundary matrices") {
  const BoundaryPair b = energy_dependent_boundary(1.4, 0.4);
  CHECK(std::abs(b.a_plus(0, 0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(b.a_plus(1, 1) - Complex(0.0, -std::sqrt(1.8))) < 1e-15);
  CHECK(std::abs(b.a_plus(0, 1)) == 0.0);
  CHECK((b.a_plus - b.a_minus).cwiseAbs().maxCoeff() == 0.0);
  // below threshold the entries turn real (decaying exponentials)
  const BoundaryPair c = energy_dependent_boundary(0.2, 0.4);
  CHECK(std::abs(c.a_plus(0, 0).imag()) < 1e-15);
}

TEST_CASE("transfer matrix has unit determinant") {
  const ProblemSpec spec = barrier_spec();
  for (double lam : {1.0, 3.1, 7.7, 12.0}) {
    const Mat2 m = transfer_matrix(Complex(lam), +1, *spec.potential, spec.field,
                                   spec.half_width);
    CHECK(std::abs(m.determinant() - Complex(1.0)) < 1e-10);
  }
}

TEST_CASE("free propagation transmits perfectly") {
  PiecewisePotential none;
  for (int channel : {+1, -1}) {
    const ChannelScattering s =
        transmission(Complex(3.0), channel, none, 0.4, 1.5);
    CHECK(std::abs(s.t - Complex(1.0)) < 1e-12);
    CHECK(std::abs(s.r) < 1e-12);
  }
}

TEST_CASE("unitarity above threshold for a real barrier") {
  const ProblemSpec spec = barrier_spec();
  for (int channel : {+1, -1})
    for (double lam : {1.2, 2.9, 5.5, 9.1}) {
      if (lam <= channel * spec.field) continue;
      const ChannelScattering s =
          transmission(Complex(lam), channel, *spec.potential, spec.field,
                       spec.half_width);
      CHECK(std::norm(s.t) + std::norm(s.r) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("square-barrier transmission matches the textbook closed form") {
  const double v0 = 2.0, b = 0.4;
  const ProblemSpec spec = barrier_spec(v0, b);
  for (int channel : {+1, -1})
    for (double lam : {3.3, 4.6, 8.2}) {
      const double e = lam - channel * b;  // channel kinetic energy
      const Complex kin = std::sqrt(Complex(e - v0));
      const Complex s2 = std::sin(2.0 * kin);  // barrier width 2
      const double denom =
          1.0 + v0 * v0 * std::norm(s2) / std::abs(4.0 * e * (e - v0));
      const ChannelScattering s =
          transmission(Complex(lam), channel, *spec.potential, spec.field,
                       spec.half_width);
      CHECK(std::norm(s.t) == doctest::Approx(1.0 / denom).epsilon(1e-8));
    }
}

TEST_CASE("resonant energies transmit perfectly") {
  // k' * width = n pi  <=>  lambda = v0 + channel*b + (n pi / 2)^2
  const double v0 = 2.0, b = 0.4;
  const ProblemSpec spec = barrier_spec(v0, b);
  for (int channel : {+1, -1})
    for (int n : {1, 2}) {
      const double lam = v0 + channel * b + std::pow(n * M_PI / 2.0, 2.0);
      const ChannelScattering s =
          transmission(Complex(lam), channel, *spec.potential, spec.field,
                       spec.half_width);
      CHECK(std::abs(s.r) < 1e-10);
      CHECK(std::norm(s.t) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("threshold energy is handled by the linear basis") {
  const ProblemSpec spec = barrier_spec();
  // lambda = channel*b puts the outer momentum exactly at zero
  const Mat2 m = transfer_matrix(Complex(0.4), +1, *spec.potential, spec.field,
                                 spec.half_width);
  CHECK(m.allFinite());
}

TEST_CASE("free problem is trivially perfect") {
  ProblemSpec spec;
  spec.half_width = 1.5;
  spec.field = 0.4;
  spec.boundary.a_plus = Mat2::Zero();
  spec.boundary.a_minus = Mat2::Zero();
  const PTEResult res = pte_solve(spec, 10.0, 1e-7);
  CHECK(res.trivially_perfect);
  CHECK(res.records.empty());
}

TEST_CASE("barrier transmission energies split by twice the field") {
  const ProblemSpec spec = barrier_spec();
  const PTEResult res = pte_solve(spec, 6.0, 1e-7);
  REQUIRE(res.records.size() == 2);
  const double base = 2.0 + std::pow(M_PI / 2.0, 2.0);
  CHECK(res.records[0].lambda_star == doctest::Approx(base - 0.4).epsilon(1e-6));
  CHECK(res.records[1].lambda_star == doctest::Approx(base + 0.4).epsilon(1e-6));
  CHECK(res.records[1].lambda_star - res.records[0].lambda_star ==
        doctest::Approx(0.8).epsilon(1e-6));
  for (const PTERecord& r : res.records) CHECK(r.residual < 1e-6);
}
