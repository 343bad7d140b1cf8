#include <doctest.h>

#include "paulibc/symmetry.hpp"

#include <random>

using namespace pauli;

namespace {

Mat2 offdiag_hermitian(double alpha) {
  Mat2 m;
  m << Complex(0, 0), Complex(0, alpha), Complex(0, -alpha), Complex(0, 0);
  return m;
}

Mat2 offdiag_symmetric(double alpha) {
  Mat2 m;
  m << Complex(0, 0), Complex(0, alpha), Complex(0, alpha), Complex(0, 0);
  return m;
}

SpinorGridFunction random_spinor(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpinorGridFunction f = make_spinor_grid(1.3, n);
  for (std::size_t i = 0; i < n; ++i) {
    f.up[i] = Complex(u(rng), u(rng));
    f.dn[i] = Complex(u(rng), u(rng));
  }
  return f;
}

double dist(const SpinorGridFunction& f, const SpinorGridFunction& g) {
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    d = std::max({d, std::abs(f.up[i] - g.up[i]), std::abs(f.dn[i] - g.dn[i])});
  return d;
}

SpinorGridFunction negate(SpinorGridFunction f) {
  for (auto& v : f.up) v = -v;
  for (auto& v : f.dn) v = -v;
  return f;
}

}  // namespace

TEST_CASE("operator involutions: P^2 = K^2 = 1, T^2 = -1") {
  std::mt19937 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const SpinorGridFunction f = random_spinor(rng, 33);
    CHECK(dist(apply_parity(apply_parity(f)), f) == 0.0);
    CHECK(dist(apply_conjugation(apply_conjugation(f)), f) == 0.0);
    CHECK(dist(apply_time_reversal(apply_time_reversal(f)), negate(f)) == 0.0);
  }
}

TEST_CASE("T and K commute with P") {
  std::mt19937 rng(11);
  const SpinorGridFunction f = random_spinor(rng, 21);
  CHECK(dist(apply_parity(apply_time_reversal(f)), apply_time_reversal(apply_parity(f))) == 0.0);
  CHECK(dist(apply_parity(apply_conjugation(f)), apply_conjugation(apply_parity(f))) == 0.0);
}

TEST_CASE("T-conjugation of boundary matrices") {
  const double alpha = 0.7;
  // Hermitian off-diagonal matrix is a fixed point
  CHECK((t_conjugate_matrix(offdiag_hermitian(alpha)) - offdiag_hermitian(alpha))
            .cwiseAbs().maxCoeff() < 1e-15);
  // (i a + s) I -> (i a - s) I
  const Mat2 m = Mat2::Identity() * Complex(0.5, alpha);
  const Mat2 expect = Mat2::Identity() * Complex(-0.5, alpha);
  CHECK((t_conjugate_matrix(m) - expect).cwiseAbs().maxCoeff() < 1e-15);
  // symmetric off-diagonal flips sign
  CHECK((t_conjugate_matrix(offdiag_symmetric(alpha)) + offdiag_symmetric(alpha))
            .cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("t_conjugate_matrix is an involution") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    Mat2 m;
    m << Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
        Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
    CHECK((t_conjugate_matrix(t_conjugate_matrix(m)) - m).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("classification of the Hermitian off-diagonal pair") {
  BoundaryPair b{offdiag_hermitian(1.0), offdiag_hermitian(1.0)};
  const SymmetryReport rep = classify(b);
  CHECK(rep.self_adjoint);
  CHECK(rep.pt_symmetric);
  CHECK(rep.pk_symmetric);
  CHECK_FALSE(rep.p_self_adjoint);
  CHECK_FALSE(rep.t_self_adjoint);
  CHECK_FALSE(rep.k_self_adjoint);
}

TEST_CASE("classification of the decoupled scalar pair") {
  BoundaryPair b{Mat2(Mat2::Identity() * Complex(0.5, 1.0)),
                 Mat2(Mat2::Identity() * Complex(-0.5, 1.0))};
  const SymmetryReport rep = classify(b);
  CHECK(rep.pt_symmetric);
  CHECK(rep.t_self_adjoint);
  CHECK_FALSE(rep.self_adjoint);
}

TEST_CASE("classification of the antisymmetric coupled pair") {
  BoundaryPair b{offdiag_symmetric(1.0), Mat2(-offdiag_symmetric(1.0))};
  const SymmetryReport rep = classify(b);
  CHECK(rep.pt_symmetric);
  CHECK(rep.k_self_adjoint);
  CHECK_FALSE(rep.pk_symmetric);
  CHECK_FALSE(rep.self_adjoint);
}

TEST_CASE("adjoint pair: Hermitian pair is a fixed point; involution in general") {
  BoundaryPair herm{offdiag_hermitian(1.3), offdiag_hermitian(1.3)};
  const BoundaryPair adj = adjoint_boundary(herm);
  CHECK((adj.a_plus - herm.a_plus).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((adj.a_minus - herm.a_minus).cwiseAbs().maxCoeff() < 1e-15);

  Mat2 g;
  g << Complex(1, 2), Complex(0, -1), Complex(3, 0.5), Complex(-1, 1);
  BoundaryPair pair{g, Mat2(2.0 * g)};
  const BoundaryPair twice = adjoint_boundary(adjoint_boundary(pair));
  CHECK((twice.a_plus - pair.a_plus).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((twice.a_minus - pair.a_minus).cwiseAbs().maxCoeff() < 1e-15);
}
