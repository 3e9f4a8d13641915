#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "symspec/fock.hpp"
#include "symspec/unrep.hpp"

using namespace symspec;
using namespace symspec::unrep;
using fock::FockBasis;
using fock::FiberOperator;

namespace {

double guarded_column_norm(const FiberOperator& z, const FockBasis& basis) {
  double worst = 0.0;
  for (int col = 0; col < basis.dim(); ++col) {
    if (basis.level_of(col) > z.guard_level) continue;
    worst = std::max(worst, z.m.col(col).norm());
  }
  return worst;
}

// Brute-force level trace of r_Q(A) r_Q(B): product of the exact level blocks.
Complex brute_pair_trace(const UnAlgebraElement& A, const UnAlgebraElement& B,
                         const FockBasis& basis, int l) {
  const fock::Matrix blockA = level_block(r_Q(A, basis), basis, l);
  const fock::Matrix blockB = level_block(r_Q(B, basis), basis, l);
  return (blockA * blockB).trace();
}

// Remove the central (u(1)) part of A.
UnAlgebraElement traceless_part(const UnAlgebraElement& A) {
  const int n = A.n();
  UnAlgebraElement center = UnAlgebraElement::zero(n);
  for (int j = 0; j < n; ++j)
    center = center + defining_cartan(n, j);
  return A - (A.central_component() / n) * center;
}

}  // namespace

TEST_CASE("defining representation constraints and Cartan generators") {
  const UnAlgebraElement k1 = defining_cartan(1, 0);
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 1, -1, 0;
  CHECK((k1.matrix() - expected).norm() == 0.0);

  for (int n : {1, 2, 3}) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += defining_cartan(n, j).matrix()(j, j + n);
    CHECK(s == doctest::Approx(double(n)));
  }

  // Cartans commute
  CHECK(commutator(defining_cartan(2, 0), defining_cartan(2, 1))
            .matrix()
            .norm() == 0.0);

  // malformed matrices are rejected
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 1.0;  // not antisymmetric
  CHECK_THROWS_AS(UnAlgebraElement{bad}, std::invalid_argument);
  Eigen::MatrixXd bad4 = Eigen::MatrixXd::Zero(4, 4);
  bad4(0, 1) = 1.0;
  bad4(1, 0) = -1.0;  // antisymmetric but breaks J-compatibility
  CHECK_THROWS_AS(UnAlgebraElement{bad4}, std::invalid_argument);
  CHECK_THROWS_AS(defining_cartan(2, 2), std::out_of_range);

  // projection lands on the constraint space and fixes valid elements
  std::mt19937 rng(5);
  const UnAlgebraElement r = random_element(3, rng);
  CHECK_NOTHROW(UnAlgebraElement(r.matrix()));
  CHECK((UnAlgebraElement::project(r.matrix()).matrix() - r.matrix()).norm() <
        1e-14);
}

TEST_CASE("r_Q acts diagonally on Cartan generators") {
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 5);
    for (int j = 0; j < n; ++j) {
      const FiberOperator op = r_Q(defining_cartan(n, j), basis);
      for (int i = 0; i < basis.dim(); ++i) {
        if (basis.level_of(i) > op.guard_level) continue;
        const Complex expected(0.0, -(basis.index(i)[j] + 0.5));
        CHECK(std::abs(op.m(i, i) - expected) < 1e-12);
        fock::Vector col = op.m.col(i);
        col[i] = 0.0;
        CHECK(col.norm() < 1e-12);  // exactly diagonal on guarded levels
      }
    }
    CHECK(r_Q(UnAlgebraElement::zero(n), basis).m.norm() == 0.0);
  }
}

TEST_CASE("r_Q is a Lie algebra homomorphism on guarded levels") {
  std::mt19937 rng(11);
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 6);
    for (int trial = 0; trial < 20; ++trial) {
      const UnAlgebraElement A = random_element(n, rng);
      const UnAlgebraElement B = random_element(n, rng);
      const FiberOperator lhs = commutator(r_Q(A, basis), r_Q(B, basis));
      const FiberOperator rhs = r_Q(commutator(A, B), basis);
      FiberOperator z = lhs - rhs;
      CHECK(z.guard_level == basis.max_level() - 4);
      CHECK(guarded_column_norm(z, basis) < 1e-10);
    }
  }
}

TEST_CASE("central charge: sum of Cartan images is i H") {
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 5);
    FiberOperator sum{fock::Matrix::Zero(basis.dim(), basis.dim()),
                      basis.max_level(), basis.max_level(), 0};
    for (int j = 0; j < n; ++j) sum = sum + r_Q(defining_cartan(n, j), basis);
    FiberOperator z =
        sum - Complex(0.0, 1.0) * fock::hamiltonian_HJ(basis);
    CHECK(guarded_column_norm(z, basis) < 1e-12);
  }
}

TEST_CASE("closed-form single trace matches brute force") {
  CHECK(std::abs(trace_rQ(defining_cartan(1, 0), 1, 0) - Complex(0.0, -0.5)) <
        1e-15);
  std::mt19937 rng(23);
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 5);
    for (int l = 0; l <= 3; ++l) {
      for (int trial = 0; trial < 5; ++trial) {
        const UnAlgebraElement A = random_element(n, rng);
        const Complex brute =
            fock::level_block(r_Q(A, basis), basis, l).trace();
        CHECK(std::abs(trace_rQ(A, n, l) - brute) < 1e-12);
        // traceless elements have vanishing single trace
        CHECK(std::abs(trace_rQ(traceless_part(A), n, l)) < 1e-12);
      }
    }
  }
}

TEST_CASE("closed-form pair traces match brute force") {
  // hand-pinned values
  CHECK(trace_pair(defining_cartan(1, 0), defining_cartan(1, 0), 1, 0,
                   TraceMode::center)
            .real() == doctest::Approx(-0.25));
  {
    // n=2, l=1, A = B = K1 - K2: block eigenvalues -3i/2 and -i/2
    FockBasis basis(2, 4);
    const UnAlgebraElement A =
        defining_cartan(2, 0) - defining_cartan(2, 1);
    CHECK(brute_pair_trace(A, A, basis, 1).real() == doctest::Approx(-2.0));
    CHECK(trace_pair(A, A, 2, 1, TraceMode::full).real() ==
          doctest::Approx(-2.0));
    const UnAlgebraElement k1 = defining_cartan(2, 0);
    CHECK(brute_pair_trace(k1, k1, basis, 1).real() == doctest::Approx(-2.5));
    CHECK(trace_pair(k1, k1, 2, 1, TraceMode::full).real() ==
          doctest::Approx(-2.5));
  }

  std::mt19937 rng(37);
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 5);
    for (int l = 0; l <= 3; ++l) {
      for (int trial = 0; trial < 5; ++trial) {
        const UnAlgebraElement A = random_element(n, rng);
        const UnAlgebraElement B = random_element(n, rng);
        const Complex brute = brute_pair_trace(A, B, basis, l);
        const Complex closed = trace_pair(A, B, n, l, TraceMode::full);
        CHECK(std::abs(closed - brute) < 1e-10);
      }
    }
  }
}

TEST_CASE("pair-trace proportionality on the traceless sector") {
  CHECK(proportionality_c(2, 1) == Rational(1, 2));
  CHECK(proportionality_c(2, 2) == Rational(2));
  CHECK(proportionality_c(3, 1) == Rational(1, 2));
  CHECK_THROWS_AS(proportionality_c(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(proportionality_c(1, 1), std::invalid_argument);

  std::mt19937 rng(41);
  for (int n : {2, 3}) {
    FockBasis basis(n, 5);
    for (int l = 1; l <= 3; ++l) {
      const double c = to_double(proportionality_c(n, l));
      for (int trial = 0; trial < 5; ++trial) {
        const UnAlgebraElement A = traceless_part(random_element(n, rng));
        const UnAlgebraElement B = traceless_part(random_element(n, rng));
        const Complex brute = brute_pair_trace(A, B, basis, l);
        const double pairing = (A.matrix() * B.matrix()).trace();
        CHECK(std::abs(brute - Complex(c * pairing)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Casimir block is the closed-form eigenvalue times identity") {
  CHECK(casimir_value(2, 1) == Rational(3, 2));
  CHECK(casimir_value(3, 2) == Rational(20, 3));
  CHECK(casimir_value(5, 0) == Rational(0));
  CHECK_THROWS_AS(casimir_value(1, 2), std::invalid_argument);

  for (int n : {2, 3}) {
    const auto generators = su_orthobasis(n);
    CHECK(static_cast<int>(generators.size()) == n * n - 1);
    // orthonormality in the defining representation
    for (std::size_t a = 0; a < generators.size(); ++a) {
      for (std::size_t b = 0; b < generators.size(); ++b) {
        const double expected = a == b ? -2.0 : 0.0;
        CHECK(std::abs(
                  (generators[a].matrix() * generators[b].matrix()).trace() -
                  expected) < 1e-12);
        CHECK(std::abs(generators[a].central_component()) < 1e-14);
      }
    }
    FockBasis basis(n, 5);
    for (int l = 0; l <= 3; ++l) {
      const int r = basis.rank(l);
      fock::Matrix sum = fock::Matrix::Zero(r, r);
      for (const auto& t : generators) {
        const fock::Matrix block = level_block(r_Q(t, basis), basis, l);
        sum += block * block;
      }
      const double c2 = to_double(casimir_value(n, l));
      CHECK((sum + c2 * fock::Matrix::Identity(r, r)).norm() < 1e-10);
    }
  }
}

TEST_CASE("extreme weight vector and dimension count") {
  FockBasis basis2(2, 5);
  const auto rep22 = highest_weight_check(2, 2, basis2);
  CHECK(rep22.ok);
  CHECK(std::abs(rep22.weights[0] - Complex(0.0, -2.0)) < 1e-12);
  const auto rep20 = highest_weight_check(2, 0, basis2);
  CHECK(rep20.ok);
  CHECK(std::abs(rep20.weights[0]) < 1e-12);

  FockBasis basis3(3, 4);
  const auto rep31 = highest_weight_check(3, 1, basis3);
  CHECK(rep31.ok);
  CHECK(rep31.rank == 3);
  CHECK(rep31.weyl_dimension == 3);

  CHECK_THROWS_AS(highest_weight_check(2, 4, basis2), std::invalid_argument);
}

TEST_CASE("level eigenvalue helper") {
  CHECK(q_level(1, 0) == Rational(-1, 2));
  CHECK(q_level(2, 3) == Rational(-4));
  CHECK(q_level(3, 2) == Rational(-7, 2));
}
