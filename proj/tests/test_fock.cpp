#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "symspec/fock.hpp"

using namespace symspec::fock;

namespace {

// Independent oracle for the Hermite matrix elements: Gauss-Hermite
// quadrature with nodes/weights from the Jacobi-matrix eigenproblem.  The
// integrands are (normalized Hermite polynomial products) x (low-degree
// monomials), so the rule is exact up to roundoff.
class HermiteQuadrature {
public:
  explicit HermiteQuadrature(int points) : nodes_(points), weights_(points) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
    for (int k = 1; k < points; ++k) {
      const double beta = std::sqrt(k / 2.0);
      jacobi(k, k - 1) = beta;
      jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    nodes_ = es.eigenvalues();
    const double mu0 = std::sqrt(M_PI);  // integral of exp(-x^2)
    for (int i = 0; i < points; ++i) {
      const double v0 = es.eigenvectors()(0, i);
      weights_[i] = mu0 * v0 * v0;
    }
  }

  // Normalized "physicists" Hermite polynomials phi_k = H_k / sqrt(2^k k!
  // sqrt(pi)); the Hermite function is h_k(x) = phi_k(x) exp(-x^2/2).
  static std::vector<double> phi_values(int kmax, double x) {
    std::vector<double> phi(kmax + 1);
    phi[0] = std::pow(M_PI, -0.25);
    if (kmax >= 1) phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int k = 1; k < kmax; ++k)
      phi[k + 1] = std::sqrt(2.0 / (k + 1)) * x * phi[k] -
                   std::sqrt(double(k) / (k + 1)) * phi[k - 1];
    return phi;
  }

  // integral of h_a(x) * x * h_b(x)
  double overlap_x(int a, int b) const {
    double s = 0.0;
    for (int i = 0; i < nodes_.size(); ++i) {
      const auto phi = phi_values(std::max(a, b), nodes_[i]);
      s += weights_[i] * phi[a] * phi[b] * nodes_[i];
    }
    return s;
  }

  // integral of h_a(x) * h_b'(x); h_k' = (phi_k' - x phi_k) e^{-x^2/2} with
  // phi_k' = sqrt(2k) phi_{k-1}.
  double overlap_d(int a, int b) const {
    double s = 0.0;
    for (int i = 0; i < nodes_.size(); ++i) {
      const double x = nodes_[i];
      const auto phi = phi_values(std::max(a, b), x);
      const double dphi_b = b > 0 ? std::sqrt(2.0 * b) * phi[b - 1] : 0.0;
      s += weights_[i] * phi[a] * (dphi_b - x * phi[b]);
    }
    return s;
  }

private:
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

// Max norm of the columns whose source level is guarded; a guarded column of
// the truncated matrix must agree with the untruncated operator, so testing an
// identity means testing that these columns vanish.
double guarded_column_norm(const FiberOperator& z, const FockBasis& basis) {
  double worst = 0.0;
  for (int col = 0; col < basis.dim(); ++col) {
    if (basis.level_of(col) > z.guard_level) continue;
    worst = std::max(worst, z.m.col(col).norm());
  }
  return worst;
}

double omega(const FrameVector& v, const FrameVector& w) {
  return v.a.dot(w.b) - v.b.dot(w.a);
}

FrameVector random_frame_vector(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  FrameVector v = FrameVector::zero(n);
  for (int j = 0; j < n; ++j) {
    v.a[j] = uni(rng);
    v.b[j] = uni(rng);
  }
  return v;
}

}  // namespace

TEST_CASE("basis enumeration is graded with the right block sizes") {
  for (int n : {1, 2, 3}) {
    const int L = 5;
    FockBasis basis(n, L);
    int expected_dim = 0;
    for (int l = 0; l <= L; ++l) {
      CHECK(basis.rank(l) == level_rank(n, l));
      CHECK(basis.level_offset(l) == expected_dim);
      expected_dim += basis.rank(l);
    }
    CHECK(basis.dim() == expected_dim);
    // bijection: every index round-trips through position()
    for (int i = 0; i < basis.dim(); ++i)
      CHECK(basis.position(basis.index(i)) == i);
    // blocks are graded
    for (int i = 0; i + 1 < basis.dim(); ++i)
      CHECK(basis.level_of(i) <= basis.level_of(i + 1));
  }
  CHECK(level_rank(2, 3) == 4);
  CHECK(level_rank(3, 2) == 6);
  CHECK_THROWS_AS(FockBasis(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(FockBasis(2, 3).position({4, 0}), std::out_of_range);
}

TEST_CASE("position and derivative entries match the quadrature oracle") {
  const HermiteQuadrature quad(24);
  const int L = 6;
  FockBasis basis(1, L);
  const FiberOperator x = build_position(basis, 0);
  const FiberOperator d = build_derivative(basis, 0);

  for (int a = 0; a <= L; ++a) {
    for (int b = 0; b <= L; ++b) {
      // the cutoff truncates couplings out of the basis, so compare only
      // entries both of whose levels are representable (all of them here)
      CHECK(std::abs(x.m(a, b).real() - quad.overlap_x(a, b)) < 1e-12);
      CHECK(std::abs(d.m(a, b).real() - quad.overlap_d(a, b)) < 1e-12);
      CHECK(x.m(a, b).imag() == 0.0);
      CHECK(d.m(a, b).imag() == 0.0);
    }
  }
}

TEST_CASE("frozen matrix elements") {
  FockBasis basis(1, 3);
  const FiberOperator x = build_position(basis, 0);
  const FiberOperator d = build_derivative(basis, 0);
  // sqrt(1/2), the h0 <-> h1 coupling
  CHECK(x.m(1, 0).real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(d.m(0, 1).real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(d.m(1, 0).real() ==
        doctest::Approx(-0.7071067811865476).epsilon(1e-15));
  // h3 -> h4 is cut off; h3 -> h2 carries sqrt(3/2)
  CHECK(x.m(2, 3).real() == doctest::Approx(1.224744871391589).epsilon(1e-15));
  for (int i = 0; i <= 3; ++i) CHECK(std::abs(x.m(i, i)) == 0.0);  // parity
}

TEST_CASE("multi-axis operators act on a single slot") {
  FockBasis basis(2, 4);
  const HermiteQuadrature quad(24);
  const FiberOperator x1 = build_position(basis, 0);
  // x_1 does not couple h0 h0 to h0 h1
  const int col = basis.position({0, 0});
  const int row = basis.position({0, 1});
  CHECK(std::abs(x1.m(row, col)) == 0.0);
  // product structure: <beta| x_0 |alpha> = delta(beta_1,alpha_1) * 1d overlap
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, basis.dim() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& alpha = basis.index(pick(rng));
    const auto& beta = basis.index(pick(rng));
    const double expected =
        (beta[1] == alpha[1]) ? quad.overlap_x(beta[0], alpha[0]) : 0.0;
    const int r = basis.position(beta), c = basis.position(alpha);
    // skip couplings that the cutoff removed
    if (basis.level_of(c) == basis.max_level() &&
        basis.level_of(r) > basis.max_level())
      continue;
    CHECK(std::abs(x1.m(r, c).real() - expected) < 1e-12);
  }
}

TEST_CASE("canonical commutator [x, d] = -I on guarded levels") {
  for (int n : {1, 2}) {
    FockBasis basis(n, 5);
    const FiberOperator x = build_position(basis, 0);
    const FiberOperator d = build_derivative(basis, 0);
    FiberOperator z = commutator(x, d) + identity(basis);
    CHECK(z.guard_level == basis.max_level() - 2);
    CHECK(guarded_column_norm(z, basis) < 1e-12);
  }
}

TEST_CASE("Clifford relation for random frame vectors") {
  std::mt19937 rng(2024);
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 5);
    for (int trial = 0; trial < 25; ++trial) {
      const FrameVector v = random_frame_vector(n, rng);
      const FrameVector w = random_frame_vector(n, rng);
      const FiberOperator cv = clifford_mult(basis, v);
      const FiberOperator cw = clifford_mult(basis, w);
      FiberOperator z = commutator(cv, cw) +
                        Complex(0.0, omega(v, w)) * identity(basis);
      CHECK(guarded_column_norm(z, basis) < 1e-12);
    }
    // omega(e_1, f_1) = 1, omega(e_i, e_j) = 0
    const FiberOperator ce = clifford_mult(basis, FrameVector::unit(n, 0));
    const FiberOperator cf = clifford_mult(basis, FrameVector::unit(n, n));
    FiberOperator z = commutator(ce, cf) + Complex(0.0, 1.0) * identity(basis);
    CHECK(guarded_column_norm(z, basis) < 1e-12);
    CHECK(guarded_column_norm(commutator(ce, ce), basis) < 1e-14);
  }
}

TEST_CASE("oscillator hamiltonian: definition, spectrum, multiplicities") {
  for (int n : {1, 2, 3}) {
    FockBasis basis(n, 6);
    const FiberOperator h = hamiltonian_HJ(basis);

    // definition as (1/2) sum_a e_a.e_a. built from Clifford factors
    FiberOperator sum{Matrix::Zero(basis.dim(), basis.dim()),
                      basis.max_level(), basis.max_level(), 0};
    for (int a = 0; a < 2 * n; ++a) {
      const FiberOperator c = clifford_mult(basis, FrameVector::unit(n, a));
      sum = sum + c * c;
    }
    FiberOperator z = Complex(0.5) * sum - h;
    CHECK(z.guard_level == basis.max_level() - 2);
    CHECK(guarded_column_norm(z, basis) < 1e-12);

    // diagonal eigenvalues with the right multiplicities
    for (int l = 0; l <= basis.max_level(); ++l) {
      const double q = -(l + n / 2.0);
      const int off = basis.level_offset(l);
      for (int i = 0; i < basis.rank(l); ++i)
        CHECK(h.m(off + i, off + i).real() == doctest::Approx(q));
      CHECK(basis.rank(l) == level_rank(n, l));
    }
  }
  CHECK(hamiltonian_HJ(FockBasis(1, 2)).m(0, 0).real() ==
        doctest::Approx(-0.5));
  FockBasis b23(2, 4);
  const int off = b23.level_offset(3);
  CHECK(hamiltonian_HJ(b23).m(off, off).real() == doctest::Approx(-4.0));
}

TEST_CASE("ladder operators") {
  FockBasis basis(1, 4);
  const FiberOperator lp = ladder(basis, 0, +1);
  const FiberOperator lm = ladder(basis, 0, -1);

  SUBCASE("lowering variant kills the bottom level exactly") {
    CHECK(lp.m.col(0).norm() == 0.0);
    // and is exact everywhere (no raising entries to truncate)
    CHECK(lp.guard_level == basis.max_level());
  }

  SUBCASE("raising variant moves level l to l+1 with norm sqrt(2(l+1))") {
    for (int l = 0; l < basis.max_level(); ++l) {
      Vector v = Vector::Zero(basis.dim());
      v[l] = 1.0;
      Vector w = lm.m * v;
      CHECK(std::abs(w[l + 1] - Complex(-std::sqrt(2.0 * (l + 1)))) < 1e-14);
      w[l + 1] = 0.0;
      CHECK(w.norm() < 1e-14);
    }
  }

  SUBCASE("norm computation behind the distance construction") {
    // ||(1/2) L^- phi0||^2 = 1 when ||phi0||^2 = 2
    Vector phi0 = Vector::Zero(basis.dim());
    phi0[0] = std::sqrt(2.0);
    const Vector w = 0.5 * (lm.m * phi0);
    CHECK(w.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    // <phi0, (L^- L^+ + 2) phi0> = 2 ||phi0||^2
    const FiberOperator prod = lm * lp;
    const Complex val =
        phi0.dot(prod.m * phi0 + 2.0 * phi0);  // Eigen dot conjugates lhs
    CHECK(std::abs(val - Complex(2.0 * phi0.squaredNorm())) < 1e-13);
  }

  SUBCASE("commutation [L^+, L^-] = 2 on guarded levels") {
    FiberOperator z = commutator(lp, lm) - Complex(2.0) * identity(basis);
    CHECK(guarded_column_norm(z, basis) < 1e-13);
  }

  SUBCASE("ladders in different axes commute") {
    FockBasis b2(2, 4);
    FiberOperator z =
        commutator(ladder(b2, 0, -1), ladder(b2, 1, -1));
    CHECK(guarded_column_norm(z, b2) < 1e-14);
  }
}

TEST_CASE("level projectors resolve the identity") {
  FockBasis basis(2, 5);
  Matrix sum = Matrix::Zero(basis.dim(), basis.dim());
  for (int l = 0; l <= basis.max_level(); ++l) {
    const FiberOperator p = level_projector(basis, l);
    sum += p.m;
    CHECK(p.m.trace().real() == doctest::Approx(basis.rank(l)));
    // projector: p^2 = p
    CHECK((p.m * p.m - p.m).norm() < 1e-14);
  }
  CHECK((sum - Matrix::Identity(basis.dim(), basis.dim())).norm() == 0.0);
  CHECK_THROWS_AS(level_projector(basis, 6), std::out_of_range);

  CHECK(level_projector(FockBasis(3, 3), 2).m.trace().real() ==
        doctest::Approx(6.0));
  CHECK(level_projector(FockBasis(1, 3), 3).m.trace().real() ==
        doctest::Approx(1.0));
}

TEST_CASE("truncation bookkeeping") {
  FockBasis basis(1, 6);
  const FiberOperator x = build_position(basis, 0);
  CHECK(x.guard_level == 5);
  CHECK(x.level_shift == 1);
  const FiberOperator xx = x * x;
  CHECK(xx.guard_level == 4);
  CHECK(xx.level_shift == 2);
  const FiberOperator s = xx + x;
  CHECK(s.guard_level == 4);
  CHECK(s.level_shift == 2);
  // lowering ladders do not consume guard budget
  const FiberOperator lp = ladder(basis, 0, +1);
  CHECK((lp * lp).guard_level == 6);
  CHECK_THROWS_AS(build_position(basis, 1), std::out_of_range);
  CHECK_THROWS_AS(level_block(xx, basis, 5), std::out_of_range);
}
