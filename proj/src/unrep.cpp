#include "symspec/unrep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace symspec::unrep {

namespace {

constexpr Complex kImag{0.0, 1.0};
constexpr double kConstraintTol = 1e-10;

void check_un_constraints(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0)
    throw std::invalid_argument("u(n) element must be a 2n x 2n matrix");
  const int n = static_cast<int>(m.rows()) / 2;
  if ((m + m.transpose()).norm() > kConstraintTol * (1.0 + m.norm()))
    throw std::invalid_argument("u(n) element must be antisymmetric");
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (std::abs(m(j, k) - m(j + n, k + n)) > kConstraintTol ||
          std::abs(m(j, k + n) + m(j + n, k)) > kConstraintTol)
        throw std::invalid_argument(
            "u(n) element must commute with the complex structure");
    }
  }
}

Rational rank_rational(int n, int l) {
  return Rational(fock::level_rank(n, l));
}

// (l+n)! / ((l-1)! (n+1)!) as an exact rational; zero when l = 0 (empty
// product convention).
Rational falling_factor(int n, int l) {
  if (l == 0) return 0;
  Rational r = 1;
  // (l+n)!/(l-1)! = product of l-1+1 .. l+n (n+1 consecutive integers)
  for (int v = l; v <= l + n; ++v) r *= v;
  Rational fact = 1;
  for (int v = 2; v <= n + 1; ++v) fact *= v;
  return r / fact;
}

}  // namespace

UnAlgebraElement::UnAlgebraElement(Eigen::MatrixXd matrix)
    : matrix_(std::move(matrix)) {
  check_un_constraints(matrix_);
}

UnAlgebraElement UnAlgebraElement::zero(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  return UnAlgebraElement(Eigen::MatrixXd::Zero(2 * n, 2 * n));
}

UnAlgebraElement UnAlgebraElement::project(const Eigen::MatrixXd& raw) {
  if (raw.rows() != raw.cols() || raw.rows() < 2 || raw.rows() % 2 != 0)
    throw std::invalid_argument("u(n) element must be a 2n x 2n matrix");
  const int n = static_cast<int>(raw.rows()) / 2;
  const Eigen::MatrixXd tl = raw.topLeftCorner(n, n);
  const Eigen::MatrixXd tr = raw.topRightCorner(n, n);
  const Eigen::MatrixXd bl = raw.bottomLeftCorner(n, n);
  const Eigen::MatrixXd br = raw.bottomRightCorner(n, n);
  const Eigen::MatrixXd mean_diag = 0.5 * (tl + br);
  const Eigen::MatrixXd a = 0.5 * (mean_diag - mean_diag.transpose());
  const Eigen::MatrixXd mean_off = 0.5 * (tr - bl);
  const Eigen::MatrixXd b = 0.5 * (mean_off + mean_off.transpose());
  Eigen::MatrixXd out(2 * n, 2 * n);
  out << a, b, -b, a;
  return UnAlgebraElement(std::move(out));
}

double UnAlgebraElement::central_component() const {
  double s = 0.0;
  for (int j = 0; j < n(); ++j) s += matrix_(j, j + n());
  return s;
}

UnAlgebraElement operator+(const UnAlgebraElement& a,
                           const UnAlgebraElement& b) {
  return UnAlgebraElement(a.matrix() + b.matrix());
}

UnAlgebraElement operator-(const UnAlgebraElement& a,
                           const UnAlgebraElement& b) {
  return UnAlgebraElement(a.matrix() - b.matrix());
}

UnAlgebraElement operator*(double c, const UnAlgebraElement& a) {
  return UnAlgebraElement(c * a.matrix());
}

UnAlgebraElement commutator(const UnAlgebraElement& a,
                            const UnAlgebraElement& b) {
  return UnAlgebraElement(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

UnAlgebraElement defining_cartan(int n, int j) {
  if (j < 0 || j >= n)
    throw std::out_of_range("Cartan index " + std::to_string(j) +
                            " outside [0, " + std::to_string(n) + ")");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m(j, j + n) = 1.0;
  m(j + n, j) = -1.0;
  return UnAlgebraElement(std::move(m));
}

UnAlgebraElement random_element(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::MatrixXd raw(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c) raw(r, c) = uni(rng);
  return UnAlgebraElement::project(raw);
}

FiberOperator r_Q(const UnAlgebraElement& A, const FockBasis& basis) {
  const int n = basis.n();
  if (A.n() != n)
    throw std::invalid_argument("algebra element and basis disagree on n");
  // Clifford factors for the frame and its image under the complex structure
  // (J e_j = e_{j+n}, J e_{j+n} = -e_j).
  std::vector<fock::Matrix> cl(2 * n);
  for (int a = 0; a < 2 * n; ++a)
    cl[a] = clifford_mult(basis, fock::FrameVector::unit(n, a)).m;
  auto clJ = [&](int a) -> fock::Matrix {
    return a < n ? cl[a + n] : fock::Matrix(-cl[a - n]);
  };
  fock::Matrix sum = fock::Matrix::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < 2 * n; ++j) {
    const fock::Matrix jfac = clJ(j);
    for (int k = 0; k < 2 * n; ++k) {
      const double ajk = A.matrix()(j, k);
      if (ajk != 0.0) sum += ajk * (cl[k] * jfac);
    }
  }
  return {Complex(0.0, 0.5) * sum, basis.max_level(), basis.max_level() - 2,
          2};
}

Rational q_level(int n, int l) { return Rational(-(2 * l + n), 2); }

Rational casimir_value(int n, int l) {
  if (n < 2)
    throw std::invalid_argument(
        "Casimir eigenvalue needs n >= 2 (no traceless part at n = 1)");
  if (l < 0) throw std::invalid_argument("negative level");
  return Rational(std::int64_t(l) * (n + l) * (n - 1), n);
}

Rational proportionality_c(int n, int l) {
  if (n < 2) throw std::invalid_argument("trace proportionality needs n >= 2");
  if (l < 1)
    throw std::invalid_argument(
        "trace proportionality is defined for l >= 1 (level 0 carries only "
        "the central charge)");
  return falling_factor(n, l) / 2;
}

Complex trace_rQ(const UnAlgebraElement& A, int n, int l) {
  const double q = to_double(q_level(n, l));
  const double rank = static_cast<double>(fock::level_rank(n, l));
  return kImag * (q * rank / n) * A.central_component();
}

Complex trace_pair(const UnAlgebraElement& A, const UnAlgebraElement& B, int n,
                   int l, TraceMode mode) {
  const double q = to_double(q_level(n, l));
  const double rank = static_cast<double>(fock::level_rank(n, l));
  const double sA = A.central_component();
  const double sB = B.central_component();
  double value = 0.0;
  if (mode == TraceMode::center || mode == TraceMode::full)
    value += -q * q * rank / (n * n) * sA * sB;
  if (mode == TraceMode::traceless || mode == TraceMode::full) {
    const double pref = to_double(falling_factor(n, l)) / 2.0;
    const double pairing = (A.matrix() * B.matrix()).trace();
    value += pref * (pairing + 2.0 / n * sA * sB);
  }
  return Complex(value);
}

std::vector<UnAlgebraElement> su_orthobasis(int n) {
  if (n < 2) throw std::invalid_argument("traceless basis needs n >= 2");
  std::vector<UnAlgebraElement> basis;
  basis.reserve(n * n - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto embed = [n](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd m(2 * n, 2 * n);
    m << a, b, -b, a;
    return UnAlgebraElement(std::move(m));
  };
  const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXd a = z;
      a(j, k) = inv_sqrt2;
      a(k, j) = -inv_sqrt2;
      basis.push_back(embed(a, z));
      Eigen::MatrixXd b = z;
      b(j, k) = inv_sqrt2;
      b(k, j) = inv_sqrt2;
      basis.push_back(embed(z, b));
    }
  }
  for (int k = 1; k < n; ++k) {
    // diagonal (1,..,1,-k,0,..)/sqrt(k(k+1)): traceless, unit sum of squares
    Eigen::MatrixXd b = z;
    const double scale = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int j = 0; j < k; ++j) b(j, j) = scale;
    b(k, k) = -k * scale;
    basis.push_back(embed(z, b));
  }
  return basis;
}

HighestWeightReport highest_weight_check(int n, int l,
                                         const FockBasis& basis) {
  if (basis.n() != n)
    throw std::invalid_argument("basis arity mismatch");
  if (basis.max_level() < l + 2)
    throw std::invalid_argument("level cutoff too small: need L >= l + 2");
  HighestWeightReport report;
  fock::Vector state = fock::Vector::Zero(basis.dim());
  fock::MultiIndex extreme(n, 0);
  extreme[0] = l;
  state[basis.position(extreme)] = 1.0;
  for (int j = 0; j + 1 < n; ++j) {
    const UnAlgebraElement diff =
        defining_cartan(n, j) - defining_cartan(n, j + 1);
    const fock::Vector image = r_Q(diff, basis).m * state;
    const Complex weight = state.dot(image);
    report.weights.push_back(weight);
    report.max_residual =
        std::max(report.max_residual, (image - weight * state).norm());
  }
  report.rank = fock::level_rank(n, l);
  // Weyl dimension formula for the weight (l,0,...,0):
  // prod_{j=2..n} (l + j - 1)/(j - 1)
  Rational dim = 1;
  for (int j = 2; j <= n; ++j) dim *= Rational(l + j - 1, j - 1);
  report.weyl_dimension = numerator(dim).convert_to<std::int64_t>();
  double weight_err = 0.0;
  for (std::size_t j = 0; j < report.weights.size(); ++j) {
    const Complex expected = j == 0 ? Complex(0.0, -double(l)) : Complex(0.0);
    weight_err = std::max(weight_err, std::abs(report.weights[j] - expected));
  }
  report.ok = report.max_residual < 1e-10 && weight_err < 1e-10 &&
              report.rank == report.weyl_dimension;
  return report;
}

}  // namespace symspec::unrep
