#include "symspec/spectrum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace symspec::spectrum {
namespace {

const Rational kZero(0);

Rational factorial(int k) {
  Rational out(1);
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace

std::int64_t eigenvalue(int l, int j) {
  if (l < 0 || j < 0) throw std::invalid_argument("eigenvalue: l, j >= 0");
  const std::int64_t s = l + j + 1;
  const std::int64_t d = 2 * l + 1;
  return 4 * s * s - 3 * d * d - 1;
}

std::int64_t degeneracy(int l, int j) {
  if (l < 0 || j < 0) throw std::invalid_argument("degeneracy: l, j >= 0");
  return 2 * static_cast<std::int64_t>(l + j + 1);
}

double heat_trace(int l, double t, double tol) {
  if (l < 0) throw std::invalid_argument("heat_trace: l >= 0");
  if (t <= 0.0) throw std::invalid_argument("heat_trace: t must be positive");
  if (tol <= 0.0) throw std::invalid_argument("heat_trace: tol must be positive");

  const double shift = t * (3.0 * (2 * l + 1) * (2 * l + 1) + 1.0);
  const double prefactor = std::exp(shift);

  // The summand 2x e^{−4tx²} decreases past x* = 1/sqrt(8t); start the
  // certified cutoff there and double it until the integral comparison bound
  // (scaled to the returned value) drops below tol.
  const auto tail_bound = [&](std::int64_t k) {
    const double kk = static_cast<double>(k);
    return std::exp(-4.0 * t * kk * kk) * (1.0 / (4.0 * t) + 2.0 * kk);
  };
  std::int64_t cutoff = std::max<std::int64_t>(
      l + 1, static_cast<std::int64_t>(std::ceil(1.0 / std::sqrt(8.0 * t))));
  while (prefactor * tail_bound(cutoff) >= tol) cutoff *= 2;

  // Kahan-compensated ascending sum: deterministic and immune to the mild
  // cancellation between the rising and falling flanks of the summand.
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = l + 1; k <= cutoff; ++k) {
    const double kk = static_cast<double>(k);
    const double term = 2.0 * kk * std::exp(-4.0 * t * kk * kk);
    const double y = term - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  return prefactor * sum;
}

// --------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

Poly Poly::variable() {
  Poly p;
  p.coeffs_ = {Rational(0), Rational(1)};
  return p;
}

Poly Poly::from_coefficients(std::vector<Rational> coeffs) {
  Poly p;
  p.coeffs_ = std::move(coeffs);
  p.normalize();
  return p;
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int Poly::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

const Rational& Poly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[k];
}

Poly Poly::derivative() const {
  Poly out;
  for (int k = 1; k <= degree(); ++k)
    out.coeffs_.push_back(k * coeffs_[k]);
  out.normalize();
  return out;
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * x + coeffs_[k];
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                          Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a[static_cast<int>(k)] + b[static_cast<int>(k)];
  return Poly::from_coefficients(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  return a + Rational(-1) * b;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1,
                          Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly::from_coefficients(std::move(c));
}

Poly operator*(const Rational& c, const Poly& p) {
  std::vector<Rational> out(p.coeffs_);
  for (auto& x : out) x *= c;
  return Poly::from_coefficients(std::move(out));
}

// --------------------------------------------------------------------------
// GaussianSeries

GaussianSeries::GaussianSeries(const Poly& p0, int order) {
  if (order < 0)
    throw std::invalid_argument("GaussianSeries: negative truncation order");
  coeffs_.assign(order + 1, Poly());
  coeffs_[0] = p0;
}

const Poly& GaussianSeries::coeff(int k) const {
  static const Poly zero;
  if (k < 0 || k > order()) return zero;
  return coeffs_[k];
}

GaussianSeries GaussianSeries::derivative() const {
  GaussianSeries out(Poly(), order());
  const Poly x = Poly::variable();
  for (int k = 0; k <= order(); ++k) {
    out.coeffs_[k] = coeffs_[k].derivative();
    if (k >= 1)
      out.coeffs_[k] = out.coeffs_[k] - Rational(8) * (x * coeffs_[k - 1]);
  }
  return out;
}

GaussianSeries GaussianSeries::operator+(const GaussianSeries& other) const {
  if (order() != other.order())
    throw std::invalid_argument("GaussianSeries: mismatched truncation orders");
  GaussianSeries out(Poly(), order());
  for (int k = 0; k <= order(); ++k)
    out.coeffs_[k] = coeffs_[k] + other.coeffs_[k];
  return out;
}

GaussianSeries GaussianSeries::scaled(const Rational& c) const {
  GaussianSeries out(Poly(), order());
  for (int k = 0; k <= order(); ++k) out.coeffs_[k] = c * coeffs_[k];
  return out;
}

// --------------------------------------------------------------------------
// Asymptotic expansions

const Poly& AsymptoticExpansion::coefficient(int k) const {
  if (k < -1 || k > order)
    throw std::out_of_range("AsymptoticExpansion: coefficient index");
  return coeffs[k + 1];
}

AsymptoticExpansion AsymptoticExpansion::evaluate(const Rational& m) const {
  AsymptoticExpansion out;
  out.order = order;
  out.coeffs.reserve(coeffs.size());
  for (const auto& p : coeffs) out.coeffs.push_back(Poly(p(m)));
  return out;
}

Rational bernoulli(int even_index) {
  static const Rational table[] = {Rational(1, 6),   Rational(-1, 30),
                                   Rational(1, 42),  Rational(-1, 30),
                                   Rational(5, 66),  Rational(-691, 2730)};
  if (even_index < 2 || even_index % 2 != 0 || even_index > 12)
    throw std::invalid_argument("bernoulli: index beyond the stored table");
  return table[even_index / 2 - 1];
}

AsymptoticExpansion euler_maclaurin(int order) {
  if (order < 0) throw std::invalid_argument("euler_maclaurin: negative order");
  // The t^k coefficient draws on f^{(2j−1)} for j ≤ k+1 (the lowest t power
  // of the (2j−1)-th derivative is t^{j−1}).
  const int j_max = order + 1;
  if (2 * j_max > 12)
    throw std::invalid_argument(
        "euler_maclaurin: order beyond the stored Bernoulli numbers");

  AsymptoticExpansion out;
  out.order = order;
  out.coeffs.assign(order + 2, Poly());

  // Integral term: ∫_m^∞ 2x e^{−4tx²} dx = e^{−4m²t} / (4t).
  out.coeffs[0] = Poly(Rational(1, 4));

  // Boundary term f(m)/2 and the Bernoulli corrections −B_{2j}/(2j)! f^{(2j−1)}.
  const Poly x = Poly::variable();
  const GaussianSeries f(Rational(2) * x, order);
  GaussianSeries total = f.scaled(Rational(1, 2));
  GaussianSeries deriv = f.derivative();
  for (int j = 1; j <= j_max; ++j) {
    total = total + deriv.scaled(-bernoulli(2 * j) / factorial(2 * j));
    if (j < j_max) deriv = deriv.derivative().derivative();
  }
  for (int k = 0; k <= order; ++k) out.coeffs[k + 1] = total.coeff(k);
  return out;
}

AsymptoticExpansion cp1_series(int order) {
  const AsymptoticExpansion em = euler_maclaurin(order);

  // Exact prefactor e^{t(8m² − 12m + 4)} as a power series in t.
  const Poly exponent =
      Poly::from_coefficients({Rational(4), Rational(-12), Rational(8)});
  std::vector<Poly> exp_pow(order + 2, Poly(Rational(1)));
  for (int i = 1; i <= order + 1; ++i) exp_pow[i] = exp_pow[i - 1] * exponent;

  AsymptoticExpansion out;
  out.order = order;
  out.coeffs.assign(order + 2, Poly());
  for (int k = -1; k <= order; ++k) {
    Poly acc;
    for (int i = 0; i <= k + 1; ++i)
      acc = acc + (Rational(1) / factorial(i)) *
                      (exp_pow[i] * em.coefficient(k - i));
    out.coeffs[k + 1] = acc;
  }
  return out;
}

AsymptoticExpansion cp1_asymptotics(int l, int order) {
  if (l < 0) throw std::invalid_argument("cp1_asymptotics: l >= 0");
  return cp1_series(order).evaluate(Rational(l + 1));
}

FittedCoefficients fit_asymptotics(int l, const std::vector<double>& t_grid) {
  if (l < 0) throw std::invalid_argument("fit_asymptotics: l >= 0");
  if (t_grid.size() < 6)
    throw std::invalid_argument("fit_asymptotics: need at least six grid points");
  for (double t : t_grid)
    if (t <= 0.0 || t > 0.05)
      throw std::invalid_argument("fit_asymptotics: grid must lie in (0, 0.05]");

  const int rows = static_cast<int>(t_grid.size());
  Eigen::MatrixXd design(rows, 4);
  Eigen::VectorXd target(rows);
  for (int i = 0; i < rows; ++i) {
    const double t = t_grid[i];
    const double value = heat_trace(l, t, 1e-13);
    // Relative weighting: divide each equation by its observed value so all
    // scales of t contribute evenly.
    design(i, 0) = (1.0 / t) / value;
    design(i, 1) = 1.0 / value;
    design(i, 2) = t / value;
    design(i, 3) = (t * t) / value;
    target(i) = 1.0;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 4)
    throw std::runtime_error("fit_asymptotics: ill-conditioned grid");
  const Eigen::VectorXd sol = qr.solve(target);
  return {sol(0), sol(1), sol(2)};
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

}  // namespace symspec::spectrum
