#pragma once

#include <cstdint>
#include <vector>

#include "symspec/rational.hpp"

// Exact spectrum of the level-l operator on the complex projective line,
// rigorous summation of its heat trace, and an exact-rational asymptotic
// expansion engine that reproduces the small-t behaviour symbolically. The
// three routes (exact series coefficients, certified numerical summation
// plus fitting, and the closed-form heat coefficients of the radius-1/2
// sphere) must land on the same numbers; the test suite closes the triangle.
namespace symspec::spectrum {

// ---------------------------------------------------------------------------
// Exact spectrum. The level-l operator has eigenvalues
//   λ_{l,j} = 4(l+j+1)² − 3(2l+1)² − 1, j = 0, 1, 2, ...
// with degeneracy m_{l,j} = 2(l+j+1). Negative eigenvalues occur for l ≥ 1.
std::int64_t eigenvalue(int l, int j);
std::int64_t degeneracy(int l, int j);

// Heat trace K(l, t) = Σ_j m_{l,j} e^{−t λ_{l,j}}
//               = e^{t(3(2l+1)²+1)} Σ_{k=l+1}^∞ 2k e^{−4tk²},
// summed to a cutoff K certified by the integral comparison bound for
// decreasing summands,
//   tail ≤ e^{−4tK²} (1/(4t) + 2K),
// with the cutoff chosen so the bound times the exponential prefactor stays
// below tol (so tol bounds the error of the returned value, not just of the
// bare sum). Kahan-compensated ascending summation. Throws
// std::invalid_argument for t ≤ 0 or tol ≤ 0.
double heat_trace(int l, double t, double tol = 1e-13);

// ---------------------------------------------------------------------------
// Dense polynomial over the exact rationals (variable conventionally m).
class Poly {
 public:
  Poly() = default;  // zero polynomial
  explicit Poly(const Rational& constant);
  static Poly variable();
  // Coefficients in ascending degree; trailing zeros are stripped.
  static Poly from_coefficients(std::vector<Rational> coeffs);

  int degree() const;  // -1 for the zero polynomial
  const Rational& operator[](int k) const;  // zero beyond the degree
  Poly derivative() const;
  Rational operator()(const Rational& x) const;

  bool operator==(const Poly& other) const { return coeffs_ == other.coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& p);

 private:
  void normalize();
  std::vector<Rational> coeffs_;  // ascending degree
};

// Finite expression (Σ_{k=0}^{order} p_k(x) t^k) · e^{−4t x²} with exact
// rational polynomial coefficients, truncated at the fixed order in t. The
// ring is closed under addition, scalar and polynomial multiplication, and
// d/dx, which acts as p_k ↦ p_k′ − 8x p_{k−1} (the Gaussian factor feeds the
// next t order).
class GaussianSeries {
 public:
  GaussianSeries(const Poly& p0, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Poly& coeff(int k) const;  // zero polynomial beyond the order

  GaussianSeries derivative() const;
  GaussianSeries operator+(const GaussianSeries& other) const;
  GaussianSeries scaled(const Rational& c) const;

 private:
  std::vector<Poly> coeffs_;  // index k ↔ t^k
};

// Laurent-type small-t expansion c₋₁/t + c₀ + c₁ t + ... + c_order t^order
// with polynomial-in-m coefficients.
struct AsymptoticExpansion {
  int order = 0;
  std::vector<Poly> coeffs;  // coeffs[k] = c_{k-1}

  const Poly& coefficient(int k) const;  // k in [-1, order]
  // Replace every coefficient by its value at m (degree-0 polynomials).
  AsymptoticExpansion evaluate(const Rational& m) const;
};

// Exact Bernoulli numbers B_2, B_4, ..., stored through B_12; index by the
// even subscript. Throws std::invalid_argument beyond the table.
Rational bernoulli(int even_index);

// Asymptotic expansion of the bare Gaussian sum: with f(x) = 2x e^{−4tx²},
//   Σ_{k=m}^∞ f(k) = ∫_m^∞ f + f(m)/2 − Σ_{j≥1} B_{2j}/(2j)! f^{(2j−1)}(m)
//                  = e^{−4m²t} (1/(4t) + (m − 1/6) + t(4m²/3 − 1/15) + ...),
// returned as the bracketed series with symbolic m. The t^k coefficient
// needs Bernoulli numbers through B_{2(k+1)}, so the stored table supports
// order ≤ 5; higher orders throw std::invalid_argument.
AsymptoticExpansion euler_maclaurin(int order);

// The heat-trace expansion on the projective line with m kept symbolic:
// multiplies the Euler-Maclaurin bracket by the exact exponential prefactor
// e^{t(8m² − 12m + 4)} expanded as a rational power series. The first three
// coefficients are
//   c₋₁ = 1/4, c₀ = 2m² − 2m + 5/6, c₁ = 8m⁴ − 16m³ + 14m² − 6m + 19/15.
AsymptoticExpansion cp1_series(int order);

// The same expansion with the polynomials evaluated at m = l + 1.
AsymptoticExpansion cp1_asymptotics(int l, int order);

// ---------------------------------------------------------------------------
// Numerical confirmation: least-squares fit of certified heat-trace values
// against the basis {1/t, 1, t, t²} with relative weighting (the t² column
// absorbs the next order and stabilizes c1). Requires at least six grid
// points inside (0, 0.05]; throws std::invalid_argument on a bad grid and
// std::runtime_error when the design matrix is rank-deficient.
struct FittedCoefficients {
  double c_minus1 = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
};

FittedCoefficients fit_asymptotics(int l, const std::vector<double>& t_grid);

// Logarithmically spaced grid on [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace symspec::spectrum
