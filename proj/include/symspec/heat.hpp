#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "symspec/fock.hpp"
#include "symspec/geometry.hpp"
#include "symspec/rational.hpp"

// Heat-trace coefficients of the squared symplectic Dirac operator restricted
// to a fixed oscillator level, computed along two independent routes:
//
//  * assemble_canonical() + gilkey(): write the operator in canonical
//    Laplace form P = -(g^{μν} ∇̄_μ ∇̄_ν + Ē) by completing the square of the
//    first-order term, restrict Ē and the fiber curvature Ω̄ of ∇̄ to the
//    level block, and feed the universal small-t expansion of a Laplace-type
//    operator (Gilkey's a0, a2, a4 integrands).
//
//  * a_generic() / a_kahler2d(): closed-form expressions of the same
//    coefficients in the integrated scalar invariants of the model.
//
// Agreement of the two routes on a model with torsion pins every sign and
// index-ordering convention of the assembly, which is why both exist.
namespace symspec::heat {

using fock::Complex;

// Level-restricted fiber data at one quadrature node.
struct HeatPoint {
  Eigen::MatrixXcd e;  // canonical endomorphism Ē on the level block
  // omega[a][b] = fiber curvature Ω̄(e_a, e_b) of the completed connection on
  // the level block, antisymmetric in (a, b). Required for a4 only.
  std::vector<std::vector<Eigen::MatrixXcd>> omega;
  double rho = 0.0;    // Levi-Civita scalar curvature
  double ric2 = 0.0;   // Ric_{μν} Ric^{μν}
  double riem2 = 0.0;  // R_{μνρσ} R^{μνρσ}
  double weight = 0.0; // quadrature weight
};

// Assembled level-l fiber data over a whole model.
struct HeatData {
  int n = 0;      // complex fiber dimension (real manifold dimension 2n)
  int level = 0;  // oscillator level of the subbundle
  int rank = 0;   // dimension of the level block
  std::vector<HeatPoint> points;
};

struct HeatCoefficients {
  double a0 = 0.0;
  double a2 = 0.0;
  std::optional<double> a4;  // engaged only when the route provides it
};

// Restriction of a truncated fiber operator to its level-l diagonal block,
// bypassing the conservative guard bookkeeping of FiberOperator.
//
// The guard assumes the worst case, i.e. that every factor able to raise k
// levels pollutes the top k levels of any product it enters. The canonical
// assembly only ever multiplies operators that are at most quadratic in the
// oscillator variables, and a matrix element of such a product between
// levels l and l' traverses intermediate levels max(l, l') + 1 at most. With
// the working cutoff L = level + 2 every intermediate needed by the level-l
// diagonal block of v, g(v,v), the curvature term, their commutators and Ω̄
// is present, so the truncated block coincides with the untruncated one even
// though the guard (correctly, for generic entries) refuses to certify the
// full matrix. Validates 0 <= level <= max_level - 2.
Eigen::MatrixXcd level_slice(const fock::FiberOperator& op,
                             const fock::FockBasis& basis, int level);

// The canonical-form fiber operators at one sample point, on the full
// truncated basis. Intended for cross-checks; gilkey() consumes the
// level_slice() of endomorphism and omega.
//
// With ∇ the hermitian connection (fiber coefficients σ_c = -r_Q(u(e_c)))
// and T its torsion, completing the square in
//   P = -g^{μν} ∇_μ ∇_ν - 2 g(v, ∇) - ...
// yields the shifted connection ∇̄ = ∇ + v with
//   v(e_c) = (i/2) Σ_{jk} g(T(e_j,e_k), e_c) (J e_j ·)(e_k ·) + ½ (J𝔗)_c,
//   Ē     = -div v - g(v,v) + W,
//   W     = -i Σ_{jk} (J e_j ·)(e_k ·) R^Q(e_j,e_k),
//   R^Q(e_a,e_b) = -r_Q(R(e_a,e_b)),
//   Ω̄(e_a,e_b)  = R^Q(e_a,e_b) + [σ_a, v_b] - [σ_b, v_a]
//                  - Σ_c <[e_a,e_b], e_c> v_c + [v_a, v_b].
// div v is the Levi-Civita divergence of the fiber-valued one-form v; every
// built-in family has either v ≡ 0 (torsion-free models) or a flat metric
// with constant frame components of v (twisted flat models), so its
// coordinate-derivative and Christoffel parts vanish identically and only
// the fiber commutator Σ_c [σ_c, v_c] survives. The same reasoning kills the
// derivative terms ∂_a v_b - ∂_b v_a of Ω̄.
struct CanonicalPointOps {
  std::vector<fock::FiberOperator> v;  // frame components of the shift
  fock::FiberOperator gvv;             // g(v, v)
  fock::FiberOperator div_v;           // Σ_c [σ_c, v_c]
  fock::FiberOperator curvature_term;  // W
  fock::FiberOperator endomorphism;    // Ē
  std::vector<std::vector<fock::FiberOperator>> omega;  // Ω̄(e_a, e_b)
};

CanonicalPointOps canonical_point_ops(const geometry::PointSample& s, int n,
                                      const fock::FockBasis& basis);

// Assembles the level-l heat data of a model on the truncated fiber with
// cutoff L = level + 2 (see level_slice for why that suffices for exact
// blocks). Validates n == model.n() and level >= 0.
HeatData assemble_canonical(const geometry::GeometryModel& model, int n,
                            int level);

// Universal heat coefficients of a Laplace-type operator from assembled
// data, with deterministic ordered accumulation:
//   a0 = (4π)^{-n} ∫ tr 1
//   a2 = (4π)^{-n} (1/6) ∫ tr(6 Ē + ρ)
//   a4 = (4π)^{-n} (1/360) ∫ tr(60 ρ Ē + 180 Ē² + 5ρ² - 2|Ric|² + 2|Riem|²
//                                + 30 Σ_{ab} Ω̄_{ab} Ω̄_{ab})
// (the Ω̄ sum runs over ordered index pairs). Throws std::invalid_argument
// if want_a4 is set but a point carries no fiber curvature table. The
// integrands are real for the models at hand; imaginary round-off is
// discarded.
HeatCoefficients gilkey(const HeatData& data, bool want_a4);

// Closed-form a0 and a2 for a general model from its integrated invariants,
// with α = l(l+n)/(n(n+1)), q_l = -(l + n/2), r = rank of the level block:
//   a0 = (4π)^{-n} r vol
//   a2 = (4π)^{-n} r ∫ [ (1/6 + α/2) ρ + (α - 2 q_l²/n²) S
//          + α ( (1/4) Σ g(T(T(e_i,e_j),e_j), e_i) + (3/8) Σ |T(e_i,e_j)|² )
//          + (-1/4 + q_l²/n² - α/(2n)) g(𝔗,𝔗) - (α/2) Σ τ(e_j)² ]
// The quartic torsion contraction pairs the free slots as
// g(T(T(e_i,e_j),e_j), e_i), which by antisymmetry of T is the negative of
// the int_Tquad pairing stored in InvariantIntegrals; this is the pairing
// under which the closed form agrees with the assembled operator on twisted
// flat backgrounds. No a4 closed form is provided for torsion-full models.
HeatCoefficients a_generic(int n, int level,
                           const geometry::InvariantIntegrals& ints);

// Torsion-free closed 2D Kähler closed forms, with q² = (level + 1/2)²:
//   a0 = vol / 4π
//   a2 = (1 + 6q²) ∫ρ / 24π
//   a4 = (2 + 15q² + 60q⁴) ∫ρ² / 480π
// Throws std::invalid_argument when the invariants carry torsion beyond
// round-off (the formulas assume a torsion-free hermitian structure).
HeatCoefficients a_kahler2d(int level, const geometry::InvariantIntegrals& ints);

// The same coefficients in exact arithmetic, taking the π-normalized inputs
// vol/π, ∫ρ/π and ∫ρ²/π (rational for the round spheres of rational radius
// squared).
struct ExactKahlerCoefficients {
  Rational a0;
  Rational a2;
  Rational a4;
};

ExactKahlerCoefficients a_kahler2d_exact(int level, const Rational& vol_pi,
                                         const Rational& rho_pi,
                                         const Rational& rho2_pi);

// Pointwise closed-form level traces of the two canonical-form pieces, for
// cross-checks against level traces of the assembled matrices. With
// F = α(n,l) · rank(n,l):
//   tr_l g(v,v) = rank (1/4 - q²/n² + α/(2n)) g(𝔗,𝔗)|_pt - (F/4) Σ|T|²​|_pt
//   tr_l W      = (-2 q² rank / n² + F/n) S|_pt - (F/2) Σ g(R(e_j,e_k)e_j,e_k)|_pt
double trace_torsion_quadratic(int n, int level, double tt, double t2);
double trace_curvature_term(int n, int level, double s_sum, double curv_sum);

}  // namespace symspec::heat
