#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "symspec/unrep.hpp"

// Frame-level differential geometry on sampled symplectic-hermitian
// manifolds: unitary frames, the hermitian connection one-form, torsion and
// curvature in frame components, and the scalar invariants that feed the
// heat-trace coefficients.
//
// Conventions. A model of real dimension 2n carries at every sample point a
// unitary frame (ê_1..ê_n, f_1..f_n) stored as the columns of `frame` (chart
// components). The metric is canonical in this frame, the almost complex
// structure acts as J ê_j = f_j, J f_j = -ê_j, and the symplectic form is
// ω(ê_i, f_j) = δ_ij. Connection values are 2n×2n matrices in frame indices
// with the row convention (A e_j = Σ_m A_{jm} e_m); they satisfy the same
// antisymmetry/J-compatibility constraints as unrep::UnAlgebraElement.
namespace symspec::geometry {

enum class ModelKind { flat_torus, round_sphere, twisted_flat, sampled_grid };

// Everything the pointwise operations need at one quadrature node.
struct PointSample {
  Eigen::VectorXd coords;  // chart coordinates, size dim = 2n
  double weight = 0.0;     // quadrature weight (volume element included)
  Eigen::MatrixXd frame;   // column a = chart components of frame vector e_a
  Eigen::MatrixXd metric;  // chart-coordinate metric g_{μν}
  // Connection one-form: u[μ] is the frame-index matrix of u(∂_μ).
  std::vector<Eigen::MatrixXd> u;
  // First derivatives: du[μ][ν] = ∂_μ u[ν]; dframe[μ] = ∂_μ frame.
  std::vector<std::vector<Eigen::MatrixXd>> du;
  std::vector<Eigen::MatrixXd> dframe;
  // Levi-Civita scalars of the Riemannian metric.
  double rho = 0.0;    // scalar curvature, normalized to 2 on the unit sphere
  double ric2 = 0.0;   // Ric_{μν} Ric^{μν}
  double riem2 = 0.0;  // R_{μνρσ} R^{μνρσ}
  // Levi-Civita divergence of the torsion-trace covector τ. The built-in
  // models all have τ either identically zero (torsion-free) or with constant
  // frame components on a flat background, so the factories fill this with
  // the (zero) closed form rather than differencing second derivatives.
  double div_tau = 0.0;
};

// Scalar invariants integrated over the model, the inputs of the closed-form
// heat coefficients.
struct InvariantIntegrals {
  double vol = 0.0;
  double int_rho = 0.0;   // ∫ ρ
  double int_rho2 = 0.0;  // ∫ ρ²
  double int_S = 0.0;     // ∫ Σ_{ij} g(R(ê_i,f_i) ê_j, f_j)
  double int_TT = 0.0;    // ∫ g(𝔗,𝔗), 𝔗 = Σ_j T(ê_j,f_j)
  double int_T2 = 0.0;    // ∫ Σ_{ij} g(T(e_i,e_j), T(e_i,e_j))
  double int_Tquad = 0.0; // ∫ Σ_{ij} g(T(T(e_i,e_j),e_i), e_j)
  double int_tau2 = 0.0;  // ∫ Σ_j τ(e_j)²
};

// An immutable sampled manifold. Built-in factories carry analytic frames,
// connections and derivatives; the sampled_* variants replace all derivative
// data by central differences at the grid spacing, for convergence checks.
class GeometryModel {
 public:
  // Flat torus with the given periods (one per chart axis, even count),
  // trivial frame and vanishing connection.
  static GeometryModel flat_torus(const std::vector<double>& periods,
                                  int resolution);

  // Round sphere of the given radius with the Levi-Civita hermitian
  // connection; latitude-longitude grid offset by half a cell so no sample
  // sits on a pole. Band-exact quadrature weights sum to 4πr².
  static GeometryModel round_sphere(double radius, int n_theta, int n_phi);

  // Flat background with constant connection values, one per chart axis.
  // Exists to exercise the torsion terms of the heat coefficients.
  static GeometryModel twisted_flat(
      const std::vector<unrep::UnAlgebraElement>& u_values,
      const std::vector<double>& periods, int resolution);

  // Finite-difference variants: du/dframe and the Levi-Civita scalars come
  // from central differences of the analytic fields, so pointwise identities
  // hold only to O(h²). The sphere variant keeps θ ∈ [π/8, 7π/8]: within one
  // cell of a pole the 1/sinθ frame factor varies on the scale of the node's
  // distance to the pole, so no fixed-order stencil converges there; on a
  // fixed band the differences are uniformly second order. Needs n_theta ≥ 12
  // so every stencil stays clear of the poles.
  static GeometryModel sampled_round_sphere(double radius, int n_theta,
                                            int n_phi);
  static GeometryModel sampled_flat_torus(const std::vector<double>& periods,
                                          int resolution);

  ModelKind kind() const { return kind_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  double volume() const { return volume_; }
  const std::vector<PointSample>& samples() const { return samples_; }
  const std::string& description() const { return description_; }

 private:
  GeometryModel() = default;
  static GeometryModel build_sphere(double radius, int n_theta, int n_phi,
                                    bool sampled);

  ModelKind kind_ = ModelKind::flat_torus;
  int n_ = 1;
  double volume_ = 0.0;
  std::vector<PointSample> samples_;
  std::string description_;
};

// Frame components of the commutator [e_a, e_b] at the sample point,
// computed from the frame derivatives.
Eigen::VectorXd bracket_frame(const PointSample& s, int a, int b);

// Frame components of the torsion T(e_a, e_b) =
// u(e_a) e_b - u(e_b) e_a - [e_a, e_b].
Eigen::VectorXd torsion(const PointSample& s, int a, int b);

// Frame-index matrix M of the curvature endomorphism R(e_a, e_b), i.e.
// R(e_a,e_b) e_p = Σ_m M(p,m) e_m, assembled from the Yang-Mills type field
// strength F_{μν} = -∂_μ u_ν + ∂_ν u_μ + [u_μ, u_ν] as
// M = Σ_{μν} e_a^ν e_b^μ F_{μν}.
Eigen::MatrixXd curvature(const PointSample& s, int a, int b);

// Pointwise torsion-trace objects: the vector 𝔗 = Σ_j T(ê_j, f_j) and the
// covector values τ(e_a) = Σ_k g(T(e_k, e_a), e_k), both in frame components.
Eigen::VectorXd torsion_trace_vector(const PointSample& s);
Eigen::VectorXd torsion_trace_covector(const PointSample& s);

// Quadrature-integrated torsion scalars (plus the volume); the curvature
// fields of the result are left zero.
InvariantIntegrals torsion_invariants(const GeometryModel& model);

// All scalar invariants, integrated with the model's quadrature weights.
InvariantIntegrals invariant_integrals(const GeometryModel& model);

// Maximum pointwise residual of the identity relating the frame-curvature
// sum Σ_{jk} g(R(e_j,e_k)e_j,e_k) to the Riemannian scalar curvature and
// torsion invariants:
//   Σ_{jk} g(R(e_j,e_k)e_j,e_k) = -ρ + 2 div τ + Σ_j τ(e_j)²
//     - (1/4) Σ_{jl} [ 2 g(T(T(e_j,e_l),e_l),e_j) + g(T(e_j,e_l),T(e_j,e_l)) ]
// Vanishes identically on exact data; O(h²) on sampled grids.
double curvature_identity_residual(const GeometryModel& model);

}  // namespace symspec::geometry
