#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

#include "symspec/fock.hpp"
#include "symspec/geometry.hpp"

// Discretized Dirac operators and the spectral (Connes-type) distance on
// two-dimensional surfaces.
//
// A SurfaceMesh is a structured grid of vertices on one of the built-in
// models (flat torus, round sphere), each vertex carrying chart coordinates,
// the unitary frame and the connection values of the continuum model.  On
// top of the mesh live
//   - finite-difference Dirac operators (two variants, differing by a
//     rotation of the Clifford factor by the complex structure J),
//   - the commutator norm ||[D,a] phi0|| of a scalar field a against a
//     constant level-0 spinor, which discretizes the gradient norm
//     sqrt(g^{-1}(da, da)) to second order in the grid spacing, and
//   - the spectral distance  d(x,y) = sup { a(x) - a(y) : ||[D,a]|| <= 1 },
//     approximated by two solvers (a shortest-path relaxation and a
//     projected-ascent refinement of it).
//
// Fiber conventions are those of fock.hpp with n = 1: the frame vectors act
// by symplectic Clifford multiplication, and a level-0 spinor phi0 with
// ||phi0||^2 = 2 turns the Clifford action of a gradient vector into an
// isometry, ||cl(V) phi0|| = |V|.
namespace symspec::distance {

using Complex = std::complex<double>;

// Which first-order operator the Clifford factor belongs to:
//   tilde:     sum_c  (e_c .) nabla_{e_c}
//   j_twisted: -sum_c (J e_c .) nabla_{e_c}
// Both produce the same commutator norm (J is an isometry of the fiber
// metric), hence the same spectral distance; the tests pin that agreement.
enum class DiracVariant { tilde, j_twisted };

enum class DistanceSolver { lipschitz_graph, projected_ascent };

// Structured grid on a built-in surface.  The grid is rectangular in the
// chart (axis 0, axis 1) with wrap rules taken from the model's topology:
//   - flat torus: both axes wrap with the periods;
//   - round sphere: axis 0 is the colatitude theta with vertices offset half
//     a cell so none sits on a pole; stepping past a polar ring lands on the
//     antipodal-longitude vertex of the same ring (the smooth continuation
//     of a scalar field across the pole); axis 1 is the longitude and wraps.
// cut_ring() opens the mesh along a grid ring, turning wrap edges into a
// boundary; neighbor() then reports -1 across the cut.
class SurfaceMesh {
 public:
  static SurfaceMesh flat_torus(double period_x, double period_y, int nx,
                                int ny);
  // Longitude count must be even so the polar continuation j -> j + n_phi/2
  // is an involution on the vertex set.
  static SurfaceMesh round_sphere(double radius, int n_theta, int n_phi);

  geometry::ModelKind kind() const { return kind_; }
  int vertex_count() const { return n0_ * n1_; }
  int grid_size(int axis) const { return axis == 0 ? n0_ : n1_; }
  double spacing(int axis) const { return axis == 0 ? h0_ : h1_; }

  int vertex(int i, int j) const;  // i in [0, n0), j in [0, n1)
  // Neighbor across one grid step (step = +1 or -1) along a chart axis,
  // honoring wrap and polar continuation; -1 when a cut (or nothing) lies
  // in the way.
  int neighbor(int v, int axis, int step) const;

  const Eigen::Vector2d& coords(int v) const { return coords_[v]; }
  // Column a = chart components of the frame vector e_a (unitary frame).
  const Eigen::Matrix2d& frame(int v) const { return frame_[v]; }
  // Frame-index matrix of the connection one-form u(d_axis); zero on the
  // torus, the standard cos(theta) rotation generator on the sphere.
  const Eigen::Matrix2d& connection(int v, int axis) const;

  // True when parallel transport around every wrap edge is trivial, i.e.
  // spinor sections can be identified across the wrap (flat torus).  The
  // sphere's polar continuation is only defined for scalar fields, so Dirac
  // assembly is refused there.
  bool spinor_identification() const;

  // Opens the mesh between grid lines `index` and `index + 1` along the
  // given axis (a full ring of severed edges).  Two cuts along the same
  // axis disconnect a torus into two cylinders; used to exercise boundary
  // and connectivity error paths.
  void cut_ring(int axis, int index);
  bool has_cuts() const { return !cuts_[0].empty() || !cuts_[1].empty(); }

  // Model parameters for the geodesic oracle.
  double radius() const { return radius_; }
  double period(int axis) const { return axis == 0 ? period0_ : period1_; }

 private:
  SurfaceMesh() = default;

  geometry::ModelKind kind_ = geometry::ModelKind::flat_torus;
  int n0_ = 0, n1_ = 0;
  double h0_ = 0.0, h1_ = 0.0;
  double period0_ = 0.0, period1_ = 0.0;  // torus
  double radius_ = 0.0;                   // sphere
  std::vector<Eigen::Vector2d> coords_;
  std::vector<Eigen::Matrix2d> frame_;
  std::vector<std::array<Eigen::Matrix2d, 2>> u_;
  std::array<std::vector<int>, 2> cuts_;  // severed rings per axis
};

// Real scalar field, one value per vertex (mesh vertex order).
using ScalarField = std::vector<double>;

// Spinor sections are flattened complex vectors, vertex-major: the fiber
// vector of vertex v occupies entries [v*dim, (v+1)*dim) with dim the Fock
// basis dimension.
using SpinorSection = Eigen::VectorXcd;

// Constant section with the given fiber value at every vertex.
SpinorSection constant_section(const SurfaceMesh& mesh,
                               const Eigen::VectorXcd& fiber);

// Plane wave e^{i k.x} tensor a constant fiber value (torus charts).
SpinorSection plane_wave(const SurfaceMesh& mesh, const Eigen::Vector2d& k,
                         const Eigen::VectorXcd& fiber);

// Centered-difference gradient of a scalar field in frame components,
//   (e_0 . a, e_1 . a)(v) + O(h^2).
// Throws when a stencil neighbor is missing (cut mesh).
Eigen::Vector2d frame_gradient(const SurfaceMesh& mesh, const ScalarField& a,
                               int v);

// Sparse finite-difference Dirac operator on flattened sections: centered
// differences for the chart derivatives, the fiber representation of the
// connection on the diagonal, Clifford factors per DiracVariant.  Requires a
// mesh with spinor identification across all wraps and no cuts.
Eigen::SparseMatrix<Complex> assemble_dirac(const SurfaceMesh& mesh,
                                            const fock::FockBasis& basis,
                                            DiracVariant variant);

// || [D, a] phi0 ||  at vertex v for a constant level-0 spinor phi0 with
// ||phi0||^2 = 2.  The connection cancels in the commutator and the constant
// section collapses the stencil, leaving exactly the Clifford action of the
// centered-difference gradient; the norm equals |frame_gradient| and
// approximates sqrt(g^{-1}(da,da)) to O(h^2).  Throws when phi0 is not a
// level-0 vector of the stated norm.
double commutator_norm(const SurfaceMesh& mesh, const fock::FockBasis& basis,
                       const ScalarField& a, int v,
                       const Eigen::VectorXcd& phi0,
                       DiracVariant variant = DiracVariant::tilde);

// Exact geodesic distance between two chart points of the mesh's model:
// wrap-minimized Euclidean distance on the torus, radius times great-circle
// angle on the sphere.
double geodesic_oracle(const SurfaceMesh& mesh, const Eigen::Vector2d& x,
                       const Eigen::Vector2d& y);

// Spectral distance between two mesh vertices,
//   sup { a(x) - a(y) :  ||[D, a] phi0||_v <= 1 at every vertex v }.
//
// lipschitz_graph relaxes the per-vertex gradient-ball constraint to
// per-edge bounds |a(u) - a(w)| <= geodesic length over the 8-neighbor
// graph and returns the relaxation's optimum, the shortest-path distance.
//
// projected_ascent maximizes a(x) - a(y) by projected gradient ascent over
// the per-vertex quadratic constraints.  The constraint set bounds the
// one-sided (forward and backward) frame-difference vectors by the fiber
// commutator norm; the one-sided pair is used instead of the centered
// stencil because the centered difference annihilates the checkerboard
// lattice modes, which would leave the discrete supremum unbounded.  The
// solver starts from 0.95 times the graph solution, projects onto the
// constraints by cyclic sweeps (tolerance 1e-8), and stops after at most
// 10^4 ascent steps or when the objective stalls.
//
// Throws std::runtime_error when the two vertices are not connected.
double spectral_distance(const SurfaceMesh& mesh, int x, int y,
                         DistanceSolver solver,
                         DiracVariant variant = DiracVariant::tilde);

}  // namespace symspec::distance
