#include "symspec/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symspec/unrep.hpp"

namespace symspec::distance {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d rotation_generator() {
  Eigen::Matrix2d k;
  k << 0, 1, -1, 0;
  return k;
}

bool contains(const std::vector<int>& xs, int x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

// ---------------------------------------------------------------------------
// SurfaceMesh

SurfaceMesh SurfaceMesh::flat_torus(double period_x, double period_y, int nx,
                                    int ny) {
  if (!(period_x > 0.0) || !(period_y > 0.0))
    throw std::invalid_argument("torus periods must be positive");
  if (nx < 4 || ny < 4)
    throw std::invalid_argument("torus mesh needs at least 4x4 vertices");

  SurfaceMesh m;
  m.kind_ = geometry::ModelKind::flat_torus;
  m.n0_ = nx;
  m.n1_ = ny;
  m.period0_ = period_x;
  m.period1_ = period_y;
  m.h0_ = period_x / nx;
  m.h1_ = period_y / ny;
  m.coords_.reserve(nx * ny);
  m.frame_.assign(nx * ny, Eigen::Matrix2d::Identity());
  m.u_.assign(nx * ny, {Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()});
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      m.coords_.push_back(Eigen::Vector2d(i * m.h0_, j * m.h1_));
  return m;
}

SurfaceMesh SurfaceMesh::round_sphere(double radius, int n_theta, int n_phi) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (n_theta < 4 || n_phi < 4)
    throw std::invalid_argument("sphere mesh needs at least 4x4 vertices");
  if (n_phi % 2 != 0)
    throw std::invalid_argument(
        "sphere mesh needs an even longitude count for the polar "
        "continuation");

  SurfaceMesh m;
  m.kind_ = geometry::ModelKind::round_sphere;
  m.n0_ = n_theta;
  m.n1_ = n_phi;
  m.radius_ = radius;
  m.h0_ = kPi / n_theta;
  m.h1_ = 2.0 * kPi / n_phi;
  m.coords_.reserve(n_theta * n_phi);
  m.frame_.reserve(n_theta * n_phi);
  m.u_.reserve(n_theta * n_phi);
  const Eigen::Matrix2d K = rotation_generator();
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (i + 0.5) * m.h0_;  // offset: no vertex on a pole
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * m.h1_;
      m.coords_.push_back(Eigen::Vector2d(theta, phi));
      Eigen::Matrix2d e = Eigen::Matrix2d::Zero();
      e(0, 0) = 1.0 / radius;
      e(1, 1) = 1.0 / (radius * std::sin(theta));
      m.frame_.push_back(e);
      m.u_.push_back({Eigen::Matrix2d::Zero(), std::cos(theta) * K});
    }
  }
  return m;
}

int SurfaceMesh::vertex(int i, int j) const {
  if (i < 0 || i >= n0_ || j < 0 || j >= n1_)
    throw std::out_of_range("grid index out of range");
  return i * n1_ + j;
}

const Eigen::Matrix2d& SurfaceMesh::connection(int v, int axis) const {
  if (v < 0 || v >= vertex_count())
    throw std::out_of_range("vertex index out of range");
  if (axis < 0 || axis > 1) throw std::out_of_range("axis must be 0 or 1");
  return u_[v][axis];
}

bool SurfaceMesh::spinor_identification() const {
  return kind_ == geometry::ModelKind::flat_torus;
}

void SurfaceMesh::cut_ring(int axis, int index) {
  if (axis < 0 || axis > 1) throw std::out_of_range("axis must be 0 or 1");
  const int size = grid_size(axis);
  if (index < 0 || index >= size)
    throw std::out_of_range("cut index out of range");
  if (!contains(cuts_[axis], index)) cuts_[axis].push_back(index);
}

int SurfaceMesh::neighbor(int v, int axis, int step) const {
  if (v < 0 || v >= vertex_count())
    throw std::out_of_range("vertex index out of range");
  if (axis < 0 || axis > 1) throw std::out_of_range("axis must be 0 or 1");
  if (step != 1 && step != -1)
    throw std::invalid_argument("step must be +1 or -1");

  const int i = v / n1_;
  const int j = v % n1_;
  const int size = grid_size(axis);
  const int from = (axis == 0) ? i : j;

  // Ring index of the severed gap this move would cross: the gap between
  // rings r and r+1 carries index r; the wrap seam carries index size-1.
  int gap = (step == 1) ? from : from - 1;
  if (gap < 0) gap += size;

  if (axis == 1) {  // longitude / second period: plain wrap on both models
    if (contains(cuts_[1], gap)) return -1;
    return vertex(i, (j + step + n1_) % n1_);
  }

  const int target = i + step;
  if (kind_ == geometry::ModelKind::flat_torus) {
    if (contains(cuts_[0], gap)) return -1;
    return vertex((target + n0_) % n0_, j);
  }

  // Sphere colatitude axis: continue across the poles to the vertex of the
  // same ring at the antipodal longitude.
  if (target == -1) return vertex(0, (j + n1_ / 2) % n1_);
  if (target == n0_) {
    if (contains(cuts_[0], n0_ - 1)) return -1;
    return vertex(n0_ - 1, (j + n1_ / 2) % n1_);
  }
  if (contains(cuts_[0], gap)) return -1;
  return vertex(target, j);
}

// ---------------------------------------------------------------------------
// Sections

SpinorSection constant_section(const SurfaceMesh& mesh,
                               const Eigen::VectorXcd& fiber) {
  const int dim = static_cast<int>(fiber.size());
  SpinorSection s(static_cast<Eigen::Index>(mesh.vertex_count()) * dim);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    s.segment(static_cast<Eigen::Index>(v) * dim, dim) = fiber;
  return s;
}

SpinorSection plane_wave(const SurfaceMesh& mesh, const Eigen::Vector2d& k,
                         const Eigen::VectorXcd& fiber) {
  const int dim = static_cast<int>(fiber.size());
  SpinorSection s(static_cast<Eigen::Index>(mesh.vertex_count()) * dim);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const double phase = k.dot(mesh.coords(v));
    s.segment(static_cast<Eigen::Index>(v) * dim, dim) =
        std::exp(Complex(0.0, phase)) * fiber;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Discrete gradient and Dirac assembly

Eigen::Vector2d frame_gradient(const SurfaceMesh& mesh, const ScalarField& a,
                               int v) {
  if (static_cast<int>(a.size()) != mesh.vertex_count())
    throw std::invalid_argument("scalar field size does not match the mesh");
  Eigen::Vector2d chart;
  for (int mu = 0; mu < 2; ++mu) {
    const int qp = mesh.neighbor(v, mu, +1);
    const int qm = mesh.neighbor(v, mu, -1);
    if (qp < 0 || qm < 0)
      throw std::runtime_error("gradient stencil crosses a mesh boundary");
    chart[mu] = (a[qp] - a[qm]) / (2.0 * mesh.spacing(mu));
  }
  // e_c . a = sum_mu frame(mu, c) d_mu a
  return mesh.frame(v).transpose() * chart;
}

namespace {

// Clifford factor of the variant for frame axis c (n = 1 fiber):
//   tilde:      e_c .
//   j_twisted: -(J e_c) .   with J e_0 = e_1, J e_1 = -e_0.
fock::FiberOperator clifford_factor(const fock::FockBasis& basis,
                                    DiracVariant variant, int c) {
  if (variant == DiracVariant::tilde)
    return fock::clifford_mult(basis, fock::FrameVector::unit(1, c));
  if (c == 0)
    return Complex(-1.0, 0.0) *
           fock::clifford_mult(basis, fock::FrameVector::unit(1, 1));
  return fock::clifford_mult(basis, fock::FrameVector::unit(1, 0));
}

}  // namespace

Eigen::SparseMatrix<Complex> assemble_dirac(const SurfaceMesh& mesh,
                                            const fock::FockBasis& basis,
                                            DiracVariant variant) {
  if (basis.n() != 1)
    throw std::invalid_argument("surface meshes carry an n = 1 fiber");
  if (basis.max_level() < 1)
    throw std::invalid_argument("fiber cutoff must be at least 1");
  if (!mesh.spinor_identification() || mesh.has_cuts())
    throw std::invalid_argument(
        "mesh has no spinor identification across its wraps");

  const int dim = basis.dim();
  const int nv = mesh.vertex_count();
  const std::array<fock::FiberOperator, 2> cl = {
      clifford_factor(basis, variant, 0), clifford_factor(basis, variant, 1)};

  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(nv) * dim * dim * 5);
  const auto add_block = [&](int v, int w, const fock::Matrix& block) {
    for (int r = 0; r < dim; ++r)
      for (int s = 0; s < dim; ++s)
        if (std::abs(block(r, s)) > 1e-15)
          trips.emplace_back(v * dim + r, w * dim + s, block(r, s));
  };

  for (int v = 0; v < nv; ++v) {
    const Eigen::Matrix2d& e = mesh.frame(v);
    fock::Matrix diag = fock::Matrix::Zero(dim, dim);
    for (int c = 0; c < 2; ++c) {
      for (int mu = 0; mu < 2; ++mu) {
        const double coef = e(mu, c);
        if (coef == 0.0) continue;
        const int qp = mesh.neighbor(v, mu, +1);
        const int qm = mesh.neighbor(v, mu, -1);
        const double w = coef / (2.0 * mesh.spacing(mu));
        add_block(v, qp, Complex(w, 0.0) * cl[c].m);
        add_block(v, qm, Complex(-w, 0.0) * cl[c].m);
        // Connection term: nabla_{d_mu} = d_mu - r_Q(u(d_mu)).
        const Eigen::Matrix2d& umat = mesh.connection(v, mu);
        if (umat.norm() > 0.0) {
          const fock::FiberOperator sigma =
              unrep::r_Q(unrep::UnAlgebraElement(umat), basis);
          diag -= coef * (cl[c] * sigma).m;
        }
      }
    }
    if (diag.norm() > 0.0) add_block(v, v, diag);
  }

  Eigen::SparseMatrix<Complex> op(static_cast<Eigen::Index>(nv) * dim,
                                  static_cast<Eigen::Index>(nv) * dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

double commutator_norm(const SurfaceMesh& mesh, const fock::FockBasis& basis,
                       const ScalarField& a, int v,
                       const Eigen::VectorXcd& phi0, DiracVariant variant) {
  if (basis.n() != 1)
    throw std::invalid_argument("surface meshes carry an n = 1 fiber");
  if (basis.max_level() < 1)
    throw std::invalid_argument("fiber cutoff must be at least 1");
  if (phi0.size() != basis.dim())
    throw std::invalid_argument("phi0 does not match the fiber dimension");
  // Level-0 support and the ||phi0||^2 = 2 normalization make the Clifford
  // action of a gradient an isometry; anything else breaks the identity.
  if (phi0.tail(phi0.size() - basis.rank(0)).norm() > 1e-10)
    throw std::invalid_argument("phi0 must be supported on level 0");
  if (std::abs(phi0.squaredNorm() - 2.0) > 1e-8)
    throw std::invalid_argument("phi0 must have squared norm 2");
  if (v < 0 || v >= mesh.vertex_count())
    throw std::out_of_range("vertex index out of range");

  const Eigen::Vector2d g = frame_gradient(mesh, a, v);
  // [D, a] phi0 = cl(grad a) phi0 (tilde) or -cl(J grad a) phi0 (twisted);
  // the sign does not move the norm.
  fock::FrameVector fv = fock::FrameVector::zero(1);
  if (variant == DiracVariant::tilde) {
    fv.a[0] = g[0];
    fv.b[0] = g[1];
  } else {
    fv.a[0] = -g[1];
    fv.b[0] = g[0];
  }
  const fock::FiberOperator op = fock::clifford_mult(basis, fv);
  return (op.m * phi0).norm();
}

// ---------------------------------------------------------------------------
// Geodesic oracle

double geodesic_oracle(const SurfaceMesh& mesh, const Eigen::Vector2d& x,
                       const Eigen::Vector2d& y) {
  if (mesh.kind() == geometry::ModelKind::flat_torus) {
    double d2 = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double p = mesh.period(c);
      double delta = std::fmod(std::abs(x[c] - y[c]), p);
      delta = std::min(delta, p - delta);
      d2 += delta * delta;
    }
    return std::sqrt(d2);
  }
  const auto unit = [](const Eigen::Vector2d& q) {
    return Eigen::Vector3d(std::sin(q[0]) * std::cos(q[1]),
                           std::sin(q[0]) * std::sin(q[1]), std::cos(q[0]));
  };
  const Eigen::Vector3d ux = unit(x);
  const Eigen::Vector3d uy = unit(y);
  return mesh.radius() * std::atan2(ux.cross(uy).norm(), ux.dot(uy));
}

// ---------------------------------------------------------------------------
// Spectral distance

namespace {

// The 8-neighborhood: axis steps and their diagonal compositions.  On the
// sphere the two composition orders agree (the polar continuation commutes
// with longitude steps), so composing axis 0 then axis 1 is canonical.
std::array<int, 8> eight_neighbors(const SurfaceMesh& mesh, int v) {
  std::array<int, 8> out;
  int k = 0;
  for (int s : {+1, -1}) {
    out[k++] = mesh.neighbor(v, 0, s);
    out[k++] = mesh.neighbor(v, 1, s);
  }
  for (int s0 : {+1, -1})
    for (int s1 : {+1, -1}) {
      const int mid = mesh.neighbor(v, 0, s0);
      out[k++] = (mid < 0) ? -1 : mesh.neighbor(mid, 1, s1);
    }
  return out;
}

std::vector<double> dijkstra(const SurfaceMesh& mesh, int source) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(mesh.vertex_count(), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (int w : eight_neighbors(mesh, v)) {
      if (w < 0) continue;
      const double len = geodesic_oracle(mesh, mesh.coords(v), mesh.coords(w));
      if (d + len < dist[w]) {
        dist[w] = d + len;
        queue.emplace(dist[w], w);
      }
    }
  }
  return dist;
}

// One-sided gradient-ball constraint |C a_idx| <= 1 over three vertices.
struct BallConstraint {
  std::array<int, 3> idx;
  // c[component][vertex slot]
  std::array<std::array<double, 3>, 2> c;
  // inverse of the 2x2 Gram matrix C C^T (symmetric)
  double inv00, inv01, inv11;
};

std::vector<BallConstraint> build_constraints(const SurfaceMesh& mesh) {
  std::vector<BallConstraint> out;
  out.reserve(static_cast<std::size_t>(mesh.vertex_count()) * 2);
  for (int p = 0; p < mesh.vertex_count(); ++p) {
    const Eigen::Matrix2d& e = mesh.frame(p);
    for (int s : {+1, -1}) {
      const int q0 = mesh.neighbor(p, 0, s);
      const int q1 = mesh.neighbor(p, 1, s);
      if (q0 < 0 || q1 < 0) continue;
      BallConstraint b;
      b.idx = {p, q0, q1};
      for (int comp = 0; comp < 2; ++comp) {
        const double w0 = s * e(0, comp) / mesh.spacing(0);
        const double w1 = s * e(1, comp) / mesh.spacing(1);
        b.c[comp] = {-(w0 + w1), w0, w1};
      }
      double g00 = 0.0, g01 = 0.0, g11 = 0.0;
      for (int k = 0; k < 3; ++k) {
        g00 += b.c[0][k] * b.c[0][k];
        g01 += b.c[0][k] * b.c[1][k];
        g11 += b.c[1][k] * b.c[1][k];
      }
      const double det = g00 * g11 - g01 * g01;
      b.inv00 = g11 / det;
      b.inv01 = -g01 / det;
      b.inv11 = g00 / det;
      out.push_back(b);
    }
  }
  return out;
}

// Cyclic sweeps over the ball constraints: each violated constraint is pulled
// radially back to its boundary through the minimum-norm correction on the
// three involved vertices.  Returns the worst violation seen in the last
// sweep.
double project_feasible(std::vector<double>& a,
                        const std::vector<BallConstraint>& constraints,
                        double tol, int max_sweeps) {
  double worst = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    worst = 0.0;
    for (const BallConstraint& b : constraints) {
      double g0 = 0.0, g1 = 0.0;
      for (int k = 0; k < 3; ++k) {
        g0 += b.c[0][k] * a[b.idx[k]];
        g1 += b.c[1][k] * a[b.idx[k]];
      }
      const double m2 = g0 * g0 + g1 * g1;
      if (m2 <= 1.0) continue;
      const double m = std::sqrt(m2);
      worst = std::max(worst, m - 1.0);
      const double t = 1.0 / m;
      const double r0 = (t - 1.0) * g0;
      const double r1 = (t - 1.0) * g1;
      const double l0 = b.inv00 * r0 + b.inv01 * r1;
      const double l1 = b.inv01 * r0 + b.inv11 * r1;
      for (int k = 0; k < 3; ++k)
        a[b.idx[k]] += l0 * b.c[0][k] + l1 * b.c[1][k];
    }
    if (worst <= tol) break;
  }
  return worst;
}

// The ball radius is calibrated through the fiber: for a level-0 spinor with
// ||phi0||^2 = 2 the Clifford action of either variant is an isometry on
// gradient vectors, so the commutator-norm constraint is the unit Euclidean
// ball on frame components.  Verified here rather than assumed.
void verify_unit_calibration(DiracVariant variant) {
  const fock::FockBasis basis(1, 1);
  Eigen::VectorXcd phi0 = Eigen::VectorXcd::Zero(basis.dim());
  phi0[0] = std::sqrt(2.0);
  for (int c = 0; c < 2; ++c)
    for (int d = 0; d < 2; ++d) {
      const Eigen::VectorXcd vc = clifford_factor(basis, variant, c).m * phi0;
      const Eigen::VectorXcd vd = clifford_factor(basis, variant, d).m * phi0;
      const double want = (c == d) ? 1.0 : 0.0;
      if (std::abs(vc.dot(vd).real() - want) > 1e-10)
        throw std::logic_error("fiber norm calibration failed");
    }
}

}  // namespace

double spectral_distance(const SurfaceMesh& mesh, int x, int y,
                         DistanceSolver solver, DiracVariant variant) {
  if (x < 0 || x >= mesh.vertex_count() || y < 0 || y >= mesh.vertex_count())
    throw std::out_of_range("vertex index out of range");
  if (x == y) return 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  if (solver == DistanceSolver::lipschitz_graph) {
    const std::vector<double> dist = dijkstra(mesh, x);
    if (dist[y] == inf)
      throw std::runtime_error("vertices lie in different mesh components");
    return dist[y];
  }

  verify_unit_calibration(variant);
  std::vector<double> dist_y = dijkstra(mesh, y);
  if (dist_y[x] == inf)
    throw std::runtime_error("vertices lie in different mesh components");

  const std::vector<BallConstraint> constraints = build_constraints(mesh);
  std::vector<double> a(mesh.vertex_count(), 0.0);
  for (int p = 0; p < mesh.vertex_count(); ++p)
    a[p] = (dist_y[p] == inf) ? 0.0 : 0.95 * dist_y[p];
  project_feasible(a, constraints, 1e-9, 200);

  // Metric grid scale, the natural ascent step.
  double eta0 = 0.0;
  if (mesh.kind() == geometry::ModelKind::flat_torus)
    eta0 = std::min(mesh.spacing(0), mesh.spacing(1));
  else
    eta0 = mesh.radius() * mesh.spacing(0);

  double best = a[x] - a[y];
  double mark = best;
  constexpr int kMaxIterations = 10000;
  for (int k = 1; k <= kMaxIterations; ++k) {
    const double eta = eta0 / std::sqrt(static_cast<double>(k));
    a[x] += eta;
    a[y] -= eta;
    project_feasible(a, constraints, 1e-9, 40);
    best = std::max(best, a[x] - a[y]);
    if (k % 200 == 0) {
      if (best - mark <= 1e-8 * std::max(1.0, std::abs(best))) break;
      mark = best;
    }
  }
  return best;
}

}  // namespace symspec::distance
