#include "symspec/geometry.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace symspec::geometry {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;

MatrixXd complex_structure_2d() {
  MatrixXd k(2, 2);
  k << 0, 1, -1, 0;
  return k;
}

// Odometer enumeration of a uniform grid: calls visit(multi_index) for every
// node of a resolution^dim lattice.
void for_each_node(int dim, int resolution,
                   const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(dim, 0);
  while (true) {
    visit(idx);
    int axis = 0;
    while (axis < dim && ++idx[axis] == resolution) {
      idx[axis] = 0;
      ++axis;
    }
    if (axis == dim) break;
  }
}

void validate_periods(const std::vector<double>& periods) {
  if (periods.empty() || periods.size() % 2 != 0)
    throw std::invalid_argument("periods: need a positive even count of axes");
  for (double p : periods)
    if (!(p > 0.0)) throw std::invalid_argument("periods must be positive");
}

// ---------------------------------------------------------------------------
// Finite-difference Levi-Civita machinery (used by the sampled_* variants).

using MatrixField = std::function<MatrixXd(const VectorXd&)>;

MatrixXd central_diff(const MatrixField& f, const VectorXd& x, int mu,
                      double h) {
  VectorXd xp = x, xm = x;
  xp[mu] += h;
  xm[mu] -= h;
  return (f(xp) - f(xm)) / (2.0 * h);
}

// Christoffel symbols Γ^λ_{μν} from central differences of the metric field;
// result[λ](μ,ν).
std::vector<MatrixXd> christoffel(const MatrixField& metric, const VectorXd& x,
                                  const VectorXd& h) {
  const int d = static_cast<int>(x.size());
  const MatrixXd ginv = metric(x).inverse();
  std::vector<MatrixXd> dg(d);
  for (int mu = 0; mu < d; ++mu) dg[mu] = central_diff(metric, x, mu, h[mu]);
  std::vector<MatrixXd> gamma(d, MatrixXd::Zero(d, d));
  for (int lam = 0; lam < d; ++lam)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        double acc = 0.0;
        for (int sig = 0; sig < d; ++sig)
          acc += ginv(lam, sig) *
                 (dg[mu](sig, nu) + dg[nu](sig, mu) - dg[sig](mu, nu));
        gamma[lam](mu, nu) = 0.5 * acc;
      }
  return gamma;
}

// Scalar curvature, Ric², Riem² by nested central differences of the metric.
// Sign convention: ρ = +2 on the unit sphere.
void lc_scalars(const MatrixField& metric, const VectorXd& x, const VectorXd& h,
                double& rho, double& ric2, double& riem2) {
  const int d = static_cast<int>(x.size());
  const MatrixXd g = metric(x);
  const MatrixXd ginv = g.inverse();
  const std::vector<MatrixXd> gamma = christoffel(metric, x, h);

  // dgamma[α][λ](μ,ν) = ∂_α Γ^λ_{μν}
  std::vector<std::vector<MatrixXd>> dgamma(d);
  for (int alpha = 0; alpha < d; ++alpha) {
    VectorXd xp = x, xm = x;
    xp[alpha] += h[alpha];
    xm[alpha] -= h[alpha];
    const auto gp = christoffel(metric, xp, h);
    const auto gm = christoffel(metric, xm, h);
    dgamma[alpha].resize(d);
    for (int lam = 0; lam < d; ++lam)
      dgamma[alpha][lam] = (gp[lam] - gm[lam]) / (2.0 * h[alpha]);
  }

  // R^λ_{σμν} = ∂_μ Γ^λ_{νσ} - ∂_ν Γ^λ_{μσ} + Γ^λ_{μτ}Γ^τ_{νσ} - Γ^λ_{ντ}Γ^τ_{μσ}
  const auto at = [d](int lam, int sig, int mu, int nu) {
    return ((lam * d + sig) * d + mu) * d + nu;
  };
  std::vector<double> rup(static_cast<std::size_t>(d * d * d * d), 0.0);
  for (int lam = 0; lam < d; ++lam)
    for (int sig = 0; sig < d; ++sig)
      for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
          double val = dgamma[mu][lam](nu, sig) - dgamma[nu][lam](mu, sig);
          for (int tau = 0; tau < d; ++tau)
            val += gamma[lam](mu, tau) * gamma[tau](nu, sig) -
                   gamma[lam](nu, tau) * gamma[tau](mu, sig);
          rup[at(lam, sig, mu, nu)] = val;
        }

  MatrixXd ric = MatrixXd::Zero(d, d);
  for (int sig = 0; sig < d; ++sig)
    for (int nu = 0; nu < d; ++nu) {
      double val = 0.0;
      for (int lam = 0; lam < d; ++lam) val += rup[at(lam, sig, lam, nu)];
      ric(sig, nu) = val;
    }

  rho = (ginv * ric).trace();
  const MatrixXd ric_up = ginv * ric * ginv;  // Ric^{σν}
  ric2 = (ric.array() * ric_up.array()).sum();

  // Fully lowered Riemann tensor, then the complete contraction.
  std::vector<double> rlow(rup.size(), 0.0);
  for (int lam = 0; lam < d; ++lam)
    for (int sig = 0; sig < d; ++sig)
      for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
          double val = 0.0;
          for (int kap = 0; kap < d; ++kap)
            val += g(lam, kap) * rup[at(kap, sig, mu, nu)];
          rlow[at(lam, sig, mu, nu)] = val;
        }
  riem2 = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          double up = 0.0;
          for (int a2 = 0; a2 < d; ++a2)
            for (int b2 = 0; b2 < d; ++b2)
              for (int c2 = 0; c2 < d; ++c2)
                for (int e2 = 0; e2 < d; ++e2)
                  up += ginv(a, a2) * ginv(b, b2) * ginv(c, c2) * ginv(e, e2) *
                        rlow[at(a2, b2, c2, e2)];
          riem2 += up * rlow[at(a, b, c, e)];
        }
}

// ---------------------------------------------------------------------------
// Sphere field functions in (θ, φ) chart coordinates.

struct SphereFields {
  double r;

  MatrixXd metric(const VectorXd& x) const {
    const double s = std::sin(x[0]);
    MatrixXd g = MatrixXd::Zero(2, 2);
    g(0, 0) = r * r;
    g(1, 1) = r * r * s * s;
    return g;
  }
  MatrixXd frame(const VectorXd& x) const {
    const double s = std::sin(x[0]);
    MatrixXd e = MatrixXd::Zero(2, 2);
    e(0, 0) = 1.0 / r;
    e(1, 1) = 1.0 / (r * s);
    return e;
  }
  MatrixXd u(const VectorXd& x, int mu) const {
    if (mu == 1) return std::cos(x[0]) * complex_structure_2d();
    return MatrixXd::Zero(2, 2);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories

GeometryModel GeometryModel::flat_torus(const std::vector<double>& periods,
                                        int resolution) {
  validate_periods(periods);
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  const int dim = static_cast<int>(periods.size());

  GeometryModel m;
  m.kind_ = ModelKind::flat_torus;
  m.n_ = dim / 2;
  m.description_ = "flat torus";

  double cell = 1.0;
  for (double p : periods) cell *= p / resolution;

  for_each_node(dim, resolution, [&](const std::vector<int>& idx) {
    PointSample s;
    s.coords = VectorXd(dim);
    for (int a = 0; a < dim; ++a)
      s.coords[a] = (idx[a] + 0.5) * periods[a] / resolution;
    s.weight = cell;
    s.frame = MatrixXd::Identity(dim, dim);
    s.metric = MatrixXd::Identity(dim, dim);
    s.u.assign(dim, MatrixXd::Zero(dim, dim));
    s.du.assign(dim, std::vector<MatrixXd>(dim, MatrixXd::Zero(dim, dim)));
    s.dframe.assign(dim, MatrixXd::Zero(dim, dim));
    m.samples_.push_back(std::move(s));
  });
  for (const auto& s : m.samples_) m.volume_ += s.weight;
  return m;
}

GeometryModel GeometryModel::twisted_flat(
    const std::vector<unrep::UnAlgebraElement>& u_values,
    const std::vector<double>& periods, int resolution) {
  validate_periods(periods);
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  const int dim = static_cast<int>(periods.size());
  if (static_cast<int>(u_values.size()) != dim)
    throw std::invalid_argument(
        "twisted_flat: need one connection value per chart axis");
  for (const auto& uv : u_values)
    if (2 * uv.n() != dim)
      throw std::invalid_argument(
          "twisted_flat: connection value dimension does not match periods");

  GeometryModel m = flat_torus(periods, resolution);
  m.kind_ = ModelKind::twisted_flat;
  m.description_ = "flat background with constant connection";
  for (auto& s : m.samples_)
    for (int mu = 0; mu < dim; ++mu) s.u[mu] = u_values[mu].matrix();
  return m;
}

GeometryModel GeometryModel::build_sphere(double radius, int n_theta,
                                          int n_phi, bool sampled) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("sphere grid needs at least 2x2 nodes");
  // The finite-difference variant keeps a fixed polar margin: the widest
  // stencil reaches 2h in θ, and within ~h of a pole the 1/sinθ factors vary
  // too fast for any fixed-order stencil. On the fixed band the differences
  // are uniformly second order.
  const double theta_lo = sampled ? kPi / 8.0 : 0.0;
  const double theta_hi = sampled ? 7.0 * kPi / 8.0 : kPi;
  if (sampled && n_theta < 12)
    throw std::invalid_argument(
        "sampled sphere needs n_theta >= 12 to keep stencils off the poles");

  GeometryModel m;
  m.kind_ = sampled ? ModelKind::sampled_grid : ModelKind::round_sphere;
  m.n_ = 1;
  m.description_ = sampled ? "spherical band (central differences)"
                           : "round sphere";

  const SphereFields fields{radius};
  const MatrixField metric_fn = [&fields](const VectorXd& x) {
    return fields.metric(x);
  };
  const double dtheta = (theta_hi - theta_lo) / n_theta;
  const double dphi = 2.0 * kPi / n_phi;
  VectorXd h(2);
  h << dtheta, dphi;
  const MatrixXd K = complex_structure_2d();

  for (int i = 0; i < n_theta; ++i) {
    const double theta = theta_lo + (i + 0.5) * dtheta;
    // Exact band area: the φ-slice of a latitude band integrates to
    // r²Δφ(cos θ⁻ - cos θ⁺), so the weights sum to the model area exactly.
    const double band = radius * radius * dphi *
                        (std::cos(theta_lo + i * dtheta) -
                         std::cos(theta_lo + (i + 1) * dtheta));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (j + 0.5) * dphi;
      PointSample s;
      s.coords = VectorXd(2);
      s.coords << theta, phi;
      s.weight = band;
      s.frame = fields.frame(s.coords);
      s.metric = fields.metric(s.coords);
      s.u = {fields.u(s.coords, 0), fields.u(s.coords, 1)};
      s.du.assign(2, std::vector<MatrixXd>(2, MatrixXd::Zero(2, 2)));
      s.dframe.assign(2, MatrixXd::Zero(2, 2));
      if (sampled) {
        const MatrixField frame_fn = [&fields](const VectorXd& x) {
          return fields.frame(x);
        };
        for (int mu = 0; mu < 2; ++mu) {
          s.dframe[mu] = central_diff(frame_fn, s.coords, mu, h[mu]);
          for (int nu = 0; nu < 2; ++nu) {
            const MatrixField u_fn = [&fields, nu](const VectorXd& x) {
              return fields.u(x, nu);
            };
            s.du[mu][nu] = central_diff(u_fn, s.coords, mu, h[mu]);
          }
        }
        lc_scalars(metric_fn, s.coords, h, s.rho, s.ric2, s.riem2);
      } else {
        s.du[0][1] = -std::sin(theta) * K;
        s.dframe[0](1, 1) =
            -std::cos(theta) / (radius * std::sin(theta) * std::sin(theta));
        s.rho = 2.0 / (radius * radius);
        s.ric2 = 0.5 * s.rho * s.rho;
        s.riem2 = s.rho * s.rho;
      }
      m.samples_.push_back(std::move(s));
    }
  }
  for (const auto& s : m.samples_) m.volume_ += s.weight;
  return m;
}

GeometryModel GeometryModel::round_sphere(double radius, int n_theta,
                                          int n_phi) {
  return build_sphere(radius, n_theta, n_phi, /*sampled=*/false);
}

GeometryModel GeometryModel::sampled_round_sphere(double radius, int n_theta,
                                                  int n_phi) {
  return build_sphere(radius, n_theta, n_phi, /*sampled=*/true);
}

GeometryModel GeometryModel::sampled_flat_torus(
    const std::vector<double>& periods, int resolution) {
  // All fields are constant, so their central differences vanish identically
  // and the sampled model coincides with the analytic one.
  GeometryModel m = flat_torus(periods, resolution);
  m.kind_ = ModelKind::sampled_grid;
  m.description_ = "flat torus (central differences)";
  return m;
}

// ---------------------------------------------------------------------------
// Pointwise operations

Eigen::VectorXd bracket_frame(const PointSample& s, int a, int b) {
  const int dim = static_cast<int>(s.frame.rows());
  if (a < 0 || b < 0 || a >= dim || b >= dim)
    throw std::out_of_range("frame index out of range");
  // Chart components of [e_a, e_b] from the frame derivatives, then back to
  // frame components.
  VectorXd br = VectorXd::Zero(dim);
  for (int nu = 0; nu < dim; ++nu)
    br += s.frame(nu, a) * s.dframe[nu].col(b) -
          s.frame(nu, b) * s.dframe[nu].col(a);
  return s.frame.fullPivLu().solve(br);
}

Eigen::VectorXd torsion(const PointSample& s, int a, int b) {
  const int dim = static_cast<int>(s.frame.rows());
  if (a < 0 || b < 0 || a >= dim || b >= dim)
    throw std::out_of_range("frame index out of range");
  MatrixXd ua = MatrixXd::Zero(dim, dim);
  MatrixXd ub = MatrixXd::Zero(dim, dim);
  for (int mu = 0; mu < dim; ++mu) {
    ua += s.frame(mu, a) * s.u[mu];
    ub += s.frame(mu, b) * s.u[mu];
  }
  return ua.row(b).transpose() - ub.row(a).transpose() - bracket_frame(s, a, b);
}

Eigen::MatrixXd curvature(const PointSample& s, int a, int b) {
  const int dim = static_cast<int>(s.frame.rows());
  if (a < 0 || b < 0 || a >= dim || b >= dim)
    throw std::out_of_range("frame index out of range");
  MatrixXd result = MatrixXd::Zero(dim, dim);
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = 0; nu < dim; ++nu) {
      const double coeff = s.frame(nu, a) * s.frame(mu, b);
      if (coeff == 0.0) continue;
      result += coeff * (-s.du[mu][nu] + s.du[nu][mu] +
                         s.u[mu] * s.u[nu] - s.u[nu] * s.u[mu]);
    }
  return result;
}

Eigen::VectorXd torsion_trace_vector(const PointSample& s) {
  const int dim = static_cast<int>(s.frame.rows());
  const int n = dim / 2;
  VectorXd t = VectorXd::Zero(dim);
  for (int j = 0; j < n; ++j) t += torsion(s, j, j + n);
  return t;
}

Eigen::VectorXd torsion_trace_covector(const PointSample& s) {
  const int dim = static_cast<int>(s.frame.rows());
  VectorXd tau = VectorXd::Zero(dim);
  for (int a = 0; a < dim; ++a) {
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) acc += torsion(s, k, a)[k];
    tau[a] = acc;
  }
  return tau;
}

namespace {

// Per-point scalar invariants, computed from one torsion table per point.
struct PointScalars {
  double S = 0.0;        // Σ_{ij} g(R(ê_i,f_i) ê_j, f_j)
  double TT = 0.0;       // g(𝔗,𝔗)
  double T2 = 0.0;       // Σ g(T(e_i,e_j), T(e_i,e_j))
  double Tquad = 0.0;    // Σ g(T(T(e_i,e_j),e_i), e_j)
  double tau2 = 0.0;     // Σ τ(e_j)²
  double curv_sum = 0.0; // Σ_{jk} g(R(e_j,e_k)e_j, e_k)
  double quad_rev = 0.0; // Σ g(T(T(e_j,e_l),e_l), e_j)
};

PointScalars point_scalars(const PointSample& s) {
  const int dim = static_cast<int>(s.frame.rows());
  const int n = dim / 2;
  PointScalars out;

  std::vector<std::vector<VectorXd>> t(dim, std::vector<VectorXd>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      t[a][b] = b > a ? torsion(s, a, b) : (b == a ? VectorXd::Zero(dim).eval()
                                                   : (-t[b][a]).eval());

  VectorXd tfrak = VectorXd::Zero(dim);
  for (int j = 0; j < n; ++j) tfrak += t[j][j + n];
  out.TT = tfrak.squaredNorm();

  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      out.T2 += t[a][b].squaredNorm();
      for (int c = 0; c < dim; ++c) {
        out.Tquad += t[a][b][c] * t[c][a][b];
        out.quad_rev += t[a][b][c] * t[c][b][a];
      }
    }

  for (int a = 0; a < dim; ++a) {
    double tau = 0.0;
    for (int k = 0; k < dim; ++k) tau += t[k][a][k];
    out.tau2 += tau * tau;
  }

  for (int i = 0; i < n; ++i) {
    const MatrixXd r = curvature(s, i, i + n);
    for (int j = 0; j < n; ++j) out.S += r(j, j + n);
  }
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) out.curv_sum += curvature(s, j, k)(j, k);

  return out;
}

}  // namespace

InvariantIntegrals torsion_invariants(const GeometryModel& model) {
  InvariantIntegrals out;
  for (const auto& s : model.samples()) {
    const PointScalars p = point_scalars(s);
    out.vol += s.weight;
    out.int_TT += s.weight * p.TT;
    out.int_T2 += s.weight * p.T2;
    out.int_Tquad += s.weight * p.Tquad;
    out.int_tau2 += s.weight * p.tau2;
  }
  return out;
}

InvariantIntegrals invariant_integrals(const GeometryModel& model) {
  InvariantIntegrals out;
  for (const auto& s : model.samples()) {
    const PointScalars p = point_scalars(s);
    out.vol += s.weight;
    out.int_rho += s.weight * s.rho;
    out.int_rho2 += s.weight * s.rho * s.rho;
    out.int_S += s.weight * p.S;
    out.int_TT += s.weight * p.TT;
    out.int_T2 += s.weight * p.T2;
    out.int_Tquad += s.weight * p.Tquad;
    out.int_tau2 += s.weight * p.tau2;
  }
  return out;
}

double curvature_identity_residual(const GeometryModel& model) {
  double worst = 0.0;
  for (const auto& s : model.samples()) {
    const PointScalars p = point_scalars(s);
    const double rhs = -s.rho + 2.0 * s.div_tau + p.tau2 -
                       0.25 * (2.0 * p.quad_rev + p.T2);
    worst = std::max(worst, std::abs(p.curv_sum - rhs));
  }
  return worst;
}

}  // namespace symspec::geometry
