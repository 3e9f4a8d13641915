#include "symspec/heat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace symspec::heat {
namespace {

constexpr double kPi = std::numbers::pi;

double alpha_coeff(int n, int level) {
  return static_cast<double>(level) * (level + n) /
         (static_cast<double>(n) * (n + 1));
}

double q_squared(int n, int level) {
  const double q = -(level + 0.5 * n);
  return q * q;
}

}  // namespace

Eigen::MatrixXcd level_slice(const fock::FiberOperator& op,
                             const fock::FockBasis& basis, int level) {
  if (level < 0 || level > basis.max_level() - 2) {
    throw std::invalid_argument(
        "level_slice: level must leave two buffer levels below the cutoff");
  }
  const int off = basis.level_offset(level);
  const int r = basis.rank(level);
  return op.m.block(off, off, r, r);
}

CanonicalPointOps canonical_point_ops(const geometry::PointSample& s, int n,
                                      const fock::FockBasis& basis) {
  if (basis.n() != n) {
    throw std::invalid_argument("canonical_point_ops: basis axis count " +
                                std::to_string(basis.n()) +
                                " does not match n = " + std::to_string(n));
  }
  const int dim = 2 * n;
  if (s.frame.rows() != dim || static_cast<int>(s.u.size()) != dim) {
    throw std::invalid_argument(
        "canonical_point_ops: sample dimension mismatch");
  }

  // Clifford multiplication by the frame vectors and their J-images.
  std::vector<fock::FiberOperator> cl;
  cl.reserve(dim);
  for (int a = 0; a < dim; ++a) {
    cl.push_back(fock::clifford_mult(basis, fock::FrameVector::unit(n, a)));
  }
  std::vector<fock::FiberOperator> clj;
  clj.reserve(dim);
  for (int a = 0; a < dim; ++a) {
    clj.push_back(a < n ? cl[a + n] : Complex(-1.0, 0.0) * cl[a - n]);
  }

  // Quadratic factors (J e_j ·)(e_k ·), shared by v and the curvature term.
  std::vector<std::vector<fock::FiberOperator>> qf(dim);
  for (int j = 0; j < dim; ++j) {
    qf[j].reserve(dim);
    for (int k = 0; k < dim; ++k) qf[j].push_back(clj[j] * cl[k]);
  }

  // Hermitian-connection coefficients along the frame.
  std::vector<fock::FiberOperator> sigma;
  sigma.reserve(dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::MatrixXd uc = Eigen::MatrixXd::Zero(dim, dim);
    for (int mu = 0; mu < dim; ++mu) uc += s.frame(mu, c) * s.u[mu];
    sigma.push_back(Complex(-1.0, 0.0) *
                    unrep::r_Q(unrep::UnAlgebraElement(uc), basis));
  }

  // Torsion table and its trace vector.
  std::vector<std::vector<Eigen::VectorXd>> tor(dim);
  for (int a = 0; a < dim; ++a) {
    tor[a].reserve(dim);
    for (int b = 0; b < dim; ++b) tor[a].push_back(geometry::torsion(s, a, b));
  }
  const Eigen::VectorXd tfrak = geometry::torsion_trace_vector(s);

  CanonicalPointOps out;
  const fock::FiberOperator id = fock::identity(basis);

  out.v.reserve(dim);
  for (int c = 0; c < dim; ++c) {
    // (J𝔗)_c: J sends ê_j to f_j and f_j to -ê_j.
    const double jt = (c < n) ? -tfrak(c + n) : tfrak(c - n);
    fock::FiberOperator vc = Complex(0.5 * jt, 0.0) * id;
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        const double t = tor[j][k](c);
        if (t != 0.0) vc = vc + Complex(0.0, 0.5 * t) * qf[j][k];
      }
    }
    out.v.push_back(vc);
  }

  out.gvv = out.v[0] * out.v[0];
  out.div_v = fock::commutator(sigma[0], out.v[0]);
  for (int c = 1; c < dim; ++c) {
    out.gvv = out.gvv + out.v[c] * out.v[c];
    out.div_v = out.div_v + fock::commutator(sigma[c], out.v[c]);
  }

  // Fiber curvature of the hermitian connection and the contracted term W.
  std::vector<std::vector<fock::FiberOperator>> rq(dim);
  for (int a = 0; a < dim; ++a) {
    rq[a].reserve(dim);
    for (int b = 0; b < dim; ++b) {
      rq[a].push_back(
          Complex(-1.0, 0.0) *
          unrep::r_Q(unrep::UnAlgebraElement(geometry::curvature(s, a, b)),
                     basis));
    }
  }
  out.curvature_term = Complex(0.0, -1.0) * (qf[0][0] * rq[0][0]);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      if (j == 0 && k == 0) continue;
      out.curvature_term =
          out.curvature_term + Complex(0.0, -1.0) * (qf[j][k] * rq[j][k]);
    }
  }

  out.endomorphism = out.curvature_term - out.div_v - out.gvv;

  // Fiber curvature of the completed connection; manifestly antisymmetric,
  // so fill the upper triangle and mirror.
  const fock::FiberOperator zero = Complex(0.0, 0.0) * id;
  out.omega.assign(dim, std::vector<fock::FiberOperator>(dim, zero));
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      fock::FiberOperator om = rq[a][b] +
                               fock::commutator(sigma[a], out.v[b]) -
                               fock::commutator(sigma[b], out.v[a]) +
                               fock::commutator(out.v[a], out.v[b]);
      const Eigen::VectorXd br = geometry::bracket_frame(s, a, b);
      for (int c = 0; c < dim; ++c) {
        if (br(c) != 0.0) om = om - Complex(br(c), 0.0) * out.v[c];
      }
      out.omega[a][b] = om;
      out.omega[b][a] = Complex(-1.0, 0.0) * om;
    }
  }

  return out;
}

HeatData assemble_canonical(const geometry::GeometryModel& model, int n,
                            int level) {
  if (n != model.n()) {
    throw std::invalid_argument("assemble_canonical: n = " +
                                std::to_string(n) +
                                " does not match the model dimension");
  }
  if (level < 0) {
    throw std::invalid_argument("assemble_canonical: negative level");
  }
  const fock::FockBasis basis(n, level + 2);
  const int dim = 2 * n;

  HeatData data;
  data.n = n;
  data.level = level;
  data.rank = basis.rank(level);
  data.points.reserve(model.samples().size());

  for (const auto& s : model.samples()) {
    const CanonicalPointOps ops = canonical_point_ops(s, n, basis);
    HeatPoint pt;
    pt.e = level_slice(ops.endomorphism, basis, level);
    pt.omega.assign(dim, std::vector<Eigen::MatrixXcd>(dim));
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        pt.omega[a][b] = level_slice(ops.omega[a][b], basis, level);
      }
    }
    pt.rho = s.rho;
    pt.ric2 = s.ric2;
    pt.riem2 = s.riem2;
    pt.weight = s.weight;
    data.points.push_back(std::move(pt));
  }
  return data;
}

HeatCoefficients gilkey(const HeatData& data, bool want_a4) {
  if (data.n < 1 || data.rank < 1 || data.points.empty()) {
    throw std::invalid_argument("gilkey: empty or malformed heat data");
  }
  const int dim = 2 * data.n;
  const double scale = std::pow(4.0 * kPi, -data.n);

  double s0 = 0.0;
  double s2 = 0.0;
  double s4 = 0.0;
  for (const auto& p : data.points) {
    if (p.e.rows() != data.rank || p.e.cols() != data.rank) {
      throw std::invalid_argument(
          "gilkey: endomorphism block does not match the level rank");
    }
    const double tr_e = p.e.trace().real();
    s0 += p.weight * data.rank;
    s2 += p.weight * (6.0 * tr_e + p.rho * data.rank) / 6.0;
    if (!want_a4) continue;

    if (static_cast<int>(p.omega.size()) != dim) {
      throw std::invalid_argument(
          "gilkey: a4 requested but a sample carries no fiber curvature");
    }
    const double tr_e2 = (p.e * p.e).trace().real();
    double tr_om2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      if (static_cast<int>(p.omega[a].size()) != dim) {
        throw std::invalid_argument(
            "gilkey: a4 requested but a sample carries no fiber curvature");
      }
      for (int b = 0; b < dim; ++b) {
        tr_om2 += (p.omega[a][b] * p.omega[a][b]).trace().real();
      }
    }
    s4 += p.weight *
          (60.0 * p.rho * tr_e + 180.0 * tr_e2 +
           (5.0 * p.rho * p.rho - 2.0 * p.ric2 + 2.0 * p.riem2) * data.rank +
           30.0 * tr_om2) /
          360.0;
  }

  HeatCoefficients out;
  out.a0 = scale * s0;
  out.a2 = scale * s2;
  if (want_a4) out.a4 = scale * s4;
  return out;
}

HeatCoefficients a_generic(int n, int level,
                           const geometry::InvariantIntegrals& ints) {
  if (n < 1 || level < 0) {
    throw std::invalid_argument("a_generic: need n >= 1 and level >= 0");
  }
  const double rank = static_cast<double>(fock::level_rank(n, level));
  const double q2 = q_squared(n, level);
  const double alpha = alpha_coeff(n, level);
  const double nn = static_cast<double>(n) * n;

  // The quartic contraction below pairs the slots as
  // g(T(T(e_i,e_j),e_j), e_i) = -int_Tquad by antisymmetry of the torsion.
  const double integrand =
      (1.0 / 6.0 + alpha / 2.0) * ints.int_rho +
      (alpha - 2.0 * q2 / nn) * ints.int_S +
      alpha * (0.25 * (-ints.int_Tquad) + 0.375 * ints.int_T2) +
      (-0.25 + q2 / nn - alpha / (2.0 * n)) * ints.int_TT -
      0.5 * alpha * ints.int_tau2;

  const double scale = rank * std::pow(4.0 * kPi, -n);
  HeatCoefficients out;
  out.a0 = scale * ints.vol;
  out.a2 = scale * integrand;
  return out;
}

HeatCoefficients a_kahler2d(int level,
                            const geometry::InvariantIntegrals& ints) {
  if (level < 0) throw std::invalid_argument("a_kahler2d: negative level");
  const double torsion_scale = std::abs(ints.int_TT) + std::abs(ints.int_T2) +
                               std::abs(ints.int_Tquad) +
                               std::abs(ints.int_tau2);
  if (torsion_scale > 1e-10 * (1.0 + std::abs(ints.vol))) {
    throw std::invalid_argument(
        "a_kahler2d: invariants carry torsion, no closed form applies");
  }
  const double q2 = (level + 0.5) * (level + 0.5);
  HeatCoefficients out;
  out.a0 = ints.vol / (4.0 * kPi);
  out.a2 = (1.0 + 6.0 * q2) * ints.int_rho / (24.0 * kPi);
  out.a4 = (2.0 + 15.0 * q2 + 60.0 * q2 * q2) * ints.int_rho2 / (480.0 * kPi);
  return out;
}

ExactKahlerCoefficients a_kahler2d_exact(int level, const Rational& vol_pi,
                                         const Rational& rho_pi,
                                         const Rational& rho2_pi) {
  if (level < 0) {
    throw std::invalid_argument("a_kahler2d_exact: negative level");
  }
  const Rational q2(static_cast<std::int64_t>(2 * level + 1) *
                        (2 * level + 1),
                    4);
  ExactKahlerCoefficients out;
  out.a0 = vol_pi / 4;
  out.a2 = (1 + 6 * q2) * rho_pi / 24;
  out.a4 = (2 + 15 * q2 + 60 * q2 * q2) * rho2_pi / 480;
  return out;
}

double trace_torsion_quadratic(int n, int level, double tt, double t2) {
  if (n < 1 || level < 0) {
    throw std::invalid_argument(
        "trace_torsion_quadratic: need n >= 1 and level >= 0");
  }
  const double rank = static_cast<double>(fock::level_rank(n, level));
  const double q2 = q_squared(n, level);
  const double alpha = alpha_coeff(n, level);
  const double falling = alpha * rank;  // (l+n)! / ((l-1)! (n+1)!)
  return rank * (0.25 - q2 / (static_cast<double>(n) * n) +
                 alpha / (2.0 * n)) *
             tt -
         0.25 * falling * t2;
}

double trace_curvature_term(int n, int level, double s_sum, double curv_sum) {
  if (n < 1 || level < 0) {
    throw std::invalid_argument(
        "trace_curvature_term: need n >= 1 and level >= 0");
  }
  const double rank = static_cast<double>(fock::level_rank(n, level));
  const double q2 = q_squared(n, level);
  const double falling = alpha_coeff(n, level) * rank;
  return (-2.0 * q2 * rank / (static_cast<double>(n) * n) + falling / n) *
             s_sum -
         0.5 * falling * curv_sum;
}

}  // namespace symspec::heat
