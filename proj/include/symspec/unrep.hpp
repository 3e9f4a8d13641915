#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "symspec/fock.hpp"
#include "symspec/rational.hpp"

namespace symspec::unrep {

using fock::Complex;
using fock::FiberOperator;
using fock::FockBasis;

// Element of u(n) in the 2n-dimensional real defining representation: a real
// antisymmetric 2n x 2n matrix A with A_{jk} = A_{j+n,k+n} and
// A_{j,k+n} = -A_{j+n,k} for j,k < n (block form [[a, b], [-b, a]] with a
// skew, b symmetric).  Constructor validates; project() builds the nearest
// element from an arbitrary square matrix.
class UnAlgebraElement {
public:
  explicit UnAlgebraElement(Eigen::MatrixXd matrix);

  static UnAlgebraElement zero(int n);
  static UnAlgebraElement project(const Eigen::MatrixXd& raw);

  int n() const { return static_cast<int>(matrix_.rows()) / 2; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  // Component along the central direction: sum_j A_{j,j+n}.
  double central_component() const;

private:
  Eigen::MatrixXd matrix_;
};

UnAlgebraElement operator+(const UnAlgebraElement& a, const UnAlgebraElement& b);
UnAlgebraElement operator-(const UnAlgebraElement& a, const UnAlgebraElement& b);
UnAlgebraElement operator*(double c, const UnAlgebraElement& a);
UnAlgebraElement commutator(const UnAlgebraElement& a, const UnAlgebraElement& b);

// Cartan generator K_j: unit entries (K_j)_{j,j+n} = -(K_j)_{j+n,j} = 1
// (0-based j < n).
UnAlgebraElement defining_cartan(int n, int j);

// Random element: entries uniform in [-1,1] projected onto the constraint
// space.  Deterministic given the generator state.
UnAlgebraElement random_element(int n, std::mt19937& rng);

// Representation on the truncated fiber:
//   r_Q(A) = (i/2) sum_{j,k} A_{jk} (e_k.)(J e_j.)
// Preserves level blocks on guarded levels; r_Q(K_j) h_alpha =
// -i(alpha_j + 1/2) h_alpha.
FiberOperator r_Q(const UnAlgebraElement& A, const FockBasis& basis);

// Level eigenvalue of the oscillator hamiltonian: q_l = -(l + n/2).
Rational q_level(int n, int l);

// Quadratic Casimir eigenvalue of the level-l representation,
// C2(n,l) = l(n+l)(n-1)/n.  Rejects n < 2 (the n = 1 case has no traceless
// part).
Rational casimir_value(int n, int l);

// Proportionality constant c(n,l) between the level-l trace form and the
// defining-representation trace form, for elements with no central component:
//   tr_l(r_Q(A) r_Q(B)) = c(n,l) tr(AB).
// Equals (l+n)!/(2 (l-1)! (n+1)!); zero for l = 0 by the empty-product rule.
Rational proportionality_c(int n, int l);

// Closed-form level trace of r_Q(A): (i q_l rank_l / n) sum_j A_{j,j+n}.
Complex trace_rQ(const UnAlgebraElement& A, int n, int l);

// Which part of the pair trace to evaluate: the central (u(1)) projection,
// its traceless complement, or their sum.
enum class TraceMode { center, traceless, full };

// Closed-form level trace of products of two representation images.
//   center:    -q_l^2 rank_l / n^2 * sA * sB
//   traceless: c(n,l) * [sum_{jk} A_{jk} B_{kj} + (2/n) sA sB]
// with sX the central component of X; full is their sum (cross terms vanish).
Complex trace_pair(const UnAlgebraElement& A, const UnAlgebraElement& B, int n,
                   int l, TraceMode mode);

// Orthonormal basis of the traceless part: n^2 - 1 generators T_a with
// tr(T_a T_b) = -2 delta_ab in the 2n-dimensional real representation.
std::vector<UnAlgebraElement> su_orthobasis(int n);

// Weight-vector diagnostics for the level-l block: the state with all
// oscillator quanta in the first axis must be an eigenvector of the Cartan
// differences K_j - K_{j+1} with eigenvalues (-i l, 0, ..., 0), and the
// block size must match the Weyl dimension formula for that weight.
struct HighestWeightReport {
  std::vector<Complex> weights;     // eigenvalues on the extreme state
  double max_residual = 0.0;        // worst eigen-equation residual
  std::int64_t rank = 0;            // level block size
  std::int64_t weyl_dimension = 0;  // dimension from the weight (l,0,...,0)
  bool ok = false;
};

HighestWeightReport highest_weight_check(int n, int l, const FockBasis& basis);

}  // namespace symspec::unrep
