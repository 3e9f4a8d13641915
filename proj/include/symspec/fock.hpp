#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace symspec::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Multi-index alpha in N^n labelling a product of Hermite functions.
using MultiIndex = std::vector<int>;

std::int64_t binomial(int n, int k);

// Number of multi-indices with |alpha| = level: C(level + n - 1, n - 1).
std::int64_t level_rank(int n, int level);

// Enumeration of the truncated oscillator basis {h_alpha : |alpha| <= L} for n
// axes, in graded lexicographic order: blocks of constant |alpha| in ascending
// level order, plain lexicographic comparison inside each block.  Level blocks
// are therefore contiguous.
class FockBasis {
public:
  FockBasis(int n, int max_level);

  int n() const { return n_; }
  int max_level() const { return max_level_; }
  int dim() const { return static_cast<int>(indices_.size()); }

  int rank(int level) const;          // size of the level block
  int level_offset(int level) const;  // first index of the level block
  int level_of(int i) const;
  const MultiIndex& index(int i) const { return indices_[i]; }

  // Position of alpha in the enumeration; throws std::out_of_range when
  // |alpha| exceeds the cutoff.
  int position(const MultiIndex& alpha) const;

private:
  int n_;
  int max_level_;
  std::vector<MultiIndex> indices_;
  std::vector<int> offsets_;  // offsets_[l] = start of level l; sentinel at end
};

// Dense operator on the truncated fiber plus truncation bookkeeping.
//
// guard_level: the largest source level on which the truncated matrix acts
// exactly like the untruncated operator.  level_shift: by how many levels the
// operator can raise.  A product of k level-(+1) factors is exact only on
// levels <= max_level - k; compositions and sums propagate the bookkeeping so
// identity tests can filter to trusted levels.
struct FiberOperator {
  Matrix m;
  int max_level = 0;
  int guard_level = 0;
  int level_shift = 0;
};

FiberOperator operator*(const FiberOperator& a, const FiberOperator& b);
FiberOperator operator+(const FiberOperator& a, const FiberOperator& b);
FiberOperator operator-(const FiberOperator& a, const FiberOperator& b);
FiberOperator operator*(Complex c, const FiberOperator& a);
FiberOperator commutator(const FiberOperator& a, const FiberOperator& b);

// Real components of a tangent vector in a unitary frame (e_1..e_n followed by
// their almost-complex partners f_1..f_n).
struct FrameVector {
  Eigen::VectorXd a;  // components along e_1..e_n
  Eigen::VectorXd b;  // components along f_1..f_n

  static FrameVector zero(int n);
  // Frame vector number axis in [0, 2n): first n are e_j, last n are f_j.
  static FrameVector unit(int n, int axis);
};

// Multiplication by x_j in the unit-normalized Hermite basis.  Nonzero entries
// couple adjacent levels only:
//   <h_{alpha+e_j}, x_j h_alpha> = sqrt((alpha_j + 1)/2)
//   <h_{alpha-e_j}, x_j h_alpha> = sqrt(alpha_j/2)
FiberOperator build_position(const FockBasis& basis, int j);

// d/dx_j in the same basis:
//   <h_{alpha+e_j}, d_j h_alpha> = -sqrt((alpha_j + 1)/2)
//   <h_{alpha-e_j}, d_j h_alpha> = +sqrt(alpha_j/2)
FiberOperator build_derivative(const FockBasis& basis, int j);

// Symplectic Clifford action of a frame vector: e_j acts as i*x_j and f_j acts
// as d/dx_j, so that [V., W.] = -i*omega(V,W) on guarded levels.
FiberOperator clifford_mult(const FockBasis& basis, const FrameVector& v);

FiberOperator identity(const FockBasis& basis);

// (1/2) sum_a e_a.e_a. over the whole frame; diagonal with eigenvalue
// q_l = -(l + n/2) on the level-l block.  Built directly (exact on all levels).
FiberOperator hamiltonian_HJ(const FockBasis& basis);

// Ladder operators L^(sign)_j = (f_j -+ i e_j). :
//   sign = +1: d_j + x_j, lowers the level by one and kills the bottom level;
//   sign = -1: d_j - x_j, raises the level by one.
FiberOperator ladder(const FockBasis& basis, int j, int sign);

// Orthogonal projector onto the level-l block.
FiberOperator level_projector(const FockBasis& basis, int level);

// Trace of op over the level-l block.
Complex level_trace(const FiberOperator& op, const FockBasis& basis, int level);

// Dense restriction of op to the level-l block (rank x rank).  Throws when the
// block is not guarded (level > guard_level).
Matrix level_block(const FiberOperator& op, const FockBasis& basis, int level);

}  // namespace symspec::fock
