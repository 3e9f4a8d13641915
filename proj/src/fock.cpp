#include "symspec/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symspec::fock {

namespace {

constexpr Complex kImag{0.0, 1.0};

void append_indices(int slots_left, int sum_left, MultiIndex& prefix,
                    std::vector<MultiIndex>& out) {
  if (slots_left == 1) {
    prefix.push_back(sum_left);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int a = 0; a <= sum_left; ++a) {
    prefix.push_back(a);
    append_indices(slots_left - 1, sum_left - a, prefix, out);
    prefix.pop_back();
  }
}

void check_axis(const FockBasis& basis, int j) {
  if (j < 0 || j >= basis.n())
    throw std::out_of_range("axis " + std::to_string(j) +
                            " outside [0, " + std::to_string(basis.n()) + ")");
}

void check_same_space(const FiberOperator& a, const FiberOperator& b) {
  if (a.m.rows() != b.m.rows() || a.max_level != b.max_level)
    throw std::invalid_argument("fiber operators live on different bases");
}

}  // namespace

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t level_rank(int n, int level) {
  if (n < 1) throw std::invalid_argument("need at least one axis");
  if (level < 0) return 0;
  return binomial(level + n - 1, n - 1);
}

FockBasis::FockBasis(int n, int max_level) : n_(n), max_level_(max_level) {
  if (n < 1) throw std::invalid_argument("need at least one axis");
  if (max_level < 0) throw std::invalid_argument("negative level cutoff");
  offsets_.reserve(max_level + 2);
  MultiIndex prefix;
  prefix.reserve(n);
  for (int l = 0; l <= max_level; ++l) {
    offsets_.push_back(static_cast<int>(indices_.size()));
    append_indices(n, l, prefix, indices_);
  }
  offsets_.push_back(static_cast<int>(indices_.size()));
}

int FockBasis::rank(int level) const {
  if (level < 0 || level > max_level_)
    throw std::out_of_range("level outside the truncation");
  return offsets_[level + 1] - offsets_[level];
}

int FockBasis::level_offset(int level) const {
  if (level < 0 || level > max_level_)
    throw std::out_of_range("level outside the truncation");
  return offsets_[level];
}

int FockBasis::level_of(int i) const {
  const MultiIndex& alpha = indices_.at(i);
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

int FockBasis::position(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != n_)
    throw std::invalid_argument("multi-index arity mismatch");
  const int level = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (level < 0 || level > max_level_)
    throw std::out_of_range("multi-index level outside the truncation");
  const auto first = indices_.begin() + offsets_[level];
  const auto last = indices_.begin() + offsets_[level + 1];
  const auto it = std::lower_bound(first, last, alpha);
  return static_cast<int>(it - indices_.begin());
}

FiberOperator operator*(const FiberOperator& a, const FiberOperator& b) {
  check_same_space(a, b);
  const int guard =
      std::min({b.guard_level, a.guard_level - b.level_shift, a.max_level});
  return {a.m * b.m, a.max_level, std::max(guard, -1),
          a.level_shift + b.level_shift};
}

FiberOperator operator+(const FiberOperator& a, const FiberOperator& b) {
  check_same_space(a, b);
  return {a.m + b.m, a.max_level, std::min(a.guard_level, b.guard_level),
          std::max(a.level_shift, b.level_shift)};
}

FiberOperator operator-(const FiberOperator& a, const FiberOperator& b) {
  return a + Complex(-1.0) * b;
}

FiberOperator operator*(Complex c, const FiberOperator& a) {
  return {c * a.m, a.max_level, a.guard_level, a.level_shift};
}

FiberOperator commutator(const FiberOperator& a, const FiberOperator& b) {
  return a * b - b * a;
}

FrameVector FrameVector::zero(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

FrameVector FrameVector::unit(int n, int axis) {
  if (axis < 0 || axis >= 2 * n)
    throw std::out_of_range("frame axis outside [0, 2n)");
  FrameVector v = zero(n);
  if (axis < n)
    v.a[axis] = 1.0;
  else
    v.b[axis - n] = 1.0;
  return v;
}

namespace {

// Shared ladder-entry walk: fills the coupling of x_j (or d/dx_j, which only
// flips the sign of the raising entry).
FiberOperator build_tridiagonal(const FockBasis& basis, int j,
                                double raise_sign) {
  check_axis(basis, j);
  const int d = basis.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    MultiIndex alpha = basis.index(col);
    const int level = basis.level_of(col);
    const int aj = alpha[j];
    if (level < basis.max_level()) {
      alpha[j] = aj + 1;
      m(basis.position(alpha), col) = raise_sign * std::sqrt((aj + 1) / 2.0);
      alpha[j] = aj;
    }
    if (aj > 0) {
      alpha[j] = aj - 1;
      m(basis.position(alpha), col) = std::sqrt(aj / 2.0);
      alpha[j] = aj;
    }
  }
  return {std::move(m), basis.max_level(), basis.max_level() - 1, 1};
}

}  // namespace

FiberOperator build_position(const FockBasis& basis, int j) {
  return build_tridiagonal(basis, j, +1.0);
}

FiberOperator build_derivative(const FockBasis& basis, int j) {
  return build_tridiagonal(basis, j, -1.0);
}

FiberOperator clifford_mult(const FockBasis& basis, const FrameVector& v) {
  if (v.a.size() != basis.n() || v.b.size() != basis.n())
    throw std::invalid_argument("frame vector arity mismatch");
  const int d = basis.dim();
  FiberOperator op{Matrix::Zero(d, d), basis.max_level(),
                   basis.max_level() - 1, 1};
  for (int j = 0; j < basis.n(); ++j) {
    if (v.a[j] != 0.0) op.m += (kImag * v.a[j]) * build_position(basis, j).m;
    if (v.b[j] != 0.0) op.m += Complex(v.b[j]) * build_derivative(basis, j).m;
  }
  return op;
}

FiberOperator identity(const FockBasis& basis) {
  return {Matrix::Identity(basis.dim(), basis.dim()), basis.max_level(),
          basis.max_level(), 0};
}

FiberOperator hamiltonian_HJ(const FockBasis& basis) {
  const int d = basis.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    m(i, i) = -(basis.level_of(i) + basis.n() / 2.0);
  return {std::move(m), basis.max_level(), basis.max_level(), 0};
}

FiberOperator ladder(const FockBasis& basis, int j, int sign) {
  check_axis(basis, j);
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("ladder sign must be +1 or -1");
  // d_j + x_j has no raising entries (they cancel exactly), so the lowering
  // variant is exact on the whole truncated space.
  FiberOperator op = build_derivative(basis, j);
  const FiberOperator x = build_position(basis, j);
  if (sign == 1) {
    op.m += x.m;
    op.guard_level = basis.max_level();
    op.level_shift = -1;
  } else {
    op.m -= x.m;
  }
  return op;
}

FiberOperator level_projector(const FockBasis& basis, int level) {
  if (level < 0 || level > basis.max_level())
    throw std::out_of_range("level outside the truncation");
  const int d = basis.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int i = basis.level_offset(level);
       i < basis.level_offset(level) + basis.rank(level); ++i)
    m(i, i) = 1.0;
  return {std::move(m), basis.max_level(), basis.max_level(), 0};
}

Complex level_trace(const FiberOperator& op, const FockBasis& basis,
                    int level) {
  const int off = basis.level_offset(level);
  const int r = basis.rank(level);
  return op.m.block(off, off, r, r).trace();
}

Matrix level_block(const FiberOperator& op, const FockBasis& basis,
                   int level) {
  if (level > op.guard_level)
    throw std::out_of_range("level block not guarded under truncation");
  const int off = basis.level_offset(level);
  const int r = basis.rank(level);
  return op.m.block(off, off, r, r);
}

}  // namespace symspec::fock
