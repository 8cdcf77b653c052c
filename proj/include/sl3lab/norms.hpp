#pragma once

#include <span>
#include <vector>

#include "sl3lab/blocks.hpp"

namespace sl3lab {

/// Relative cutoff below which singular values count as zero for rank decisions.
inline constexpr double kRankTolerance = 1e-12;

/// Singular values in decreasing order. Throws Numerical when the SVD fails.
Vector singular_values(const Matrix& m);
std::size_t numerical_rank(const Matrix& m);

double hs_norm(const Matrix& m);
/// (sum_k ||a_k||_2^2)^(1/2)
double hs_norm(const BlockOperator& a);

/// Sum of singular values.
double trace_norm(const Matrix& m);
/// sum_k ||a_k||_1
double trace_norm(const BlockOperator& a);

double operator_norm(const Matrix& m);
/// sup_k ||a_k||_op
double operator_norm(const BlockOperator& a);

/// Projective norm on l2(F) (x) l2(F). An element sum_i xi_i (x) eta_i is
/// identified with M = sum_i xi_i eta_i^T, and the norm is ||M||_1.
double projective_norm_l2(const Matrix& m);
/// Same, from factor columns: xi.col(i), eta.col(i).
double projective_norm_l2(const Matrix& xi, const Matrix& eta);

/// T = sum_i a_i (x) b_i over a common layout.
class TensorDecomposition {
 public:
  static constexpr double kDiagonalTolerance = 1e-10;

  TensorDecomposition() = default;
  /// Throws DimensionMismatch/Layout on malformed input and Precondition
  /// when candidate_diagonal is requested but ||sum a_i b_i - id||_op > 1e-10.
  TensorDecomposition(std::vector<BlockOperator> a, std::vector<BlockOperator> b,
                      bool candidate_diagonal = false);

  /// id (x) id
  static TensorDecomposition identity(const BlockLayout& layout);
  /// sum_x e_xx (x) e_xx over every basis vector.
  static TensorDecomposition diagonal_units(const BlockLayout& layout);

  std::size_t rank() const noexcept { return a_.size(); }
  const BlockLayout& layout() const { return a_.front().layout(); }
  const std::vector<BlockOperator>& left() const noexcept { return a_; }
  const std::vector<BlockOperator>& right() const noexcept { return b_; }
  const BlockOperator& left(std::size_t i) const { return a_.at(i); }
  const BlockOperator& right(std::size_t i) const { return b_.at(i); }
  bool is_candidate_diagonal() const noexcept { return candidate_diagonal_; }

  /// sum_i a_i b_i
  BlockOperator product() const;
  /// ||sum_i a_i b_i - id||_op
  double diagonal_defect() const;

 private:
  std::vector<BlockOperator> a_;
  std::vector<BlockOperator> b_;
  bool candidate_diagonal_ = false;
};

/// sum_i ||a_i||_op ||b_i||_op, an upper bound for ||T||_gamma on
/// B(H) (x)^gamma B(H); not the infimum.
double gamma_upper_bound(const TensorDecomposition& t);

}  // namespace sl3lab
