#include "sl3lab/norms.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "sl3lab/error.hpp"

namespace sl3lab {

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  if (!m.allFinite()) throw Error(ErrorKind::Numerical, "SVD input contains non-finite entries");
  Eigen::BDCSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "SVD did not converge on a " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()) + " matrix (max |entry| " +
                                          std::to_string(m.cwiseAbs().maxCoeff()) + ")");
  return svd.singularValues();
}

std::size_t numerical_rank(const Matrix& m) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || s[0] == 0.0) return 0;
  const double cut = kRankTolerance * s[0];
  return static_cast<std::size_t>((s.array() > cut).count());
}

double hs_norm(const Matrix& m) { return m.norm(); }

double hs_norm(const BlockOperator& a) {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.block_count(); ++k) sq += a.block(k).squaredNorm();
  return std::sqrt(sq);
}

double trace_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : singular_values(m).sum(); }

double trace_norm(const BlockOperator& a) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.block_count(); ++k) total += trace_norm(a.block(k));
  return total;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)[0];
}

double operator_norm(const BlockOperator& a) {
  double sup = 0.0;
  for (std::size_t k = 0; k < a.block_count(); ++k) sup = std::max(sup, operator_norm(a.block(k)));
  return sup;
}

double projective_norm_l2(const Matrix& m) { return trace_norm(m); }

double projective_norm_l2(const Matrix& xi, const Matrix& eta) {
  if (xi.cols() != eta.cols() || xi.rows() != eta.rows())
    throw Error(ErrorKind::DimensionMismatch, "factor matrices differ in shape");
  return trace_norm(Matrix(xi * eta.transpose()));
}

// ---------------------------------------------------------------------------

TensorDecomposition::TensorDecomposition(std::vector<BlockOperator> a, std::vector<BlockOperator> b,
                                         bool candidate_diagonal)
    : a_(std::move(a)), b_(std::move(b)), candidate_diagonal_(candidate_diagonal) {
  if (a_.size() != b_.size())
    throw Error(ErrorKind::DimensionMismatch, "left and right factor lists differ in length");
  if (a_.empty()) throw Error(ErrorKind::EmptyInput, "decomposition needs at least one term");
  const auto& layout = a_.front().layout();
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i].layout() == layout) || !(b_[i].layout() == layout))
      throw Error(ErrorKind::Layout, "decomposition factors do not share a layout");
  if (candidate_diagonal_) {
    const double defect = diagonal_defect();
    if (!(defect <= kDiagonalTolerance))
      throw Error(ErrorKind::Precondition,
                  "sum a_i b_i differs from id by " + std::to_string(defect) + " in operator norm");
  }
}

TensorDecomposition TensorDecomposition::identity(const BlockLayout& layout) {
  return TensorDecomposition({BlockOperator::identity(layout)}, {BlockOperator::identity(layout)}, true);
}

TensorDecomposition TensorDecomposition::diagonal_units(const BlockLayout& layout) {
  std::vector<BlockOperator> a, b;
  for (std::size_t x = 0; x < layout.total_dim(); ++x) {
    a.push_back(BlockOperator::matrix_unit(layout, x, x));
    b.push_back(a.back());
  }
  return TensorDecomposition(std::move(a), std::move(b), true);
}

BlockOperator TensorDecomposition::product() const {
  auto sum = BlockOperator::zero(layout());
  for (std::size_t i = 0; i < a_.size(); ++i) sum += multiply(a_[i], b_[i]);
  return sum;
}

double TensorDecomposition::diagonal_defect() const {
  return operator_norm(product() - BlockOperator::identity(layout()));
}

double gamma_upper_bound(const TensorDecomposition& t) {
  double total = 0.0;
  for (std::size_t i = 0; i < t.rank(); ++i)
    total += operator_norm(t.left(i)) * operator_norm(t.right(i));
  return total;
}

}  // namespace sl3lab
