#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sl3lab/action.hpp"

namespace sl3lab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// The first K primes, 2, 3, 5, ...
std::vector<int> first_primes(std::size_t count);

/// Position of a global basis vector: block k, offset within the block, and
/// whether it lies in the plane part l2(P_k) or the padding l2(N_{m_k}).
struct BasisIndex {
  std::size_t block = 0;
  std::size_t position = 0;
  bool in_plane = false;
};

/// Direct-sum structure H = l2-sum_k (l2(P_k) + l2(N_{m_k})) truncated to K
/// blocks. Block k uses the k-th prime; its first |P_k| coordinates are the
/// plane part, the remaining m_k are padding.
class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(std::vector<std::size_t> dims);

  std::size_t block_count() const noexcept { return dims_.size(); }
  std::size_t total_dim() const noexcept { return total_; }
  int prime(std::size_t k) const { return primes_.at(k); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t plane_dim(std::size_t k) const { return plane_dims_.at(k); }
  std::size_t padding(std::size_t k) const { return dims_.at(k) - plane_dims_.at(k); }
  std::size_t offset(std::size_t k) const { return offsets_.at(k); }

  const std::vector<int>& primes() const noexcept { return primes_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

  BasisIndex locate(std::size_t global) const;
  std::size_t global_index(const BasisIndex& idx) const;

  bool operator==(const BlockLayout& other) const noexcept { return dims_ == other.dims_; }

 private:
  std::vector<int> primes_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> plane_dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

enum class LayoutPreset {
  Tight,   // n_k = |P_k|
  Remark,  // subsequence of l-infinity(M_n) picked as the smallest admissible n_k
};

LayoutPreset parse_layout_preset(const std::string& name);

/// Explicit block dimensions; K = dims.size(). Throws Layout on violation of
/// n_k >= |P_k| or strict increase.
BlockLayout build_layout(std::vector<std::size_t> dims);
BlockLayout build_layout(LayoutPreset preset, std::size_t blocks);

/// Dimensions of l-infinity(M_n) dropped by the Remark preset when passing to
/// the subsequence n_k (the blocks killed by the quotient map).
std::vector<std::size_t> remark_discarded_dims(std::size_t blocks);

/// Block-diagonal operator, one dense real n_k x n_k matrix per block.
class BlockOperator {
 public:
  BlockOperator() = default;
  BlockOperator(BlockLayout layout, std::vector<Matrix> blocks);

  static BlockOperator zero(const BlockLayout& layout);
  static BlockOperator identity(const BlockLayout& layout);
  static BlockOperator scalar(const BlockLayout& layout, double value);
  /// i.i.d. standard normal entries.
  static BlockOperator random(const BlockLayout& layout, std::mt19937_64& rng);
  /// Embeds a signed permutation of the global basis; it must preserve blocks.
  static BlockOperator from_signed(const BlockLayout& layout, const SignedPermutation& u);
  /// Matrix unit e_x e_y^T in global coordinates; x and y must share a block.
  static BlockOperator matrix_unit(const BlockLayout& layout, std::size_t x, std::size_t y);

  const BlockLayout& layout() const noexcept { return layout_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const Matrix& block(std::size_t k) const { return blocks_.at(k); }
  Matrix& block(std::size_t k) { return blocks_.at(k); }

  /// Entry in global coordinates (zero off the block diagonal).
  double entry(std::size_t row, std::size_t col) const;

  Vector apply(const Vector& v) const;
  /// The image a(e) of the global basis vector e.
  Vector column(std::size_t e) const;
  /// a^T e, i.e. a*(e) for real scalars.
  Vector adjoint_column(std::size_t e) const;

  double trace() const;
  Matrix to_dense() const;

  BlockOperator& operator+=(const BlockOperator& other);
  BlockOperator& operator-=(const BlockOperator& other);
  BlockOperator& operator*=(double s);

 private:
  BlockLayout layout_;
  std::vector<Matrix> blocks_;
};

BlockOperator multiply(const BlockOperator& a, const BlockOperator& b);
BlockOperator adjoint(const BlockOperator& a);
BlockOperator operator+(BlockOperator a, const BlockOperator& b);
BlockOperator operator-(BlockOperator a, const BlockOperator& b);
BlockOperator operator*(double s, BlockOperator a);

Vector apply(const BlockOperator& op, const Vector& v);
double trace(const BlockOperator& a);
Vector column(const BlockOperator& a, std::size_t e);

/// Per-block representations: families[k][j] = pi_k(x_j) on l2(P_k).
using BlockFamilies = std::vector<std::vector<SignedPermutation>>;

/// Standard families for every block: default generators and sign pattern.
BlockFamilies standard_block_families(const BlockLayout& layout,
                                      SignStrategy strategy = SignStrategy::First,
                                      std::uint64_t seed = 0);

/// omega_k(x_j) = pi_k(x_j) + id on the padding, assembled over all blocks,
/// as signed permutations of the global basis.
std::vector<SignedPermutation> build_omega_maps(const BlockLayout& layout,
                                                const BlockFamilies& families);

/// Omega(x_j) as dense block operators, j = 0..m.
std::vector<BlockOperator> build_omega(const BlockLayout& layout, const BlockFamilies& families);

}  // namespace sl3lab
