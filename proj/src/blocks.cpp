#include "sl3lab/blocks.hpp"

#include <algorithm>

#include "sl3lab/error.hpp"

namespace sl3lab {

std::vector<int> first_primes(std::size_t count) {
  std::vector<int> primes;
  for (int n = 2; primes.size() < count; ++n)
    if (is_prime(n)) primes.push_back(n);
  return primes;
}

BlockLayout::BlockLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorKind::Layout, "layout needs at least one block");
  primes_ = first_primes(dims_.size());
  offsets_.reserve(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const std::size_t pk = plane_size(primes_[k]);
    if (dims_[k] < pk)
      throw Error(ErrorKind::Layout, "block " + std::to_string(k) + " has dimension " +
                                         std::to_string(dims_[k]) + " < |P_k| = " + std::to_string(pk));
    if (k > 0 && dims_[k] <= dims_[k - 1])
      throw Error(ErrorKind::Layout, "block dimensions must be strictly increasing");
    plane_dims_.push_back(pk);
    offsets_.push_back(total_);
    total_ += dims_[k];
  }
}

BasisIndex BlockLayout::locate(std::size_t global) const {
  if (global >= total_)
    throw Error(ErrorKind::OutOfRange, "basis index " + std::to_string(global) + " >= " +
                                           std::to_string(total_));
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  const std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  const std::size_t pos = global - offsets_[k];
  return {k, pos, pos < plane_dims_[k]};
}

std::size_t BlockLayout::global_index(const BasisIndex& idx) const {
  if (idx.block >= dims_.size() || idx.position >= dims_[idx.block])
    throw Error(ErrorKind::OutOfRange, "basis index outside layout");
  return offsets_[idx.block] + idx.position;
}

LayoutPreset parse_layout_preset(const std::string& name) {
  if (name == "tight") return LayoutPreset::Tight;
  if (name == "remark") return LayoutPreset::Remark;
  throw Error(ErrorKind::Layout, "unknown layout preset '" + name + "'");
}

BlockLayout build_layout(std::vector<std::size_t> dims) { return BlockLayout(std::move(dims)); }

BlockLayout build_layout(LayoutPreset preset, std::size_t blocks) {
  const auto primes = first_primes(blocks);
  std::vector<std::size_t> dims;
  for (int p : primes) {
    const std::size_t pk = plane_size(p);
    if (preset == LayoutPreset::Tight) {
      dims.push_back(pk);
    } else {
      // smallest n in 1, 2, 3, ... beyond the previous pick with n >= |P_k|
      std::size_t n = dims.empty() ? 1 : dims.back() + 1;
      n = std::max(n, pk);
      dims.push_back(n);
    }
  }
  return BlockLayout(std::move(dims));
}

std::vector<std::size_t> remark_discarded_dims(std::size_t blocks) {
  const auto kept = build_layout(LayoutPreset::Remark, blocks).dims();
  std::vector<std::size_t> dropped;
  for (std::size_t n = 1; n <= kept.back(); ++n)
    if (!std::binary_search(kept.begin(), kept.end(), n)) dropped.push_back(n);
  return dropped;
}

// ---------------------------------------------------------------------------

BlockOperator::BlockOperator(BlockLayout layout, std::vector<Matrix> blocks)
    : layout_(std::move(layout)), blocks_(std::move(blocks)) {
  if (blocks_.size() != layout_.block_count())
    throw Error(ErrorKind::DimensionMismatch, "block count does not match layout");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto n = static_cast<Eigen::Index>(layout_.dim(k));
    if (blocks_[k].rows() != n || blocks_[k].cols() != n)
      throw Error(ErrorKind::DimensionMismatch, "block " + std::to_string(k) + " has the wrong shape");
  }
}

BlockOperator BlockOperator::zero(const BlockLayout& layout) { return scalar(layout, 0.0); }

BlockOperator BlockOperator::identity(const BlockLayout& layout) { return scalar(layout, 1.0); }

BlockOperator BlockOperator::scalar(const BlockLayout& layout, double value) {
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < layout.block_count(); ++k)
    blocks.push_back(value * Matrix::Identity(layout.dim(k), layout.dim(k)));
  return BlockOperator(layout, std::move(blocks));
}

BlockOperator BlockOperator::random(const BlockLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < layout.block_count(); ++k) {
    Matrix m(layout.dim(k), layout.dim(k));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = normal(rng);
    blocks.push_back(std::move(m));
  }
  return BlockOperator(layout, std::move(blocks));
}

BlockOperator BlockOperator::from_signed(const BlockLayout& layout, const SignedPermutation& u) {
  if (u.dim() != layout.total_dim())
    throw Error(ErrorKind::DimensionMismatch, "signed permutation does not match layout dimension");
  auto op = zero(layout);
  for (std::size_t x = 0; x < u.dim(); ++x) {
    const auto from = layout.locate(x);
    const auto to = layout.locate(u.target(x));
    if (from.block != to.block)
      throw Error(ErrorKind::Layout, "signed permutation mixes blocks");
    op.blocks_[from.block](to.position, from.position) = u.sign(x);
  }
  return op;
}

BlockOperator BlockOperator::matrix_unit(const BlockLayout& layout, std::size_t x, std::size_t y) {
  const auto bx = layout.locate(x);
  const auto by = layout.locate(y);
  if (bx.block != by.block) throw Error(ErrorKind::Layout, "matrix unit crosses blocks");
  auto op = zero(layout);
  op.blocks_[bx.block](bx.position, by.position) = 1.0;
  return op;
}

double BlockOperator::entry(std::size_t row, std::size_t col) const {
  const auto r = layout_.locate(row);
  const auto c = layout_.locate(col);
  if (r.block != c.block) return 0.0;
  return blocks_[r.block](r.position, c.position);
}

Vector BlockOperator::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != layout_.total_dim())
    throw Error(ErrorKind::DimensionMismatch, "apply: vector length mismatch");
  Vector out(v.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto off = static_cast<Eigen::Index>(layout_.offset(k));
    const auto n = static_cast<Eigen::Index>(layout_.dim(k));
    out.segment(off, n).noalias() = blocks_[k] * v.segment(off, n);
  }
  return out;
}

Vector BlockOperator::column(std::size_t e) const {
  const auto idx = layout_.locate(e);
  Vector out = Vector::Zero(layout_.total_dim());
  out.segment(layout_.offset(idx.block), layout_.dim(idx.block)) =
      blocks_[idx.block].col(idx.position);
  return out;
}

Vector BlockOperator::adjoint_column(std::size_t e) const {
  const auto idx = layout_.locate(e);
  Vector out = Vector::Zero(layout_.total_dim());
  out.segment(layout_.offset(idx.block), layout_.dim(idx.block)) =
      blocks_[idx.block].row(idx.position).transpose();
  return out;
}

double BlockOperator::trace() const {
  double t = 0.0;
  for (const auto& b : blocks_) t += b.trace();
  return t;
}

Matrix BlockOperator::to_dense() const {
  Matrix m = Matrix::Zero(layout_.total_dim(), layout_.total_dim());
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    m.block(layout_.offset(k), layout_.offset(k), layout_.dim(k), layout_.dim(k)) = blocks_[k];
  return m;
}

BlockOperator& BlockOperator::operator+=(const BlockOperator& other) {
  if (!(layout_ == other.layout_)) throw Error(ErrorKind::Layout, "layout mismatch in +");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
  return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& other) {
  if (!(layout_ == other.layout_)) throw Error(ErrorKind::Layout, "layout mismatch in -");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= other.blocks_[k];
  return *this;
}

BlockOperator& BlockOperator::operator*=(double s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

BlockOperator multiply(const BlockOperator& a, const BlockOperator& b) {
  if (!(a.layout() == b.layout())) throw Error(ErrorKind::Layout, "layout mismatch in multiply");
  std::vector<Matrix> blocks(a.block_count());
  const auto K = static_cast<long>(a.block_count());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < K; ++k) blocks[k].noalias() = a.block(k) * b.block(k);
  return BlockOperator(a.layout(), std::move(blocks));
}

BlockOperator adjoint(const BlockOperator& a) {
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < a.block_count(); ++k) blocks.push_back(a.block(k).transpose());
  return BlockOperator(a.layout(), std::move(blocks));
}

BlockOperator operator+(BlockOperator a, const BlockOperator& b) { return a += b; }
BlockOperator operator-(BlockOperator a, const BlockOperator& b) { return a -= b; }
BlockOperator operator*(double s, BlockOperator a) { return a *= s; }

Vector apply(const BlockOperator& op, const Vector& v) { return op.apply(v); }
double trace(const BlockOperator& a) { return a.trace(); }
Vector column(const BlockOperator& a, std::size_t e) { return a.column(e); }

// ---------------------------------------------------------------------------

BlockFamilies standard_block_families(const BlockLayout& layout, SignStrategy strategy,
                                      std::uint64_t seed) {
  BlockFamilies families;
  for (std::size_t k = 0; k < layout.block_count(); ++k)
    families.push_back(standard_family(layout.prime(k), strategy, seed));
  return families;
}

std::vector<SignedPermutation> build_omega_maps(const BlockLayout& layout,
                                                const BlockFamilies& families) {
  if (families.size() != layout.block_count())
    throw Error(ErrorKind::DimensionMismatch, "need one representation family per block");
  const std::size_t count = families.front().size();
  std::vector<SignedPermutation> maps;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<std::size_t> perm(layout.total_dim());
    std::vector<std::int8_t> signs(layout.total_dim(), 1);
    for (std::size_t k = 0; k < layout.block_count(); ++k) {
      if (families[k].size() != count)
        throw Error(ErrorKind::DimensionMismatch, "families have different generator counts");
      const auto& u = families[k][j];
      if (u.dim() != layout.plane_dim(k))
        throw Error(ErrorKind::DimensionMismatch,
                    "family for block " + std::to_string(k) + " has the wrong dimension");
      const std::size_t off = layout.offset(k);
      for (std::size_t x = 0; x < u.dim(); ++x) {
        perm[off + x] = off + u.target(x);
        signs[off + x] = static_cast<std::int8_t>(u.sign(x));
      }
      for (std::size_t x = u.dim(); x < layout.dim(k); ++x) perm[off + x] = off + x;
    }
    maps.emplace_back(std::move(perm), std::move(signs));
  }
  return maps;
}

std::vector<BlockOperator> build_omega(const BlockLayout& layout, const BlockFamilies& families) {
  std::vector<BlockOperator> omega;
  for (const auto& u : build_omega_maps(layout, families))
    omega.push_back(BlockOperator::from_signed(layout, u));
  return omega;
}

}  // namespace sl3lab
