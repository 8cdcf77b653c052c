#include "sl3lab/slicing.hpp"

#include <algorithm>

#include "sl3lab/error.hpp"
#include "sl3lab/kernels.hpp"

namespace sl3lab {

BasisSubset::BasisSubset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

BasisSubset BasisSubset::plane_part(const BlockLayout& layout, std::size_t k) {
  if (k >= layout.block_count())
    throw Error(ErrorKind::OutOfRange, "block " + std::to_string(k) + " not in layout");
  std::vector<std::size_t> idx(layout.plane_dim(k));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = layout.offset(k) + i;
  return BasisSubset(std::move(idx));
}

bool BasisSubset::contains(std::size_t e) const {
  return std::binary_search(indices_.begin(), indices_.end(), e);
}

SliceFactors slice_factors(const TensorDecomposition& t, const BasisSubset& f, std::size_t e) {
  const auto& layout = t.layout();
  if (!f.empty() && f.indices().back() >= layout.total_dim())
    throw Error(ErrorKind::OutOfRange, "subset F leaves the layout");
  const BasisIndex at = layout.locate(e);
  const auto r = static_cast<Eigen::Index>(t.rank());
  SliceFactors out{Matrix::Zero(f.size(), r), Matrix::Zero(f.size(), r)};
  // Factors are block diagonal, so a_i(e) and b_i*(e) live in e's block.
  const std::size_t lo = layout.offset(at.block);
  const std::size_t hi = lo + layout.dim(at.block);
  const auto& idx = f.indices();
  auto first = std::lower_bound(idx.begin(), idx.end(), lo);
  for (auto it = first; it != idx.end() && *it < hi; ++it) {
    const auto row = static_cast<Eigen::Index>(it - idx.begin());
    const auto pos = static_cast<Eigen::Index>(*it - lo);
    for (Eigen::Index i = 0; i < r; ++i) {
      out.xi(row, i) = t.left(i).block(at.block)(pos, at.position);
      out.eta(row, i) = t.right(i).block(at.block)(at.position, pos);
    }
  }
  return out;
}

Matrix slice(const TensorDecomposition& t, const BasisSubset& f, std::size_t e) {
  return slice_factors(t, f, e).matrix();
}

PairingResult pairing_check(const TensorDecomposition& t, const BasisSubset& f) {
  const std::size_t n = t.layout().total_dim();
  std::vector<double> per_e(n, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    const auto sf = slice_factors(t, f, e);
    // sum_i <xi_i, eta_i> = trace of the slice
    per_e[e] = sf.xi.cwiseProduct(sf.eta).sum();
  }
  PairingResult out;
  out.pairing_total = kernels::compensated_sum(per_e);
  const BlockOperator prod = t.product();
  std::vector<double> diag;
  diag.reserve(f.size());
  for (std::size_t x : f.indices()) diag.push_back(prod.entry(x, x));
  out.trace_target = kernels::compensated_sum(diag);
  return out;
}

SliceReport slice_mass(const TensorDecomposition& t, const BasisSubset& f) {
  SliceReport rep;
  rep.subset = f.indices();
  rep.slice_norms = kernels::slice_norms(t, f);
  rep.mass = kernels::compensated_sum(rep.slice_norms);
  rep.gamma_bound = gamma_upper_bound(t);
  rep.bound = static_cast<double>(f.size()) * rep.gamma_bound;
  const auto pairing = pairing_check(t, f);
  rep.pairing_total = pairing.pairing_total;
  rep.trace_target = pairing.trace_target;
  // relative slack for rounding in the SVD-based mass
  rep.mass_within_bound = rep.mass <= rep.bound * (1.0 + 1e-12) + 1e-12;
  rep.lower_bound_holds = rep.mass >= rep.pairing_total - 1e-10;
  return rep;
}

bool lower_bound_check(const TensorDecomposition& t, const BasisSubset& f) {
  const double mass = kernels::compensated_sum(kernels::slice_norms(t, f));
  return mass >= pairing_check(t, f).pairing_total - 1e-10;
}

}  // namespace sl3lab
