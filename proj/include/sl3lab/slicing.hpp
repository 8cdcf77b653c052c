#pragma once

#include <cstddef>
#include <vector>

#include "sl3lab/norms.hpp"

namespace sl3lab {

/// A finite set F of global basis indices, kept sorted and unique.
class BasisSubset {
 public:
  BasisSubset() = default;
  explicit BasisSubset(std::vector<std::size_t> indices);

  /// Plane part l2(P_k) of block k.
  static BasisSubset plane_part(const BlockLayout& layout, std::size_t k);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  bool contains(std::size_t e) const;

 private:
  std::vector<std::size_t> indices_;
};

/// Factor form of T_F(e): column i of xi is P_F a_i(e), column i of eta is
/// P_F b_i*(e), both in F-coordinates.
struct SliceFactors {
  Matrix xi;
  Matrix eta;

  Matrix matrix() const { return xi * eta.transpose(); }
};

SliceFactors slice_factors(const TensorDecomposition& t, const BasisSubset& f, std::size_t e);

/// T_F(e) as an |F| x |F| matrix.
Matrix slice(const TensorDecomposition& t, const BasisSubset& f, std::size_t e);

struct SliceReport {
  std::vector<std::size_t> subset;
  std::vector<double> slice_norms;  // ||T_F(e)||_1 for every global e
  double mass = 0.0;                // compensated sum of slice_norms
  double gamma_bound = 0.0;         // sum_i ||a_i||_op ||b_i||_op
  double bound = 0.0;               // |F| * gamma_bound
  double pairing_total = 0.0;
  double trace_target = 0.0;
  bool mass_within_bound = false;
  bool lower_bound_holds = false;
};

/// Sum over e of ||T_F(e)||_1 together with the |F| ||T|| bound and the
/// trace-pairing totals.
SliceReport slice_mass(const TensorDecomposition& t, const BasisSubset& f);

struct PairingResult {
  double pairing_total = 0.0;  // sum_e sum_i <P_F a_i(e), P_F b_i*(e)>
  double trace_target = 0.0;   // tr((sum_i a_i b_i) P_F)
};

PairingResult pairing_check(const TensorDecomposition& t, const BasisSubset& f);

/// mass >= pairing total - 1e-10.
bool lower_bound_check(const TensorDecomposition& t, const BasisSubset& f);

}  // namespace sl3lab
