#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference
// (suffix _serial) that the tests compare against and the benchmark times.

#include <cstddef>
#include <span>
#include <vector>

#include "sl3lab/action.hpp"
#include "sl3lab/blocks.hpp"

namespace sl3lab {

class TensorDecomposition;
class BasisSubset;

namespace kernels {

/// Neumaier-compensated sum in index order.
double compensated_sum(std::span<const double> values) noexcept;

/// ||T_F(e)||_1 for every global basis index e.
std::vector<double> slice_norms_serial(const TensorDecomposition& t, const BasisSubset& f);
std::vector<double> slice_norms(const TensorDecomposition& t, const BasisSubset& f);

/// Conjugation M -> u M u^T lifted to a signed permutation of the n^2
/// matrix-unit basis, index x * n + y.
SignedPermutation conjugation_map(const SignedPermutation& u);

/// The symmetrized average A = (1 / 2J) sum_j (C_j + C_j^T) of J conjugation
/// maps, stored as the maps and their inverses (C_j^T = C_j^{-1}).
struct AveragingOperator {
  std::size_t dim = 0;
  std::vector<SignedPermutation> forward;
  std::vector<SignedPermutation> backward;

  static AveragingOperator from_family(std::span<const SignedPermutation> family);
};

/// out = A in. The serial version scatters; the parallel one gathers per
/// output entry, so the two agree up to rounding.
void average_apply_serial(const AveragingOperator& a, std::span<const double> in,
                          std::span<double> out);
void average_apply(const AveragingOperator& a, std::span<const double> in, std::span<double> out);

}  // namespace kernels
}  // namespace sl3lab
