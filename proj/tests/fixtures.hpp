#pragma once

#include <random>

#include "sl3lab/norms.hpp"

namespace fixtures {

inline sl3lab::TensorDecomposition random_decomposition(const sl3lab::BlockLayout& layout,
                                                        std::size_t rank, std::mt19937_64& rng) {
  std::vector<sl3lab::BlockOperator> a, b;
  for (std::size_t i = 0; i < rank; ++i) {
    a.push_back(sl3lab::BlockOperator::random(layout, rng));
    b.push_back(sl3lab::BlockOperator::random(layout, rng));
  }
  return {std::move(a), std::move(b)};
}

/// A candidate diagonal that is not a sum of matrix units: terms
/// (g_i, g_i^{-1}) / r for random invertible g_i, so sum a_i b_i = id.
inline sl3lab::TensorDecomposition random_candidate_diagonal(const sl3lab::BlockLayout& layout,
                                                             std::size_t rank, std::mt19937_64& rng) {
  std::vector<sl3lab::BlockOperator> a, b;
  for (std::size_t i = 0; i < rank; ++i) {
    auto g = sl3lab::BlockOperator::random(layout, rng);
    for (std::size_t k = 0; k < layout.block_count(); ++k)
      g.block(k) += 4.0 * sl3lab::Matrix::Identity(layout.dim(k), layout.dim(k));
    std::vector<sl3lab::Matrix> inv;
    for (std::size_t k = 0; k < layout.block_count(); ++k) inv.push_back(g.block(k).inverse());
    a.push_back((1.0 / static_cast<double>(rank)) * g);
    b.emplace_back(layout, std::move(inv));
  }
  return {std::move(a), std::move(b), true};
}

}  // namespace fixtures
