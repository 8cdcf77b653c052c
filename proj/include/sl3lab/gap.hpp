#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sl3lab/action.hpp"
#include "sl3lab/blocks.hpp"

namespace sl3lab {

/// M -> u M u^T, by index and sign bookkeeping.
Matrix tensor_action(const SignedPermutation& u, const Matrix& m);

/// Exact invariant subspace of {M : u M u^T = M for all u in the family}.
/// The defining equations M[sigma x, sigma y] = s(x) s(y) M[x, y] only couple
/// pairs of entries, so the solution space has a basis of signed indicator
/// vectors, one per orbit of index pairs that carries no sign conflict.
struct InvariantBasis {
  std::size_t n = 0;  // matrices are n x n
  // support[c] lists (x * n + y, sign) for the c-th basis vector
  std::vector<std::vector<std::pair<std::size_t, std::int8_t>>> support;

  std::size_t dimension() const noexcept { return support.size(); }
  /// Basis vector c as an n x n matrix with unit Hilbert-Schmidt norm.
  Matrix element(std::size_t c) const;
  /// v <- v - sum_c <v, b_c> b_c for the orthonormal basis b_c.
  void project_out(std::span<double> v) const;
};

InvariantBasis invariant_basis(std::span<const SignedPermutation> family);

enum class InvariantMethod {
  Spectral,  // multiplicity of eigenvalue 1 of the dense averaged superoperator
  Exact,     // nullity of the stacked system via the signed orbit basis
};

/// Largest n for which the Spectral method builds a dense n^2 x n^2 matrix.
inline constexpr std::size_t kDenseSpectralLimit = 40;

/// Dimension of the commutant-style invariant space of the family. The
/// Spectral method counts eigenvalues within 1e-10 of 1 and throws
/// AmbiguousRounding if any eigenvalue falls in [1 - 1e-6, 1 - 1e-10).
std::size_t invariant_dimension(std::span<const SignedPermutation> family,
                                InvariantMethod method = InvariantMethod::Spectral);

/// Drops the trailing sign unitary when include_sign is false.
std::vector<SignedPermutation> select_family(std::span<const SignedPermutation> family,
                                             bool include_sign);

struct GapOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 2'000'000;
  std::uint64_t start_seed = 0x5eed;
};

struct GapReport {
  int p = 0;
  std::size_t dimension = 0;  // n^2
  bool includes_sign = true;
  std::size_t invariant_dim_permutations = 0;
  std::size_t invariant_dim_full = 0;
  std::size_t invariant_dim = 0;  // of the analysed family
  double lambda2 = 1.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  // ||C_j v - v||_2 for the unit top eigenvector v on the complement
  std::vector<double> generator_residuals;
  std::vector<std::size_t> worst_generators;
};

/// lambda_2 and 1 - lambda_2 of the symmetrized averaged superoperator,
/// by deflated power iteration on (A + I) / 2 from a fixed-seed start.
GapReport spectral_gap(std::span<const SignedPermutation> family, const GapOptions& options = {});

/// Convenience for the standard family of P^2(F_p).
GapReport gap_report(int p, bool include_sign = true, SignStrategy strategy = SignStrategy::First,
                     std::uint64_t seed = 0, const GapOptions& options = {});

}  // namespace sl3lab
