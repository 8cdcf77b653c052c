#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sl3lab/action.hpp"
#include "sl3lab/blocks.hpp"

namespace sl3lab {

/// sum_i xi_i (x) eta_i in l2(P) (x) l2(P); columns of xi and eta are the
/// factor vectors.
struct AttemptCandidate {
  Matrix xi;
  Matrix eta;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(xi.cols()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(xi.rows()); }
  Matrix matrix() const { return xi * eta.transpose(); }

  /// r = n candidate with xi = eta = identity.
  static AttemptCandidate identity(std::size_t n);
  /// Rank-1 candidate xi (x) eta.
  static AttemptCandidate rank_one(const Vector& xi, const Vector& eta);
};

struct AttemptResidual {
  double value = 0.0;                       // max_j ratio
  std::vector<double> per_generator;        // ||M - u_j M u_j^T||_1 / ||M||_1
  std::vector<std::size_t> argmax;          // all j within 1e-12 of the max
  double norm = 0.0;                        // ||M||_1
};

/// max_j ||M - u_j M u_j^T||_1 / ||M||_1. Throws DegenerateCandidate for M = 0.
AttemptResidual attempt_residual(const Matrix& m, std::span<const SignedPermutation> family);
AttemptResidual attempt_residual(const AttemptCandidate& c,
                                 std::span<const SignedPermutation> family);

struct MinimizeOptions {
  std::size_t rank = 1;
  std::size_t budget = 100;  // outer alternating sweeps per start
  std::uint64_t seed = 0;
  std::size_t starts = 16;
  double smoothing = 1e-3;     // pseudo-Huber parameter on singular values
  double softmax_temperature = 10.0;  // log-sum-exp sharpness of the max over generators
  std::size_t polish_iterations = 20;
  std::optional<AttemptCandidate> warm_start;
};

struct MinimizeResult {
  AttemptCandidate candidate;
  double eps_hat = 0.0;             // exact residual of candidate
  std::size_t best_start = 0;
  std::vector<double> start_eps;    // best exact residual per start
};

/// Multi-start alternating minimization of the Attempt residual over rank-r
/// candidates. Returns the best candidate found; eps_hat is an upper bound on
/// the true minimum. Deterministic for fixed options.
MinimizeResult minimize_attempt(std::span<const SignedPermutation> family,
                                const MinimizeOptions& options);

/// Standard family of P^2(F_p).
MinimizeResult minimize_attempt(int p, const MinimizeOptions& options);

/// Pads a candidate with zero columns up to the requested rank.
AttemptCandidate pad_candidate(const AttemptCandidate& c, std::size_t rank);

}  // namespace sl3lab
