#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sl3lab/attempt.hpp"
#include "sl3lab/blocks.hpp"
#include "sl3lab/norms.hpp"

namespace sl3lab {

struct Classification {
  bool bounded = false;
  std::size_t bound = 0;
  // dimension -> number of blocks of that dimension (bounded case only)
  std::map<std::size_t, std::size_t> multiplicities;
};

/// Bounded(N) with the regrouping multiplicities when every block dimension is
/// at most N (N = max dim, or the explicit bound if given); Unbounded when the
/// caller flags the dimension sequence as unbounded.
Classification classify(std::span<const std::size_t> dims, bool unbounded = false,
                        std::optional<std::size_t> bound = std::nullopt);

/// Decomposition bound for Omega T - T Omega = sum_i (Omega a_i) (x) b_i - a_i (x) (b_i Omega).
double commutator_bound(const TensorDecomposition& t, const BlockOperator& omega);

/// Operator norm of sum_i (Omega a_i) (x) b_i - a_i (x) (b_i Omega) as a
/// Kronecker matrix on H (x) H. This spatial norm is a lower bound for the
/// gamma norm, so commutator_bound must dominate it. Dense: keep dim(H) small.
double commutator_spatial_norm(const TensorDecomposition& t, const BlockOperator& omega);

/// Representation data the falsifier needs: pi_k(x_j) per block and the
/// assembled Omega(x_j).
struct OmegaSystem {
  BlockLayout layout;
  BlockFamilies families;
  std::vector<BlockOperator> omega;

  static OmegaSystem standard(const BlockLayout& layout, SignStrategy strategy = SignStrategy::First,
                              std::uint64_t seed = 0);
  std::size_t generator_count() const noexcept { return omega.size(); }
};

enum class Verdict {
  Witness,        // every commutator bound < eps/(m+1): an Attempt witness at level eps exists
  NotApplicable,  // bounds too large for the chain to conclude anything
};

const char* to_string(Verdict v) noexcept;

struct BlockFalsify {
  std::size_t block = 0;
  int prime = 0;
  std::size_t plane_dim = 0;
  double slice_mass = 0.0;
  double pairing_total = 0.0;
  bool mass_lower_bound_holds = false;      // mass >= |P_k| - 1e-8
  std::vector<double> slice_norms;          // per global e
  std::vector<double> residual_sums;        // per e: sum_j ||[T_k - (pi_j (x) pi_j) T_k](e)||_1
  double residual_total = 0.0;
  double aggregate_bound = 0.0;             // |P_k| * sum_j commutator bound
  bool aggregate_holds = false;
  double effective_ratio = 0.0;             // residual_total / mass over nonzero slices
  std::size_t zero_slices_removed = 0;
  std::optional<std::size_t> selected_e;
  bool selection_holds = false;
  AttemptCandidate candidate;               // T_k(e_k) in factor form, F-coordinates
  double candidate_residual = 0.0;          // attempt_residual (max over j)
  double candidate_residual_sum = 0.0;      // sum_j ratio, matches residual_sums[e_k] / ||T_k(e_k)||
  Verdict verdict = Verdict::NotApplicable;
  bool witness_at_eps = false;              // candidate_residual <= eps
};

struct FalsifyReport {
  double eps = 0.0;
  std::size_t generator_count = 0;
  std::vector<double> commutator_bounds;
  double threshold = 0.0;  // eps / (m+1)
  bool hypothesis_holds = false;
  bool vacuous = false;    // eps >= 2: every nonzero candidate attains the level
  std::vector<BlockFalsify> blocks;
};

/// Runs the slicing chain for every block. Requires a candidate diagonal.
FalsifyReport falsify(const TensorDecomposition& t, const OmegaSystem& system, double eps);

/// T_k(e_k) from a report; throws Precondition when block k has no selection.
AttemptCandidate extract_attempt(const FalsifyReport& report, std::size_t k);

}  // namespace sl3lab
