#include "sl3lab/falsifier.hpp"

#include <algorithm>

#include "sl3lab/error.hpp"
#include "sl3lab/gap.hpp"
#include "sl3lab/kernels.hpp"
#include "sl3lab/slicing.hpp"

namespace sl3lab {

Classification classify(std::span<const std::size_t> dims, bool unbounded,
                        std::optional<std::size_t> bound) {
  if (dims.empty()) throw Error(ErrorKind::EmptyInput, "classify needs at least one dimension");
  if (std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end())
    throw Error(ErrorKind::Precondition, "block dimensions must be positive");
  Classification c;
  if (unbounded) return c;
  const std::size_t top = *std::max_element(dims.begin(), dims.end());
  c.bound = bound.value_or(top);
  if (top > c.bound) return Classification{};
  c.bounded = true;
  for (std::size_t d : dims) ++c.multiplicities[d];
  return c;
}

double commutator_bound(const TensorDecomposition& t, const BlockOperator& omega) {
  if (!(omega.layout() == t.layout())) throw Error(ErrorKind::Layout, "omega layout differs from T");
  double total = 0.0;
  for (std::size_t i = 0; i < t.rank(); ++i) {
    total += operator_norm(multiply(omega, t.left(i))) * operator_norm(t.right(i));
    total += operator_norm(t.left(i)) * operator_norm(multiply(t.right(i), omega));
  }
  return total;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

double commutator_spatial_norm(const TensorDecomposition& t, const BlockOperator& omega) {
  if (!(omega.layout() == t.layout())) throw Error(ErrorKind::Layout, "omega layout differs from T");
  const std::size_t n = t.layout().total_dim();
  if (n > 40) throw Error(ErrorKind::Precondition, "dense commutator oracle limited to dim(H) <= 40");
  const Matrix w = omega.to_dense();
  Matrix sum = Matrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < t.rank(); ++i) {
    const Matrix a = t.left(i).to_dense();
    const Matrix b = t.right(i).to_dense();
    sum += kron(w * a, b) - kron(a, b * w);
  }
  return operator_norm(sum);
}

OmegaSystem OmegaSystem::standard(const BlockLayout& layout, SignStrategy strategy,
                                  std::uint64_t seed) {
  OmegaSystem sys;
  sys.layout = layout;
  sys.families = standard_block_families(layout, strategy, seed);
  sys.omega = build_omega(layout, sys.families);
  return sys;
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::Witness ? "WITNESS" : "NOT-APPLICABLE";
}

FalsifyReport falsify(const TensorDecomposition& t, const OmegaSystem& system, double eps) {
  if (!t.is_candidate_diagonal())
    throw Error(ErrorKind::Precondition, "falsify needs a candidate diagonal (sum a_i b_i = id)");
  if (!(t.layout() == system.layout)) throw Error(ErrorKind::Layout, "T and Omega use different layouts");
  if (!(eps > 0.0)) throw Error(ErrorKind::Precondition, "eps must be positive");

  FalsifyReport rep;
  rep.eps = eps;
  rep.generator_count = system.generator_count();
  rep.threshold = eps / static_cast<double>(rep.generator_count);
  rep.vacuous = eps >= 2.0;
  for (const auto& w : system.omega) rep.commutator_bounds.push_back(commutator_bound(t, w));
  rep.hypothesis_holds = std::all_of(rep.commutator_bounds.begin(), rep.commutator_bounds.end(),
                                     [&](double c) { return c < rep.threshold; });
  const double bound_sum = kernels::compensated_sum(rep.commutator_bounds);

  const auto& layout = t.layout();
  const std::size_t total = layout.total_dim();
  for (std::size_t k = 0; k < layout.block_count(); ++k) {
    BlockFalsify bf;
    bf.block = k;
    bf.prime = layout.prime(k);
    bf.plane_dim = layout.plane_dim(k);
    const BasisSubset f = BasisSubset::plane_part(layout, k);
    const auto& family = system.families.at(k);

    bf.slice_norms.assign(total, 0.0);
    bf.residual_sums.assign(total, 0.0);
    const long count = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic, 2)
    for (long e = 0; e < count; ++e) {
      const SliceFactors sf = slice_factors(t, f, static_cast<std::size_t>(e));
      if (sf.xi.isZero(0.0) || sf.eta.isZero(0.0)) continue;
      const Matrix m = sf.matrix();
      bf.slice_norms[e] = trace_norm(m);
      std::vector<double> per_j;
      for (const auto& u : family) per_j.push_back(trace_norm(Matrix(m - tensor_action(u, m))));
      bf.residual_sums[e] = kernels::compensated_sum(per_j);
    }

    bf.slice_mass = kernels::compensated_sum(bf.slice_norms);
    bf.pairing_total = pairing_check(t, f).pairing_total;
    bf.mass_lower_bound_holds = bf.slice_mass >= static_cast<double>(bf.plane_dim) - 1e-8;
    bf.residual_total = kernels::compensated_sum(bf.residual_sums);
    bf.aggregate_bound = static_cast<double>(bf.plane_dim) * bound_sum;
    bf.aggregate_holds = bf.residual_total <= bf.aggregate_bound + 1e-8;

    // Zero slices carry zero residual; drop them before averaging.
    const double top = *std::max_element(bf.slice_norms.begin(), bf.slice_norms.end());
    const double zero_cut = 1e-12 * top;
    std::vector<double> kept_mass, kept_res;
    for (std::size_t e = 0; e < total; ++e) {
      if (bf.slice_norms[e] > zero_cut) {
        kept_mass.push_back(bf.slice_norms[e]);
        kept_res.push_back(bf.residual_sums[e]);
      } else {
        ++bf.zero_slices_removed;
      }
    }
    if (kept_mass.empty())
      throw Error(ErrorKind::InternalConsistency,
                  "every slice of block " + std::to_string(k) + " vanishes despite sum a_i b_i = id");
    bf.effective_ratio = kernels::compensated_sum(kept_res) / kernels::compensated_sum(kept_mass);

    for (std::size_t e = 0; e < total; ++e) {
      if (!(bf.slice_norms[e] > zero_cut)) continue;
      if (bf.residual_sums[e] <= bf.effective_ratio * bf.slice_norms[e] * (1.0 + 1e-12) + 1e-15) {
        bf.selected_e = e;
        break;
      }
    }
    if (!bf.selected_e)
      throw Error(ErrorKind::InternalConsistency,
                  "no basis vector satisfies the averaged inequality in block " + std::to_string(k));
    bf.selection_holds = true;

    const SliceFactors chosen = slice_factors(t, f, *bf.selected_e);
    bf.candidate = {chosen.xi, chosen.eta};
    const auto res = attempt_residual(bf.candidate, family);
    bf.candidate_residual = res.value;
    bf.candidate_residual_sum = kernels::compensated_sum(res.per_generator);
    bf.verdict = rep.hypothesis_holds ? Verdict::Witness : Verdict::NotApplicable;
    bf.witness_at_eps = bf.candidate_residual <= eps;
    rep.blocks.push_back(std::move(bf));
  }
  return rep;
}

AttemptCandidate extract_attempt(const FalsifyReport& report, std::size_t k) {
  if (k >= report.blocks.size())
    throw Error(ErrorKind::Precondition, "block " + std::to_string(k) + " is not in the report");
  const auto& bf = report.blocks[k];
  if (!bf.selected_e) throw Error(ErrorKind::Precondition, "block has no selected basis vector");
  return bf.candidate;
}

}  // namespace sl3lab
