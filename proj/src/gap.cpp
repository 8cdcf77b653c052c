#include "sl3lab/gap.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "sl3lab/error.hpp"
#include "sl3lab/kernels.hpp"

namespace sl3lab {

Matrix tensor_action(const SignedPermutation& u, const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(u.dim());
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "tensor_action: matrix does not match operator");
  Matrix out(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    const auto ty = static_cast<Eigen::Index>(u.target(y));
    const double sy = u.sign(y);
    for (Eigen::Index x = 0; x < n; ++x)
      out(static_cast<Eigen::Index>(u.target(x)), ty) = u.sign(x) * sy * m(x, y);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Union-find over n^2 entries with parity: value[w] = parity[w] * value[root].
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t size) : parent_(size), parity_(size, 1), dead_(size, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t w) {
    int sign = 1;
    std::size_t root = w;
    while (parent_[root] != root) {
      sign *= parity_[root];
      root = parent_[root];
    }
    // path compression, keeping parities relative to the root
    int acc = sign;
    while (parent_[w] != root) {
      const std::size_t next = parent_[w];
      const int here = parity_[w];
      parent_[w] = root;
      parity_[w] = static_cast<std::int8_t>(acc);
      acc *= here;
      w = next;
    }
    return {root, sign};
  }

  /// Imposes value[b] = s * value[a].
  void relate(std::size_t a, std::size_t b, int s) {
    const auto [ra, pa] = find(a);
    const auto [rb, pb] = find(b);
    if (ra == rb) {
      if (pb != s * pa) dead_[ra] = true;
      return;
    }
    // value[rb] = pb * value[b] = pb * s * pa * value[ra]
    parent_[rb] = ra;
    parity_[rb] = static_cast<std::int8_t>(pb * s * pa);
    dead_[ra] = dead_[ra] || dead_[rb];
  }

  bool dead(std::size_t root) const { return dead_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::int8_t> parity_;
  std::vector<bool> dead_;
};

Matrix averaging_matrix_dense(std::span<const SignedPermutation> family) {
  const auto avg = kernels::AveragingOperator::from_family(family);
  const auto N = static_cast<Eigen::Index>(avg.dim);
  Matrix a = Matrix::Zero(N, N);
  const double scale = 1.0 / (2.0 * static_cast<double>(family.size()));
  for (const auto& c : avg.forward)
    for (std::size_t w = 0; w < avg.dim; ++w) {
      a(c.target(w), w) += scale * c.sign(w);
      a(w, c.target(w)) += scale * c.sign(w);
    }
  return a;
}

}  // namespace

Matrix InvariantBasis::element(std::size_t c) const {
  const auto& sup = support.at(c);
  Matrix m = Matrix::Zero(n, n);
  const double w = 1.0 / std::sqrt(static_cast<double>(sup.size()));
  for (const auto& [idx, s] : sup) m(idx / n, idx % n) = s * w;
  return m;
}

void InvariantBasis::project_out(std::span<double> v) const {
  for (const auto& sup : support) {
    double dot = 0.0;
    for (const auto& [idx, s] : sup) dot += s * v[idx];
    dot /= static_cast<double>(sup.size());
    for (const auto& [idx, s] : sup) v[idx] -= s * dot;
  }
}

InvariantBasis invariant_basis(std::span<const SignedPermutation> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "family is empty");
  const std::size_t n = family.front().dim();
  const std::size_t N = n * n;
  SignedUnionFind uf(N);
  for (const auto& u : family) {
    if (u.dim() != n) throw Error(ErrorKind::DimensionMismatch, "family members differ in dimension");
    const auto c = kernels::conjugation_map(u);
    for (std::size_t w = 0; w < N; ++w) uf.relate(w, c.target(w), c.sign(w));
  }
  InvariantBasis basis;
  basis.n = n;
  std::vector<std::int64_t> slot(N, -1);
  for (std::size_t w = 0; w < N; ++w) {
    const auto [root, sign] = uf.find(w);
    if (uf.dead(root)) continue;
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(basis.support.size());
      basis.support.emplace_back();
    }
    basis.support[slot[root]].emplace_back(w, static_cast<std::int8_t>(sign));
  }
  return basis;
}

std::size_t invariant_dimension(std::span<const SignedPermutation> family, InvariantMethod method) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "family is empty");
  if (method == InvariantMethod::Exact) return invariant_basis(family).dimension();

  const std::size_t n = family.front().dim();
  if (n > kDenseSpectralLimit)
    throw Error(ErrorKind::Precondition, "dense spectral count limited to n <= " +
                                             std::to_string(kDenseSpectralLimit));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(averaging_matrix_dense(family), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "dense eigensolver failed");
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()[i];
    if (lambda >= 1.0 - 1e-10) {
      ++count;
    } else if (lambda >= 1.0 - 1e-6) {
      throw Error(ErrorKind::AmbiguousRounding,
                  "eigenvalue " + std::to_string(lambda) + " lies inside the 1e-6 margin below 1");
    }
  }
  return count;
}

std::vector<SignedPermutation> select_family(std::span<const SignedPermutation> family,
                                             bool include_sign) {
  std::vector<SignedPermutation> out(family.begin(), family.end());
  if (!include_sign && !out.empty()) out.pop_back();
  return out;
}

GapReport spectral_gap(std::span<const SignedPermutation> family, const GapOptions& options) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "family is empty");
  GapReport rep;
  const std::size_t n = family.front().dim();
  rep.dimension = n * n;

  std::vector<SignedPermutation> perms;
  for (const auto& u : family)
    if (u.is_pure_permutation()) perms.push_back(u);
  rep.includes_sign = perms.size() != family.size();
  const InvariantBasis basis = invariant_basis(family);
  rep.invariant_dim = rep.invariant_dim_full = basis.dimension();
  rep.invariant_dim_permutations =
      perms.empty() ? rep.dimension : invariant_basis(perms).dimension();

  const auto avg = kernels::AveragingOperator::from_family(family);
  rep.generator_residuals.assign(family.size(), 0.0);
  if (basis.dimension() == rep.dimension) {
    // nothing outside the invariant subspace
    rep.lambda2 = 1.0;
    rep.gap = 0.0;
    return rep;
  }

  std::vector<double> v(rep.dimension), w(rep.dimension);
  std::mt19937_64 rng(options.start_seed);
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  basis.project_out(v);
  auto normalize = [](std::vector<double>& x) {
    const double nrm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (nrm == 0.0) throw Error(ErrorKind::Numerical, "power iteration vector vanished");
    for (auto& xi : x) xi /= nrm;
  };
  normalize(v);

  // Iterate with B = (A + I) / 2, whose spectrum lies in [0, 1], so the
  // dominant eigenvalue on the complement is (lambda_2 + 1) / 2.
  double theta = 0.0;
  bool converged = false;
  std::size_t it = 0;
  while (it < options.max_iterations) {
    ++it;
    kernels::average_apply(avg, v, w);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.5 * (w[i] + v[i]);
    basis.project_out(w);
    theta = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
    double res = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) res += (w[i] - theta * v[i]) * (w[i] - theta * v[i]);
    rep.residual = std::sqrt(res);
    v.swap(w);
    normalize(v);
    if (rep.residual <= options.tolerance) {
      converged = true;
      break;
    }
  }
  rep.iterations = it;
  if (!converged)
    throw Error(ErrorKind::NonConvergence, "power iteration stopped after " + std::to_string(it) +
                                               " iterations with residual " +
                                               std::to_string(rep.residual));
  rep.lambda2 = 2.0 * theta - 1.0;
  rep.gap = 1.0 - rep.lambda2;

  double worst = 0.0;
  for (std::size_t j = 0; j < family.size(); ++j) {
    const auto& c = avg.forward[j];
    std::vector<double> cv(rep.dimension);
    for (std::size_t i = 0; i < rep.dimension; ++i) cv[c.target(i)] = c.sign(i) * v[i];
    double d = 0.0;
    for (std::size_t i = 0; i < rep.dimension; ++i) d += (cv[i] - v[i]) * (cv[i] - v[i]);
    rep.generator_residuals[j] = std::sqrt(d);
    worst = std::max(worst, rep.generator_residuals[j]);
  }
  for (std::size_t j = 0; j < family.size(); ++j)
    if (rep.generator_residuals[j] >= worst - 1e-12) rep.worst_generators.push_back(j);
  return rep;
}

GapReport gap_report(int p, bool include_sign, SignStrategy strategy, std::uint64_t seed,
                     const GapOptions& options) {
  const auto full = standard_family(p, strategy, seed);
  const auto family = select_family(full, include_sign);
  GapReport rep = spectral_gap(family, options);
  rep.p = p;
  rep.includes_sign = include_sign;
  rep.invariant_dim_permutations = invariant_basis(select_family(full, false)).dimension();
  rep.invariant_dim_full = invariant_basis(full).dimension();
  return rep;
}

}  // namespace sl3lab
