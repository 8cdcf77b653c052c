#pragma once

// Independent reference computations used only by tests. None of these call
// into the library routine they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sl3lab/action.hpp"

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Triple = std::array<int, 3>;

/// Classes of nonzero vectors of F_p^3 under scalar multiplication, each
/// represented by its member with leading coordinate 1, sorted.
inline std::vector<Triple> brute_force_plane(int p) {
  std::set<Triple> reps;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        std::vector<Triple> cls;
        for (int s = 1; s < p; ++s) cls.push_back({(a * s) % p, (b * s) % p, (c * s) % p});
        for (const auto& t : cls) {
          const int lead = t[0] ? t[0] : (t[1] ? t[1] : t[2]);
          if (lead == 1) reps.insert(t);
        }
      }
  return {reps.begin(), reps.end()};
}

/// Scans the p-1 scalar multiples of v for the one with leading coordinate 1.
inline Triple brute_force_normalize(std::array<long long, 3> v, int p) {
  for (int s = 1; s < p; ++s) {
    Triple t;
    for (int i = 0; i < 3; ++i) t[i] = static_cast<int>((((v[i] * s) % p) + p) % p);
    const int lead = t[0] ? t[0] : (t[1] ? t[1] : t[2]);
    if (lead == 1) return t;
  }
  return {-1, -1, -1};
}

/// Closure of a set of permutations under composition (finite group).
inline std::set<std::vector<std::size_t>> generate_group(
    const std::vector<std::vector<std::size_t>>& gens) {
  const std::size_t n = gens.front().size();
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> group{id};
  std::vector<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& g : frontier)
      for (const auto& h : gens) {
        std::vector<std::size_t> gh(n);
        for (std::size_t x = 0; x < n; ++x) gh[x] = h[g[x]];
        if (group.insert(gh).second) next.push_back(std::move(gh));
      }
    frontier = std::move(next);
  }
  return group;
}

/// Orbits of the group on ordered pairs (x, y), by explicit enumeration.
inline std::size_t count_pair_orbits(const std::set<std::vector<std::size_t>>& group) {
  const std::size_t n = group.begin()->size();
  std::vector<bool> seen(n * n, false);
  std::size_t orbits = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (seen[x * n + y]) continue;
      ++orbits;
      for (const auto& g : group) seen[g[x] * n + g[y]] = true;
    }
  return orbits;
}

/// Nullity of the stacked system (u_j (x) u_j - I) vec(M) = 0 by Gaussian
/// elimination over F_q for a large prime q. Entries are small integers, so
/// rank over F_q equals rank over Q.
inline std::size_t modular_nullity(std::span<const sl3lab::SignedPermutation> family) {
  constexpr std::int64_t q = 2147483647;  // 2^31 - 1
  const std::size_t n = family.front().dim();
  const std::size_t N = n * n;
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& u : family) {
    const Matrix d = u.to_dense();
    for (std::size_t r = 0; r < N; ++r) {
      std::vector<std::int64_t> row(N, 0);
      const std::size_t a = r / n, b = r % n;
      // row r of kron(u, u) - I in row-major vec convention
      for (std::size_t c = 0; c < N; ++c) {
        const double v = d(a, c / n) * d(b, c % n);
        row[c] = static_cast<std::int64_t>(std::llround(v));
      }
      row[r] -= 1;
      for (auto& x : row) x = ((x % q) + q) % q;
      rows.push_back(std::move(row));
    }
  }
  auto pow_mod = [](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= q;
    while (e) {
      if (e & 1) r = r * b % q;
      b = b * b % q;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < N && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const std::int64_t inv = pow_mod(rows[rank][col], q - 2);
    for (auto& x : rows[rank]) x = x * inv % q;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::int64_t f = rows[r][col];
      for (std::size_t c = col; c < N; ++c) rows[r][c] = ((rows[r][c] - f * rows[rank][c]) % q + q) % q;
    }
    ++rank;
  }
  return N - rank;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Dense symmetrized average (1/2J) sum_j (u_j (x) u_j + its transpose).
inline Matrix dense_average(std::span<const sl3lab::SignedPermutation> family) {
  const std::size_t n = family.front().dim();
  Matrix a = Matrix::Zero(n * n, n * n);
  for (const auto& u : family) {
    const Matrix k = kron(u.to_dense(), u.to_dense());
    a += k + k.transpose();
  }
  return a / (2.0 * static_cast<double>(family.size()));
}

/// Largest eigenvalue below 1 - 1e-9 of the dense average (full eigensolve).
inline double dense_lambda2(std::span<const sl3lab::SignedPermutation> family) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(dense_average(family), Eigen::EigenvaluesOnly);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()[i] < 1.0 - 1e-9) best = std::max(best, eig.eigenvalues()[i]);
  return best;
}

/// Largest singular value by power iteration on A^T A.
inline double power_iteration_norm(const Matrix& a, int iterations = 5000) {
  Vector v = Vector::Ones(a.cols()) + Vector::LinSpaced(a.cols(), 0.0, 0.1);
  v.normalize();
  double lambda = 0.0;
  for (int i = 0; i < iterations; ++i) {
    Vector w = a.transpose() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / nw;
    if (std::abs(next - lambda) <= 1e-15 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

/// Pattern search (compass search) minimizer, shrinking steps to `min_step`.
template <class F>
std::vector<double> compass_search(F&& f, std::vector<double> x, double step, double min_step) {
  double fx = f(x);
  while (step > min_step) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += dir * step;
        const double fy = f(y);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return x;
}

/// inf over rank-2 decompositions M = x1 y1^T + x2 y2^T of |x1||y1| + |x2||y2|
/// for a 2x2 matrix M, by seeded multi-start compass search over invertible X
/// (then Y^T = X^{-1} M).
inline double projective_norm_2x2_search(const Matrix& m, std::uint64_t seed) {
  auto cost = [&](const std::vector<double>& p) {
    Matrix x(2, 2);
    x << p[0], p[1], p[2], p[3];
    const double det = x.determinant();
    if (std::abs(det) < 1e-12) return std::numeric_limits<double>::infinity();
    const Matrix yt = x.inverse() * m;
    return x.col(0).norm() * yt.row(0).norm() + x.col(1).norm() * yt.row(1).norm();
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 24; ++s) {
    std::vector<double> x0{normal(rng), normal(rng), normal(rng), normal(rng)};
    const auto x = compass_search(cost, x0, 0.5, 1e-11);
    best = std::min(best, cost(x));
  }
  return best;
}

/// Trace norm of the rank <= 2 matrix a b^T - c d^T without an SVD:
/// sigma1 + sigma2 = sqrt(||D||_F^2 + 2 sqrt(det(A^T A) det(B^T B))).
inline double rank_two_trace_norm(const Vector& a, const Vector& b, const Vector& c,
                                  const Vector& d) {
  const double aa = a.squaredNorm(), cc = c.squaredNorm(), ac = a.dot(c);
  const double bb = b.squaredNorm(), dd = d.squaredNorm(), bd = b.dot(d);
  const double fro2 = aa * bb + cc * dd - 2.0 * ac * bd;
  const double prod = std::sqrt(std::max(0.0, (aa * cc - ac * ac) * (bb * dd - bd * bd)));
  return std::sqrt(std::max(0.0, fro2 + 2.0 * prod));
}

/// Attempt residual of the rank-1 candidate xi eta^T via the closed form.
inline double rank_one_residual(const Vector& xi, const Vector& eta,
                                std::span<const sl3lab::SignedPermutation> family) {
  const double base = xi.norm() * eta.norm();
  double worst = 0.0;
  for (const auto& u : family) {
    Vector uxi(xi.size()), ueta(eta.size());
    for (std::size_t x = 0; x < u.dim(); ++x) {
      uxi[u.target(x)] = u.sign(x) * xi[x];
      ueta[u.target(x)] = u.sign(x) * eta[x];
    }
    worst = std::max(worst, rank_two_trace_norm(xi, eta, uxi, ueta) / base);
  }
  return worst;
}

/// Pattern search whose 2n directions are redrawn as a random orthonormal
/// basis after every contraction, so kinks of a max-type objective that block
/// the coordinate directions do not stall it. At most max_evals calls of f.
template <class F>
std::vector<double> rotating_search(F&& f, std::vector<double> x, double step, double min_step,
                                    std::mt19937_64& rng, std::size_t max_evals = 20000) {
  const std::size_t n = x.size();
  double fx = f(x);
  std::size_t evals = 1;
  Matrix basis = Matrix::Identity(n, n);
  std::normal_distribution<double> normal;
  while (step > min_step && evals < max_evals) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i)
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        for (std::size_t k = 0; k < n; ++k) y[k] += dir * step * basis(k, i);
        const double fy = f(y);
        ++evals;
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
        }
      }
    if (!improved) {
      step *= 0.5;
      Matrix g(n, n);
      for (auto& v : g.reshaped()) v = normal(rng);
      basis = Eigen::HouseholderQR<Matrix>(g).householderQ();
    }
  }
  return x;
}

/// Coarse grid over {-1,0,1}^n x {-1,0,1}^n, a cheap pattern search from the
/// `refine` best grid pairs, then repeated fine searches from the best
/// `polish` of those. Returns the best residual found (an upper bound).
inline double rank_one_grid_oracle(std::span<const sl3lab::SignedPermutation> family,
                                   std::size_t refine = 200, std::size_t polish = 8) {
  const std::size_t n = family.front().dim();
  std::vector<Vector> grid;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Vector v(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) v[i] = static_cast<double>(c % 3) - 1.0;
    // one representative per +-v pair: first nonzero entry positive
    Eigen::Index lead = 0;
    while (lead < v.size() && v[lead] == 0.0) ++lead;
    if (lead == v.size() || v[lead] < 0.0) continue;
    grid.push_back(v);
  }
  std::multimap<double, std::pair<std::size_t, std::size_t>> ranked;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double r = rank_one_residual(grid[i], grid[j], family);
      if (ranked.size() < refine || r < std::prev(ranked.end())->first) {
        ranked.emplace(r, std::make_pair(i, j));
        if (ranked.size() > refine) ranked.erase(std::prev(ranked.end()));
      }
    }
  auto cost = [&](const std::vector<double>& p) {
    Vector xi(n), eta(n);
    for (std::size_t i = 0; i < n; ++i) {
      xi[i] = p[i];
      eta[i] = p[n + i];
    }
    if (xi.norm() < 1e-9 || eta.norm() < 1e-9) return std::numeric_limits<double>::infinity();
    return rank_one_residual(xi, eta, family);
  };
  std::mt19937_64 rng(1);
  std::multimap<double, std::vector<double>> coarse;
  for (const auto& [r, ij] : ranked) {
    std::vector<double> x0(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      x0[i] = grid[ij.first][i];
      x0[n + i] = grid[ij.second][i];
    }
    const auto x = rotating_search(cost, x0, 0.25, 1e-3, rng, 4000);
    coarse.emplace(cost(x), x);
  }
  double best = coarse.begin()->first;
  std::size_t done = 0;
  for (const auto& [r, x0] : coarse) {
    if (done++ >= polish) break;
    auto x = x0;
    for (int round = 0; round < 4; ++round) x = rotating_search(cost, x, 0.05, 1e-8, rng);
    best = std::min(best, cost(x));
  }
  return best;
}

/// T_F(e) via the full 4-index tensor t[p][q][r][s] = sum_i a_i[p,q] b_i[r,s]
/// in global coordinates: slice[f][g] = t[f][e][e][g].
inline Matrix dense_tensor_slice(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                                 const std::vector<std::size_t>& f, std::size_t e) {
  const std::size_t n = static_cast<std::size_t>(a.front().rows());
  std::vector<double> t(n * n * n * n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = 0; s < n; ++s)
            t[((p * n + q) * n + r) * n + s] += a[i](p, q) * b[i](r, s);
  Matrix out(f.size(), f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = 0; y < f.size(); ++y)
      out(x, y) = t[((f[x] * n + e) * n + e) * n + f[y]];
  return out;
}

}  // namespace oracle
