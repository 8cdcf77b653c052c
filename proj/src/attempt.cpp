#include "sl3lab/attempt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>

#include "sl3lab/error.hpp"
#include "sl3lab/gap.hpp"
#include "sl3lab/norms.hpp"

namespace sl3lab {

AttemptCandidate AttemptCandidate::identity(std::size_t n) {
  return {Matrix::Identity(n, n), Matrix::Identity(n, n)};
}

AttemptCandidate AttemptCandidate::rank_one(const Vector& xi, const Vector& eta) {
  if (xi.size() != eta.size()) throw Error(ErrorKind::DimensionMismatch, "rank-one factors differ");
  return {Matrix(xi), Matrix(eta)};
}

AttemptCandidate pad_candidate(const AttemptCandidate& c, std::size_t rank) {
  if (rank < c.rank()) throw Error(ErrorKind::Precondition, "cannot pad to a smaller rank");
  AttemptCandidate out{Matrix::Zero(c.dim(), rank), Matrix::Zero(c.dim(), rank)};
  out.xi.leftCols(c.rank()) = c.xi;
  out.eta.leftCols(c.rank()) = c.eta;
  return out;
}

AttemptResidual attempt_residual(const Matrix& m, std::span<const SignedPermutation> family) {
  AttemptResidual out;
  out.norm = trace_norm(m);
  if (!(out.norm > 0.0)) throw Error(ErrorKind::DegenerateCandidate, "candidate is zero");
  for (const auto& u : family)
    out.per_generator.push_back(trace_norm(Matrix(m - tensor_action(u, m))) / out.norm);
  out.value = *std::max_element(out.per_generator.begin(), out.per_generator.end());
  for (std::size_t j = 0; j < out.per_generator.size(); ++j)
    if (out.per_generator[j] >= out.value - 1e-12) out.argmax.push_back(j);
  return out;
}

AttemptResidual attempt_residual(const AttemptCandidate& c,
                                 std::span<const SignedPermutation> family) {
  if (c.xi.rows() != c.eta.rows() || c.xi.cols() != c.eta.cols())
    throw Error(ErrorKind::DimensionMismatch, "candidate factor shapes differ");
  return attempt_residual(c.matrix(), family);
}

// ---------------------------------------------------------------------------

namespace {

struct Smoothed {
  double value = 0.0;  // pseudo-Huber trace norm
  double exact = 0.0;  // true trace norm
  Matrix gradient;
};

Smoothed smoothed_trace_norm(const Matrix& d, double mu) {
  Eigen::BDCSVD<Matrix> svd(d, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "SVD failed in optimizer");
  const Vector& s = svd.singularValues();
  Smoothed out;
  Vector deriv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double root = std::sqrt(s[i] * s[i] + mu * mu);
    out.value += root - mu;
    out.exact += s[i];
    deriv[i] = s[i] / root;
  }
  out.gradient = svd.matrixU() * deriv.asDiagonal() * svd.matrixV().transpose();
  return out;
}

struct Objective {
  std::span<const SignedPermutation> family;
  std::vector<SignedPermutation> inverses;
  double mu;
  double tau;

  struct Value {
    double smooth = 0.0;
    double exact = std::numeric_limits<double>::infinity();
    Matrix grad;  // d smooth / dM
  };

  Value operator()(const Matrix& m) const {
    Value v;
    const Smoothed base = smoothed_trace_norm(m, mu);
    if (!(base.exact > 0.0)) {
      v.smooth = std::numeric_limits<double>::infinity();
      v.grad = Matrix::Zero(m.rows(), m.cols());
      return v;
    }
    const std::size_t J = family.size();
    std::vector<double> ratio(J);
    std::vector<Matrix> dgrad(J);
    double exact_max = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      const Smoothed d = smoothed_trace_norm(m - tensor_action(family[j], m), mu);
      ratio[j] = d.value / base.value;
      exact_max = std::max(exact_max, d.exact / base.exact);
      // adjoint of M -> M - u M u^T applied to the gradient
      dgrad[j] = d.gradient - tensor_action(inverses[j], d.gradient);
    }
    v.exact = exact_max;
    const double top = *std::max_element(ratio.begin(), ratio.end());
    double z = 0.0;
    std::vector<double> w(J);
    for (std::size_t j = 0; j < J; ++j) z += (w[j] = std::exp(tau * (ratio[j] - top)));
    v.smooth = top + std::log(z) / tau;
    v.grad = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t j = 0; j < J; ++j)
      v.grad += (w[j] / z) * (dgrad[j] - ratio[j] * base.gradient) / base.value;
    return v;
  }
};

struct StartState {
  Matrix x;
  Matrix y;
  double best_exact = std::numeric_limits<double>::infinity();
  Matrix best_x;
  Matrix best_y;

  void record(const Matrix& cx, const Matrix& cy, double exact) {
    if (exact < best_exact) {
      best_exact = exact;
      best_x = cx;
      best_y = cy;
    }
  }
};

void rebalance(Matrix& x, Matrix& y) {
  const double mf = (x * y.transpose()).norm();
  if (!(mf > 0.0)) return;
  x /= std::sqrt(mf);
  y /= std::sqrt(mf);
  const double nx = x.norm(), ny = y.norm();
  if (nx > 0.0 && ny > 0.0) {
    const double c = std::sqrt(ny / nx);
    x *= c;
    y /= c;
  }
}

/// One Armijo-backtracked gradient step on one factor; returns the new value.
Objective::Value factor_step(const Objective& f, StartState& st, bool on_x, Objective::Value current,
                             double& step) {
  const Matrix g = on_x ? Matrix(current.grad * st.y) : Matrix(current.grad.transpose() * st.x);
  const double g2 = g.squaredNorm();
  if (!(g2 > 0.0) || !std::isfinite(current.smooth)) return current;
  double t = std::min(step * 2.0, 1e3);
  for (int tries = 0; tries < 40; ++tries, t *= 0.5) {
    const Matrix& fixed = on_x ? st.y : st.x;
    Matrix moved = (on_x ? st.x : st.y) - t * g;
    const Matrix m = on_x ? Matrix(moved * fixed.transpose()) : Matrix(fixed * moved.transpose());
    Objective::Value trial = f(m);
    if (on_x)
      st.record(moved, st.y, trial.exact);
    else
      st.record(st.x, moved, trial.exact);
    if (trial.smooth <= current.smooth - 1e-4 * t * g2) {
      (on_x ? st.x : st.y) = std::move(moved);
      step = t;
      return trial;
    }
  }
  step = t;
  return current;
}

void run_phase(const Objective& f, StartState& st, std::size_t sweeps) {
  double step_x = 1.0, step_y = 1.0;
  for (std::size_t s = 0; s < sweeps; ++s) {
    rebalance(st.x, st.y);
    Objective::Value cur = f(st.x * st.y.transpose());
    st.record(st.x, st.y, cur.exact);
    const double before = cur.smooth;
    cur = factor_step(f, st, true, std::move(cur), step_x);
    cur = factor_step(f, st, false, std::move(cur), step_y);
    if (!(cur.smooth < before - 1e-14) && step_x < 1e-12 && step_y < 1e-12) break;
  }
}

std::mt19937_64 start_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x51a3u};
  return std::mt19937_64(seq);
}

}  // namespace

MinimizeResult minimize_attempt(std::span<const SignedPermutation> family,
                                const MinimizeOptions& options) {
  if (options.rank < 1) throw Error(ErrorKind::Precondition, "rank must be at least 1");
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "family is empty");
  const std::size_t n = family.front().dim();
  const std::size_t r = options.rank;

  // Initial factor pairs in start order: warm start, identity (r >= n), random.
  std::vector<std::pair<Matrix, Matrix>> inits;
  if (options.warm_start) {
    const auto padded = pad_candidate(*options.warm_start, r);
    if (padded.dim() != n) throw Error(ErrorKind::DimensionMismatch, "warm start has the wrong dimension");
    inits.emplace_back(padded.xi, padded.eta);
  }
  if (r >= n) {
    Matrix id = Matrix::Zero(n, r);
    id.leftCols(n).setIdentity();
    inits.emplace_back(id, id);
  }
  const std::size_t total = std::max(options.starts, inits.size());
  for (std::size_t s = inits.size(); s < total; ++s) {
    auto rng = start_rng(options.seed, s);
    std::normal_distribution<double> normal;
    Matrix x(n, r), y(n, r);
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = normal(rng);
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      for (Eigen::Index i = 0; i < y.rows(); ++i) y(i, j) = normal(rng);
    inits.emplace_back(std::move(x), std::move(y));
  }

  std::vector<SignedPermutation> inverses;
  for (const auto& u : family) inverses.push_back(u.inverse());
  const Objective coarse{family, inverses, options.smoothing, options.softmax_temperature};
  const Objective fine{family, inverses, options.smoothing * 1e-2, options.softmax_temperature * 5.0};

  std::vector<StartState> states(total);
  const long count = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < count; ++s) {
    StartState& st = states[s];
    st.x = inits[s].first;
    st.y = inits[s].second;
    const Matrix m0 = st.x * st.y.transpose();
    if (trace_norm(m0) > 0.0) st.record(st.x, st.y, attempt_residual(m0, family).value);
    if (st.best_exact > 0.0) {
      run_phase(coarse, st, options.budget);
      if (st.best_x.size() != 0) {
        st.x = st.best_x;
        st.y = st.best_y;
      }
      run_phase(fine, st, options.polish_iterations);
    }
  }

  MinimizeResult result;
  result.eps_hat = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < total; ++s) {
    const auto& st = states[s];
    result.start_eps.push_back(st.best_exact);
    if (st.best_exact < result.eps_hat) {
      result.eps_hat = st.best_exact;
      result.best_start = s;
    }
  }
  const auto& best = states[result.best_start];
  if (best.best_x.size() == 0)
    throw Error(ErrorKind::InternalConsistency, "optimizer produced no nonzero candidate");
  result.candidate = {best.best_x, best.best_y};
  // exact re-evaluation of the returned candidate
  result.eps_hat = attempt_residual(result.candidate, family).value;
  return result;
}

MinimizeResult minimize_attempt(int p, const MinimizeOptions& options) {
  const auto family = standard_family(p);
  return minimize_attempt(family, options);
}

}  // namespace sl3lab
