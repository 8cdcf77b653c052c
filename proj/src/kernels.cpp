#include "sl3lab/kernels.hpp"

#include <cmath>

#include "sl3lab/error.hpp"
#include "sl3lab/norms.hpp"
#include "sl3lab/slicing.hpp"

namespace sl3lab::kernels {

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0, c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  return sum + c;
}

namespace {

double slice_norm_at(const TensorDecomposition& t, const BasisSubset& f, std::size_t e) {
  const SliceFactors sf = slice_factors(t, f, e);
  if (sf.xi.size() == 0 || (sf.xi.isZero(0.0) || sf.eta.isZero(0.0))) return 0.0;
  return trace_norm(sf.matrix());
}

}  // namespace

std::vector<double> slice_norms_serial(const TensorDecomposition& t, const BasisSubset& f) {
  const std::size_t n = t.layout().total_dim();
  std::vector<double> out(n, 0.0);
  for (std::size_t e = 0; e < n; ++e) out[e] = slice_norm_at(t, f, e);
  return out;
}

std::vector<double> slice_norms(const TensorDecomposition& t, const BasisSubset& f) {
  const long n = static_cast<long>(t.layout().total_dim());
  std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (long e = 0; e < n; ++e) out[e] = slice_norm_at(t, f, static_cast<std::size_t>(e));
  return out;
}

SignedPermutation conjugation_map(const SignedPermutation& u) {
  // (u M u^T)_{sigma x, sigma y} = s(x) s(y) M_{xy}
  const std::size_t n = u.dim();
  std::vector<std::size_t> perm(n * n);
  std::vector<std::int8_t> signs(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      perm[x * n + y] = u.target(x) * n + u.target(y);
      signs[x * n + y] = static_cast<std::int8_t>(u.sign(x) * u.sign(y));
    }
  return SignedPermutation(std::move(perm), std::move(signs));
}

AveragingOperator AveragingOperator::from_family(std::span<const SignedPermutation> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyInput, "averaging needs at least one operator");
  AveragingOperator a;
  a.dim = family.front().dim() * family.front().dim();
  for (const auto& u : family) {
    if (u.dim() * u.dim() != a.dim)
      throw Error(ErrorKind::DimensionMismatch, "family members differ in dimension");
    a.forward.push_back(conjugation_map(u));
    a.backward.push_back(a.forward.back().inverse());
  }
  return a;
}

void average_apply_serial(const AveragingOperator& a, std::span<const double> in,
                          std::span<double> out) {
  if (in.size() != a.dim || out.size() != a.dim)
    throw Error(ErrorKind::DimensionMismatch, "averaging operator: vector length mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& c : a.forward)
    for (std::size_t w = 0; w < a.dim; ++w) {
      const double s = c.sign(w);
      out[c.target(w)] += s * in[w];  // C in
      out[w] += s * in[c.target(w)];  // C^T in
    }
  const double scale = 1.0 / (2.0 * static_cast<double>(a.forward.size()));
  for (auto& v : out) v *= scale;
}

void average_apply(const AveragingOperator& a, std::span<const double> in, std::span<double> out) {
  if (in.size() != a.dim || out.size() != a.dim)
    throw Error(ErrorKind::DimensionMismatch, "averaging operator: vector length mismatch");
  const double scale = 1.0 / (2.0 * static_cast<double>(a.forward.size()));
  const long n = static_cast<long>(a.dim);
  const std::size_t terms = a.forward.size();
#pragma omp parallel for schedule(static)
  for (long z = 0; z < n; ++z) {
    double acc = 0.0;
    for (std::size_t j = 0; j < terms; ++j) {
      const auto& fwd = a.forward[j];
      const auto& bwd = a.backward[j];
      // (C in)[z] = s(w) in[w] with w = C^{-1} z; (C^T in)[z] = s(z) in[C z]
      acc += bwd.sign(z) * in[bwd.target(z)];
      acc += fwd.sign(z) * in[fwd.target(z)];
    }
    out[z] = scale * acc;
  }
}

}  // namespace sl3lab::kernels
