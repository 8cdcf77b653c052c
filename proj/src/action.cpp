#include "sl3lab/action.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sl3lab/error.hpp"

namespace sl3lab {

long long determinant(const IntMatrix3& m) noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b) noexcept {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix3 identity_matrix3() noexcept { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Generator::Generator(const IntMatrix3& entries, std::string name)
    : entries_(entries), name_(std::move(name)) {
  if (determinant(entries_) != 1)
    throw Error(ErrorKind::InvalidGenerator, "generator determinant is " +
                                                 std::to_string(determinant(entries_)) + ", expected 1");
}

Generator transvection(int i, int j) {
  if (i == j || i < 0 || j < 0 || i > 2 || j > 2)
    throw Error(ErrorKind::InvalidGenerator, "transvection needs distinct indices in 0..2");
  IntMatrix3 m = identity_matrix3();
  m[i][j] = 1;
  return Generator(m, "E" + std::to_string(i + 1) + std::to_string(j + 1));
}

std::vector<Generator> default_generators() {
  std::vector<Generator> gens;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) gens.push_back(transvection(i, j));
  return gens;
}

SignedPermutation::SignedPermutation(std::vector<std::size_t> perm, std::vector<std::int8_t> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.size() != signs_.size())
    throw Error(ErrorKind::DimensionMismatch, "permutation and sign vectors differ in length");
  std::vector<bool> hit(perm_.size(), false);
  for (std::size_t t : perm_) {
    if (t >= perm_.size() || hit[t])
      throw Error(ErrorKind::InternalConsistency, "map is not a bijection");
    hit[t] = true;
  }
  for (auto s : signs_)
    if (s != 1 && s != -1) throw Error(ErrorKind::InternalConsistency, "sign outside {+1,-1}");
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return SignedPermutation(std::move(perm), std::vector<std::int8_t>(n, 1));
}

SignedPermutation SignedPermutation::diagonal(std::vector<std::int8_t> signs) {
  std::vector<std::size_t> perm(signs.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return SignedPermutation(std::move(perm), std::move(signs));
}

bool SignedPermutation::is_pure_permutation() const noexcept {
  return std::all_of(signs_.begin(), signs_.end(), [](std::int8_t s) { return s == 1; });
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& other) const {
  if (other.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "compose: dimension mismatch");
  std::vector<std::size_t> perm(dim());
  std::vector<std::int8_t> signs(dim());
  for (std::size_t x = 0; x < dim(); ++x) {
    const std::size_t y = other.perm_[x];
    perm[x] = perm_[y];
    signs[x] = static_cast<std::int8_t>(other.signs_[x] * signs_[y]);
  }
  return SignedPermutation(std::move(perm), std::move(signs));
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<std::size_t> perm(dim());
  std::vector<std::int8_t> signs(dim());
  for (std::size_t x = 0; x < dim(); ++x) {
    perm[perm_[x]] = x;
    signs[perm_[x]] = signs_[x];
  }
  return SignedPermutation(std::move(perm), std::move(signs));
}

Eigen::VectorXd SignedPermutation::apply(const Eigen::VectorXd& v) const {
  if (static_cast<std::size_t>(v.size()) != dim())
    throw Error(ErrorKind::DimensionMismatch, "apply: vector length mismatch");
  Eigen::VectorXd out(v.size());
  for (std::size_t x = 0; x < dim(); ++x) out[perm_[x]] = signs_[x] * v[x];
  return out;
}

Eigen::MatrixXd SignedPermutation::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t x = 0; x < dim(); ++x) m(perm_[x], x) = signs_[x];
  return m;
}

SignedPermutation induced_permutation(const Generator& g, const ProjectivePlane& plane) {
  const auto& m = g.entries();
  std::vector<std::size_t> perm(plane.size());
  for (std::size_t x = 0; x < plane.size(); ++x) {
    const auto& c = plane.point_of(x).coords;
    std::array<long long, 3> image{};
    for (int i = 0; i < 3; ++i) image[i] = m[i][0] * c[0] + m[i][1] * c[1] + m[i][2] * c[2];
    perm[x] = plane.index_of_vector(image);
  }
  // The constructor rejects non-bijective maps.
  return SignedPermutation(std::move(perm), std::vector<std::int8_t>(plane.size(), 1));
}

SignStrategy parse_sign_strategy(const std::string& name) {
  if (name == "first") return SignStrategy::First;
  if (name == "random") return SignStrategy::Random;
  throw Error(ErrorKind::Precondition, "unknown sign strategy '" + name + "'");
}

std::size_t SignPattern::count() const noexcept {
  return static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
}

SignPattern sign_pattern(const ProjectivePlane& plane, SignStrategy strategy, std::uint64_t seed) {
  const std::size_t n = plane.size();
  const std::size_t half = (n - 1) / 2;
  SignPattern pattern{n, std::vector<bool>(n, false)};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (strategy == SignStrategy::Random) {
    std::mt19937_64 rng(seed);
    // Fisher-Yates with our own index draw so the subset is stable across
    // standard library implementations.
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  for (std::size_t i = 0; i < half; ++i) pattern.member[order[i]] = true;
  return pattern;
}

SignedPermutation sign_unitary(const SignPattern& pattern) {
  std::vector<std::int8_t> signs(pattern.plane_size);
  for (std::size_t x = 0; x < pattern.plane_size; ++x) signs[x] = pattern.member[x] ? 1 : -1;
  return SignedPermutation::diagonal(std::move(signs));
}

std::vector<SignedPermutation> rep_family(const ProjectivePlane& plane,
                                          std::span<const Generator> generators,
                                          const SignPattern& pattern) {
  if (pattern.plane_size != plane.size())
    throw Error(ErrorKind::DimensionMismatch, "sign pattern belongs to a different plane");
  std::vector<SignedPermutation> family;
  family.reserve(generators.size() + 1);
  for (const auto& g : generators) family.push_back(induced_permutation(g, plane));
  family.push_back(sign_unitary(pattern));
  return family;
}

std::vector<SignedPermutation> standard_family(int p, SignStrategy strategy, std::uint64_t seed) {
  const ProjectivePlane plane(p);
  const auto gens = default_generators();
  return rep_family(plane, gens, sign_pattern(plane, strategy, seed));
}

}  // namespace sl3lab
