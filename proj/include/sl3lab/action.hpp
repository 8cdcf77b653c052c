#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sl3lab/plane.hpp"

namespace sl3lab {

using IntMatrix3 = std::array<std::array<long long, 3>, 3>;

long long determinant(const IntMatrix3& m) noexcept;
IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b) noexcept;
IntMatrix3 identity_matrix3() noexcept;

/// An element of SL_3(Z). Construction rejects matrices whose determinant
/// is not exactly 1.
class Generator {
 public:
  explicit Generator(const IntMatrix3& entries, std::string name = {});

  const IntMatrix3& entries() const noexcept { return entries_; }
  const std::string& name() const noexcept { return name_; }

 private:
  IntMatrix3 entries_;
  std::string name_;
};

/// Elementary transvection E_ij(1) = I + e_i e_j^T, 0-based i != j.
Generator transvection(int i, int j);

/// The six transvections E_12, E_13, E_21, E_23, E_31, E_32.
std::vector<Generator> default_generators();

/// Unitary u with u e_x = s(x) e_{sigma(x)}, s(x) in {+1, -1}.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  SignedPermutation(std::vector<std::size_t> perm, std::vector<std::int8_t> signs);

  static SignedPermutation identity(std::size_t n);
  static SignedPermutation diagonal(std::vector<std::int8_t> signs);

  std::size_t dim() const noexcept { return perm_.size(); }
  std::size_t target(std::size_t x) const { return perm_[x]; }
  int sign(std::size_t x) const { return signs_[x]; }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  const std::vector<std::int8_t>& signs() const noexcept { return signs_; }

  bool is_pure_permutation() const noexcept;

  /// (*this) * other, i.e. apply other first.
  SignedPermutation compose(const SignedPermutation& other) const;
  /// Inverse, which equals the transpose for a real signed permutation.
  SignedPermutation inverse() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd to_dense() const;

  bool operator==(const SignedPermutation&) const = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<std::int8_t> signs_;
};

/// Permutation of the plane induced by g acting on column vectors mod p.
SignedPermutation induced_permutation(const Generator& g, const ProjectivePlane& plane);

enum class SignStrategy { First, Random };

SignStrategy parse_sign_strategy(const std::string& name);

/// A subset S of the plane with |S| = (|P| - 1) / 2.
struct SignPattern {
  std::size_t plane_size = 0;
  std::vector<bool> member;

  std::size_t count() const noexcept;
};

SignPattern sign_pattern(const ProjectivePlane& plane, SignStrategy strategy = SignStrategy::First,
                         std::uint64_t seed = 0);

/// Diagonal unitary: +1 on S, -1 off S.
SignedPermutation sign_unitary(const SignPattern& pattern);

/// The m generator permutations followed by the sign unitary.
std::vector<SignedPermutation> rep_family(const ProjectivePlane& plane,
                                          std::span<const Generator> generators,
                                          const SignPattern& pattern);

/// Convenience: default generators and the requested sign strategy.
std::vector<SignedPermutation> standard_family(int p, SignStrategy strategy = SignStrategy::First,
                                               std::uint64_t seed = 0);

}  // namespace sl3lab
