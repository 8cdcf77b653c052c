#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sl3lab {

bool is_prime(long long n);

/// Homogeneous coordinates of a point of P^2(F_p), normalized so that the
/// first nonzero coordinate is 1.
struct ProjPoint {
  std::array<int, 3> coords{};

  auto operator<=>(const ProjPoint&) const = default;
};

/// Scales v (mod p) so its leading nonzero coordinate is 1. Throws
/// DegeneratePoint when v vanishes mod p and InvalidModulus when p is not prime.
ProjPoint normalize(const std::array<long long, 3>& v, int p);

/// Points of P^2(F_p) in lexicographic order of their normalized coordinates.
/// Immutable once built.
class ProjectivePlane {
 public:
  explicit ProjectivePlane(int p);

  int modulus() const noexcept { return p_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<ProjPoint>& points() const noexcept { return points_; }

  std::size_t index_of(const ProjPoint& pt) const;
  const ProjPoint& point_of(std::size_t index) const;

  /// Index of the point spanned by v; v need not be normalized.
  std::size_t index_of_vector(const std::array<long long, 3>& v) const;

 private:
  std::size_t key(const ProjPoint& pt) const noexcept;

  int p_;
  std::vector<ProjPoint> points_;
  // Dense lookup over all p^3 coordinate triples, -1 for non-normalized ones.
  std::vector<std::int64_t> lookup_;
};

ProjectivePlane enumerate_plane(int p);

constexpr std::size_t plane_size(int p) noexcept {
  return static_cast<std::size_t>(p) * static_cast<std::size_t>(p + 1) + 1;
}

}  // namespace sl3lab
