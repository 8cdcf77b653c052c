#include "sl3lab/plane.hpp"

#include <string>

#include "sl3lab/error.hpp"

namespace sl3lab {

namespace {

long long mod(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

long long inverse_mod(long long a, long long p) {
  // extended Euclid; a is a nonzero residue and p prime
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const long long q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  return mod(t, p);
}

void require_prime(long long p) {
  if (!is_prime(p))
    throw Error(ErrorKind::InvalidModulus, "modulus " + std::to_string(p) + " is not a prime");
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ProjPoint normalize(const std::array<long long, 3>& v, int p) {
  require_prime(p);
  std::array<long long, 3> r{mod(v[0], p), mod(v[1], p), mod(v[2], p)};
  std::size_t lead = 0;
  while (lead < 3 && r[lead] == 0) ++lead;
  if (lead == 3) throw Error(ErrorKind::DegeneratePoint, "vector is zero mod " + std::to_string(p));
  const long long s = inverse_mod(r[lead], p);
  ProjPoint out;
  for (std::size_t i = 0; i < 3; ++i) out.coords[i] = static_cast<int>(mod(r[i] * s, p));
  return out;
}

ProjectivePlane::ProjectivePlane(int p) : p_(p) {
  require_prime(p);
  const std::size_t cube = static_cast<std::size_t>(p) * p * p;
  lookup_.assign(cube, -1);
  points_.reserve(plane_size(p));
  // Lexicographic scan of F_p^3; a triple is kept iff it is already normalized.
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        const int lead = a != 0 ? a : (b != 0 ? b : c);
        if (lead != 1) continue;
        ProjPoint pt{{a, b, c}};
        lookup_[key(pt)] = static_cast<std::int64_t>(points_.size());
        points_.push_back(pt);
      }
  if (points_.size() != plane_size(p))
    throw Error(ErrorKind::InternalConsistency, "plane enumeration produced the wrong point count");
}

std::size_t ProjectivePlane::key(const ProjPoint& pt) const noexcept {
  return (static_cast<std::size_t>(pt.coords[0]) * p_ + pt.coords[1]) * p_ + pt.coords[2];
}

std::size_t ProjectivePlane::index_of(const ProjPoint& pt) const {
  for (int c : pt.coords)
    if (c < 0 || c >= p_) throw Error(ErrorKind::UnknownPoint, "coordinate outside F_p");
  const std::int64_t idx = lookup_[key(pt)];
  if (idx < 0) throw Error(ErrorKind::UnknownPoint, "point is not in normalized form");
  return static_cast<std::size_t>(idx);
}

const ProjPoint& ProjectivePlane::point_of(std::size_t index) const {
  if (index >= points_.size())
    throw Error(ErrorKind::OutOfRange, "index " + std::to_string(index) + " outside plane of size " +
                                           std::to_string(points_.size()));
  return points_[index];
}

std::size_t ProjectivePlane::index_of_vector(const std::array<long long, 3>& v) const {
  return static_cast<std::size_t>(lookup_[key(normalize(v, p_))]);
}

ProjectivePlane enumerate_plane(int p) { return ProjectivePlane(p); }

}  // namespace sl3lab
