#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "sl3lab/error.hpp"
#include "sl3lab/norms.hpp"

using namespace sl3lab;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> normal;
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = normal(rng);
  return m;
}

}  // namespace

TEST_CASE("Hilbert-Schmidt norm") {
  const auto layout = build_layout(LayoutPreset::Tight, 2);
  CHECK(hs_norm(Matrix(Matrix::Identity(5, 5))) == doctest::Approx(std::sqrt(5.0)));
  auto op = BlockOperator::zero(layout);
  op.block(0)(0, 0) = 3.0;
  op.block(1)(2, 5) = 4.0;
  CHECK(hs_norm(op) == doctest::Approx(5.0));

  std::mt19937_64 rng(3);
  const auto a = BlockOperator::random(layout, rng);
  CHECK(hs_norm(a) * hs_norm(a) == doctest::Approx(trace(multiply(adjoint(a), a))).epsilon(1e-10));
}

TEST_CASE("trace norm") {
  const Vector xi = (Vector(3) << 1, 2, 2).finished();
  const Vector eta = (Vector(3) << 0, 3, 4).finished();
  CHECK(trace_norm(Matrix(xi * eta.transpose())) == doctest::Approx(15.0));
  const Matrix d = Vector((Vector(3) << 1, -2, 3).finished()).asDiagonal();
  CHECK(trace_norm(d) == doctest::Approx(6.0));

  const auto layout = build_layout(LayoutPreset::Tight, 2);
  auto op = BlockOperator::zero(layout);
  op.block(0)(0, 0) = 2.0;
  op.block(1)(0, 0) = 3.0;
  op.block(1)(1, 1) = -2.0;
  CHECK(trace_norm(op) == doctest::Approx(7.0));
  CHECK_THROWS_AS(trace_norm(Matrix::Constant(2, 2, std::nan(""))), Error);
}

TEST_CASE("projective norm on l2 tensor l2") {
  Matrix e11 = Matrix::Zero(4, 4);
  e11(0, 0) = 1.0;
  CHECK(projective_norm_l2(e11) == doctest::Approx(1.0));
  CHECK(projective_norm_l2(Matrix(Matrix::Identity(6, 6))) == doctest::Approx(6.0));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    const Matrix m = random_matrix(rng, 2, 2);
    const double oracle_value = oracle::projective_norm_2x2_search(m, 100 + t);
    CHECK(std::abs(projective_norm_l2(m) - oracle_value) < 1e-4);
  }
}

TEST_CASE("projective norm does not depend on the decomposition") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const Matrix xi = random_matrix(rng, 5, 3);
    const Matrix eta = random_matrix(rng, 5, 3);
    // same tensor, different factors: xi G, eta G^{-T}
    const Matrix g = random_matrix(rng, 3, 3) + 3.0 * Matrix::Identity(3, 3);
    const Matrix xi2 = xi * g;
    const Matrix eta2 = eta * g.inverse().transpose();
    CHECK(std::abs(projective_norm_l2(xi, eta) - projective_norm_l2(xi2, eta2)) < 1e-10);
  }
}

TEST_CASE("norm inequalities and unitary invariance") {
  std::mt19937_64 rng(29);
  const auto fam = standard_family(2);
  for (int t = 0; t < 100; ++t) {
    const Matrix m = random_matrix(rng, 7, 7);
    CHECK(hs_norm(m) <= trace_norm(m) + 1e-12);
    CHECK(operator_norm(m) <= hs_norm(m) + 1e-12);
    CHECK(trace_norm(m) >= std::abs(m.trace()) - 1e-12);
    const Matrix u = fam[t % 7].to_dense(), v = fam[(t + 3) % 7].to_dense();
    CHECK(std::abs(trace_norm(Matrix(u * m * v)) - trace_norm(m)) < 1e-10);
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(standard_family(3)[2].to_dense()) == doctest::Approx(1.0));
  CHECK(operator_norm(Matrix(Vector((Vector(2) << 2, 1).finished()).asDiagonal())) == doctest::Approx(2.0));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const Matrix m = random_matrix(rng, 6, 6);
    CHECK(std::abs(operator_norm(m) - oracle::power_iteration_norm(m)) < 1e-8);
  }
}

TEST_CASE("tensor decompositions and the gamma upper bound") {
  const auto layout = build_layout(LayoutPreset::Tight, 1);
  const auto id = TensorDecomposition::identity(layout);
  CHECK(id.is_candidate_diagonal());
  CHECK(gamma_upper_bound(id) == doctest::Approx(1.0));

  const auto fams = standard_block_families(layout);
  const auto omega = build_omega(layout, fams);
  const TensorDecomposition two({omega[0], omega[6]}, {omega[1], omega[2]});
  CHECK(gamma_upper_bound(two) == doctest::Approx(2.0));

  const auto diag = TensorDecomposition::diagonal_units(layout);
  CHECK(diag.rank() == 7);
  CHECK(diag.diagonal_defect() < 1e-15);

  try {
    TensorDecomposition bad({omega[0]}, {omega[1]}, true);
    FAIL("non-diagonal accepted as candidate diagonal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  CHECK_THROWS_AS(TensorDecomposition({omega[0]}, {}), Error);
  CHECK_THROWS_AS(TensorDecomposition({omega[0]}, {BlockOperator::identity(build_layout({8}))}), Error);
}
