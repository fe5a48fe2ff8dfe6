#include <doctest.h>

#include <cmath>

#include "evlcp/matrix.hpp"
#include "evlcp/rng.hpp"

using namespace evlcp;

namespace {

Matrix random_matrix(std::size_t n, RngStream& rng) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform_sym();
  return m;
}

}  // namespace

TEST_CASE("induced norms") {
  const Matrix a{{3.0, -2.0}, {-4.0, 5.0}};
  CHECK(norm(a, NormTag::inf) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(norm(a, NormTag::one) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(norm(Matrix::identity(5), NormTag::inf) == 1.0);

  const Matrix b{{1.0, 0.75, 0.0}, {0.75, 1.0, 0.0}, {0.0, 0.75, 1.0}};
  CHECK(norm(b, NormTag::inf) == doctest::Approx(1.75).epsilon(1e-15));

  // Single column: induced norm equals the vector norm.
  const Matrix col(3, 1, {1.0, -4.0, 2.0});
  CHECK(norm(col, NormTag::inf) == 4.0);
  CHECK(norm(col, NormTag::one) == 7.0);
  CHECK(norm_inf({1.0, -4.0, 2.0}) == 4.0);
  CHECK(norm_one({1.0, -4.0, 2.0}) == 7.0);
}

TEST_CASE("inf norm equals direct row sums on random matrices") {
  RngStream rng(7, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 8;
    const Matrix m = random_matrix(n, rng);
    double expect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += std::abs(m(i, j));
      expect = std::max(expect, s);
    }
    CHECK(norm(m, NormTag::inf) == expect);
  }
}

TEST_CASE("matrix construction rejects bad input") {
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0, std::nan("")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Matrix(0, 2, 1.0), std::invalid_argument);
}

TEST_CASE("solve_linear basic cases") {
  const Vector b{3.0, -5.0};
  CHECK(solve_linear(Matrix::identity(2), b) == b);

  const Vector x = solve_linear(Matrix{{2.0, 0.0}, {0.0, 4.0}}, {2.0, 8.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(solve_linear(Matrix{{1.0, 1.0}, {1.0, 1.0}}, {1.0, 2.0}),
                  SingularMatrix);
  CHECK_THROWS_AS(solve_linear(Matrix(3, 3, 0.0), {1.0, 2.0, 3.0}),
                  SingularMatrix);
}

TEST_CASE("solve_linear residual contract on random well-conditioned systems") {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 20;
    Matrix a = random_matrix(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
      a(i, i) += 1.0 + row;
    }
    Vector b(n);
    for (double& v : b) v = 10.0 * rng.uniform_sym();

    const Vector x = solve_linear(a, b);
    const Vector ax = a * x;
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(ax[i] - b[i]));
    CHECK(res <= 1e-10 * std::max(1.0, norm_inf(b)));
  }
}

TEST_CASE("comparison matrix") {
  const Matrix a{{1.0, 0.75, 0.0}, {0.75, 1.0, 0.0}, {0.0, 0.75, 1.0}};
  const Matrix expect{{1.0, -0.75, 0.0}, {-0.75, 1.0, 0.0}, {0.0, -0.75, 1.0}};
  CHECK(comparison_matrix(a) == expect);
  CHECK(comparison_matrix(Matrix::identity(4)) == Matrix::identity(4));
  CHECK(comparison_matrix(Matrix{{-2.0, 1.0}, {1.0, -2.0}}) ==
        Matrix{{2.0, -1.0}, {-1.0, 2.0}});

  RngStream rng(13, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix m = random_matrix(3, rng);
    const Matrix c = comparison_matrix(m);
    CHECK(comparison_matrix(c) == c);
  }
}

TEST_CASE("elementwise max") {
  const Matrix a{{0.0, 2.0 / 3.0}, {0.8, 0.0}};
  const Matrix b{{0.0, 1.0}, {0.5, 0.0}};
  CHECK(elementwise_max({a, b}) == Matrix{{0.0, 1.0}, {0.8, 0.0}});
  CHECK(elementwise_max({a}) == a);
  CHECK(elementwise_max({b, b}) == b);
  CHECK_THROWS_AS(elementwise_max({a, Matrix::identity(3)}), ShapeMismatch);
  CHECK_THROWS_AS(elementwise_max({}), ShapeMismatch);
}

TEST_CASE("spectral radius of nonnegative matrices") {
  // rho([[0,1],[0.8,0]]) = sqrt(0.8)
  const SpectralRadius rho = spectral_radius_nonneg(Matrix{{0.0, 1.0}, {0.8, 0.0}});
  CHECK(rho.value == doctest::Approx(std::sqrt(0.8)).epsilon(1e-7));
  CHECK(rho.value == doctest::Approx(0.8944).epsilon(1e-4));
  CHECK(rho.lower <= rho.value + 1e-12);
  CHECK(rho.value <= rho.upper + 1e-12);

  CHECK(spectral_radius_nonneg(Matrix(3, 3, 0.0)).value == 0.0);

  const SpectralRadius one = spectral_radius_nonneg(
      Matrix{{0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}});
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-10));

  // Nilpotent pattern: the shift still drives the estimate to zero.
  const SpectralRadius nil =
      spectral_radius_nonneg(Matrix{{0.0, 0.0}, {1.5, 0.0}});
  CHECK(nil.value <= 1e-6);

  CHECK_THROWS_AS(spectral_radius_nonneg(Matrix{{0.0, -1.0}, {0.0, 0.0}}),
                  NotNonnegative);
}

TEST_CASE("spectral radius stays within Perron-Frobenius row-sum bracket") {
  RngStream rng(17, 0);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 6;
    Matrix w(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w(i, j) = rng.uniform01();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += w(i, j);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    const double rho = spectral_radius_nonneg(w).value;
    CHECK(rho >= lo - 1e-7);
    CHECK(rho <= hi + 1e-7);
  }
}

TEST_CASE("lu determinant and sign") {
  LuFactorization lu(Matrix{{3.0, -2.0}, {-4.0, 5.0}});
  CHECK(lu.det() == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(lu.det_sign() == 1);

  LuFactorization singular(Matrix{{1.0, 1.0}, {1.0, 1.0}});
  CHECK(singular.singular());
  CHECK(singular.det() == 0.0);
  CHECK(singular.det_sign() == 0);
}
