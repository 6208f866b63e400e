#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "banded.hpp"
#include "errors.hpp"

using namespace gardner;

TEST_CASE("band storage") {
  BandedMatrix a(6, 2, 1);
  CHECK(a.in_band(3, 1));
  CHECK(a.in_band(3, 4));
  CHECK(!a.in_band(3, 0));
  CHECK(!a.in_band(3, 5));
  a.at(3, 1) = 2.5;
  CHECK(a.get(3, 1) == 2.5);
  CHECK(a.get(0, 5) == 0.0);
  CHECK_THROWS_AS(a.at(0, 3), DomainError);
}

TEST_CASE("banded LU matches a dense solve") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {7u, 20u, 64u}) {
    BandedMatrix a(n, 3, 3);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = (i > 3 ? i - 3 : 0); j <= std::min(n - 1, i + 3); ++j) a.at(i, j) = u(rng);
      a.at(i, i) += 8.0;  // diagonally dominant: no pivoting needed
    }
    std::vector<double> b(n);
    for (auto& v : b) v = u(rng);
    const auto dense = a.to_dense();
    const auto ref = dense_solve(dense, b);

    BandedMatrix lu = a;
    PivotFailure f;
    REQUIRE(banded_lu_factor(lu, f));
    auto x = b;
    banded_lu_solve(lu, x);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    const auto r = a.multiply(x);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r[i] - b[i]) < 1e-12);
  }
}

TEST_CASE("zero pivot is reported with its row") {
  BandedMatrix a(4, 1, 1);
  a.at(0, 0) = 1.0;
  a.at(0, 1) = 1.0;
  a.at(1, 0) = 1.0;
  a.at(1, 1) = 1.0;  // eliminates to zero
  a.at(1, 2) = 1.0;
  a.at(2, 2) = 1.0;
  a.at(3, 3) = 1.0;
  PivotFailure f;
  CHECK(!banded_lu_factor(a, f));
  CHECK(f.row == 1);
}

TEST_CASE("dense solve pivots and detects singularity") {
  const std::vector<double> a{0.0, 1.0, 1.0, 0.0};
  const auto x = dense_solve(a, {2.0, 3.0});
  CHECK(x[0] == 3.0);
  CHECK(x[1] == 2.0);
  CHECK_THROWS_AS(dense_solve({1.0, 2.0, 2.0, 4.0}, {1.0, 1.0}), DomainError);
}
