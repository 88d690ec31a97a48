#include <doctest.h>

#include <cmath>

#include "fairdpp/linalg.hpp"
#include "test_helpers.hpp"

using namespace fairdpp;
using testhelp::fromRows;
using testhelp::randomMatrix;
using testhelp::rowsOf;

TEST_SUITE_BEGIN("linalg");

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("projectOrthogonal basics") {
  const Vector r1 = projectOrthogonal(vec2(1, 1), vec2(1, 0));
  CHECK(r1(0) == doctest::Approx(0.0));
  CHECK(r1(1) == doctest::Approx(1.0));

  const Vector r2 = projectOrthogonal(vec2(3, 4), vec2(3, 4));
  CHECK(r2.norm() == doctest::Approx(0.0));

  const Vector r3 = projectOrthogonal(vec2(2, 3), vec2(2, 0));
  CHECK(r3(0) == doctest::Approx(0.0));
  CHECK(r3(1) == doctest::Approx(3.0));

  CHECK_THROWS_AS(projectOrthogonal(vec2(1, 1), vec2(0, 0)), std::domain_error);
}

TEST_CASE("projectOrthogonal result is orthogonal to the direction") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = randomMatrix(2, 7, seed);
    const Vector w = a.row(0).transpose(), v = a.row(1).transpose();
    const Vector r = projectOrthogonal(w, v);
    CHECK(std::fabs(r.dot(v)) <= 1e-10 * (1.0 + r.norm() * v.norm()));
  }
}

TEST_CASE("logVolumeDet hand values") {
  CHECK(logVolumeDet({vec2(2, 0), vec2(0, 2)}).logMagnitude == doctest::Approx(std::log(16.0)));
  CHECK(logVolumeDet({vec2(1, 0), vec2(2, 0)}).isZero());
  CHECK(logVolumeDet({vec2(2, 0), vec2(2, 3)}).logMagnitude == doctest::Approx(std::log(36.0)));
}

TEST_CASE("gramLogDet hand values") {
  CHECK(gramLogDet({vec2(2, 0), vec2(0, 2)}).logMagnitude == doctest::Approx(std::log(16.0)));
  CHECK(gramLogDet({vec2(3, 4)}).logMagnitude == doctest::Approx(std::log(25.0)));
}

TEST_CASE("the two determinant routes agree on random full-rank input") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix a = randomMatrix(4, 6, seed + 100);
    const LogValue lv = logVolumeDet(rowsOf(a));
    const LogValue gd = gramLogDet(rowsOf(a));
    REQUIRE(lv.sign == 1);
    REQUIRE(gd.sign == 1);
    CHECK(lv.logMagnitude ==
          doctest::Approx(gd.logMagnitude).epsilon(1e-8));
  }
}

TEST_CASE("both routes flag constructed rank deficiency") {
  Matrix a = randomMatrix(3, 5, 7);
  Matrix dep(4, 5);
  dep.topRows(3) = a;
  dep.row(3) = 2.0 * a.row(0) - 0.5 * a.row(2);
  CHECK(logVolumeDet(rowsOf(dep)).isZero());
  CHECK(gramLogDet(rowsOf(dep)).isZero());

  // More rows than columns is always dependent.
  CHECK(logVolumeDet(rowsOf(randomMatrix(6, 4, 9))).isZero());
}

TEST_CASE("logVolumeDet is invariant under row permutation") {
  const Matrix a = randomMatrix(5, 8, 21);
  auto rows = rowsOf(a);
  const double base = logVolumeDet(rows).logMagnitude;
  std::mt19937 shuffler(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(rows.begin(), rows.end(), shuffler);
    CHECK(logVolumeDet(rows).logMagnitude == doctest::Approx(base).epsilon(1e-8));
  }
}

TEST_CASE("singularValues matches hand spectra") {
  Matrix eye(2, 2);
  eye.setIdentity();
  const Spectrum sid = singularValues(eye);
  CHECK(sid[0] == doctest::Approx(1.0));
  CHECK(sid[1] == doctest::Approx(1.0));

  const Matrix full = fromRows({{2, 0}, {2, 3}, {0, 2}, {3, 2}});
  const Spectrum sf = singularValues(full);
  CHECK(sf[0] == doctest::Approx(5.385).epsilon(0.01));
  CHECK(sf[1] == doctest::Approx(2.236).epsilon(0.01));

  const Matrix part = fromRows({{2, 0}, {2, 3}});
  const Spectrum sp = singularValues(part);
  CHECK(sp[0] == doctest::Approx(3.81).epsilon(0.01));
  CHECK(sp[1] == doctest::Approx(1.57).epsilon(0.01));
}

TEST_CASE("spectra are non-increasing and non-negative") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Spectrum s = singularValues(randomMatrix(6, 4, seed + 40));
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i] >= 0.0);
      if (i > 0) CHECK(s[i] <= s[i - 1] + 1e-15);
    }
  }
}

TEST_CASE("elementarySymmetric hand values and enumeration oracle") {
  CHECK(elementarySymmetric({1, 1, 1}, 2).value() == doctest::Approx(3.0));
  CHECK(elementarySymmetric({4, 9}, 2).value() == doctest::Approx(36.0));
  CHECK(elementarySymmetric({4, 9}, 0).value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(elementarySymmetric({1, 2}, 3), std::domain_error);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    fairdpp::Rng rng(seed + 900);
    std::vector<double> values(5);
    for (double& v : values) v = 10.0 * rng.uniform01();
    for (int k = 0; k <= 5; ++k) {
      const double expected = testhelp::bruteForceElementarySymmetric(values, k);
      CHECK(elementarySymmetric(values, k).value() == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("elementarySymmetric stays finite at large scale") {
  std::vector<double> values(1000);
  fairdpp::Rng rng(17);
  for (double& v : values) v = 0.5 + rng.uniform01();
  const LogValue e = elementarySymmetric(values, 500);
  CHECK(e.sign == 1);
  CHECK(std::isfinite(e.logMagnitude));
  CHECK(e.logMagnitude > 100.0);  // astronomically many terms
}

TEST_CASE("characteristic-coefficient identity on random matrices") {
  // e_k of the squared singular values equals the sum of det(V_S V_S^T)
  // over all k-subsets of rows.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int m = 4 + static_cast<int>(seed % 5);  // 4..8
    const Matrix a = randomMatrix(m, 6, seed + 300);
    const auto sq = singularValues(a).squared();
    for (int k = 0; k <= std::min(m, 6); ++k) {
      const double oracle = testhelp::sumDetOverKSubsets(a, k);
      const double viaSpectrum = elementarySymmetric(sq, k).value();
      CHECK(viaSpectrum == doctest::Approx(oracle).epsilon(1e-6));
    }
  }
}

TEST_CASE("scaleTailSingularValues") {
  const Matrix a = randomMatrix(5, 4, 55);
  SUBCASE("factor one is the identity") {
    const Matrix b = scaleTailSingularValues(a, 2, 1.0);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("diagonal case") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 3;
    d(1, 1) = 2;
    d(2, 2) = 1;
    const Spectrum s = singularValues(scaleTailSingularValues(d, 1, 0.5));
    CHECK(s[0] == doctest::Approx(3.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == doctest::Approx(0.5));
  }
  SUBCASE("random case matches the predicted spectrum") {
    const Matrix b = scaleTailSingularValues(randomMatrix(6, 4, 77), 2, 0.1);
    const Spectrum orig = singularValues(randomMatrix(6, 4, 77));
    const Spectrum got = singularValues(b);
    for (int j = 0; j < 4; ++j) {
      const double expect = j < 2 ? orig[j] : 0.1 * orig[j];
      CHECK(got[j] == doctest::Approx(expect).epsilon(1e-8));
    }
  }
  SUBCASE("keep at full rank returns the input unchanged") {
    const Matrix b = scaleTailSingularValues(a, 4, 0.0);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("rank-k truncation leaves exactly the tail energy") {
  // Frobenius distance of A to its best rank-k approximation equals the
  // sum of squared tail singular values.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Matrix a = randomMatrix(7, 5, seed + 500);
    const auto sq = singularValues(a).squared();
    for (int k = 0; k <= 5; ++k) {
      const Matrix trunc = scaleTailSingularValues(a, k, 0.0);
      double tail = 0.0;
      for (std::size_t j = k; j < sq.size(); ++j) tail += sq[j];
      const double dist = (a - trunc).squaredNorm();
      CHECK(dist == doctest::Approx(tail).epsilon(1e-8));
    }
  }
}

TEST_SUITE_END();
