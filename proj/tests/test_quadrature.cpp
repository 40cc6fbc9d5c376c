#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "metawave/quadrature.hpp"

using namespace metawave;

namespace {

// Exact reference-triangle integral of x^a y^b.
double monomial_integral(int a, int b) {
  // a! b! / (a + b + 2)!
  double val = 1.0;
  for (int i = 1; i <= a; ++i) val *= i;
  for (int i = 1; i <= b; ++i) val *= i;
  for (int i = 1; i <= a + b + 2; ++i) val /= i;
  return val;
}

}  // namespace

TEST_CASE("triangle rule integrates monomials exactly up to its degree") {
  for (int degree = 0; degree <= 12; ++degree) {
    const QuadratureRule rule = triangle_rule(degree);
    REQUIRE(rule.degree >= degree);
    for (int a = 0; a + 0 <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double sum = 0.0;
        for (int g = 0; g < rule.size(); ++g)
          sum += rule.weights[g] * std::pow(rule.points[g].x(), a) *
                 std::pow(rule.points[g].y(), b);
        const double exact = monomial_integral(a, b);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("triangle rule weights are positive and sum to the area") {
  for (int degree : {1, 2, 3, 5, 8, 12}) {
    const QuadratureRule rule = triangle_rule(degree);
    double sum = 0.0;
    for (int g = 0; g < rule.size(); ++g) {
      CHECK(rule.weights[g] > 0.0);
      sum += rule.weights[g];
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("triangle rule points lie inside the reference triangle") {
  for (int degree : {1, 4, 8, 12}) {
    const QuadratureRule rule = triangle_rule(degree);
    for (const Vec2& p : rule.points) {
      CHECK(p.x() >= -1e-14);
      CHECK(p.y() >= -1e-14);
      CHECK(p.x() + p.y() <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("triangle rule is symmetric under coordinate swap") {
  const QuadratureRule rule = triangle_rule(8);
  auto key = [](const Vec2& p) {
    return std::make_pair(std::llround(p.x() * 1e10), std::llround(p.y() * 1e10));
  };
  std::map<std::pair<long long, long long>, double> table;
  for (int g = 0; g < rule.size(); ++g) table[key(rule.points[g])] = rule.weights[g];
  for (int g = 0; g < rule.size(); ++g) {
    const auto it = table.find(key(Vec2(rule.points[g].y(), rule.points[g].x())));
    REQUIRE(it != table.end());
    CHECK(it->second == doctest::Approx(rule.weights[g]).epsilon(1e-12));
  }
}

TEST_CASE("degree <= 1 collapses to the centroid rule") {
  for (int degree : {0, 1}) {
    const QuadratureRule rule = triangle_rule(degree);
    REQUIRE(rule.size() == 1);
    CHECK(rule.points[0].x() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(rule.points[0].y() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("edge rule is Gauss-Legendre on [0,1]") {
  for (int n = 1; n <= 10; ++n) {
    const EdgeRule rule = edge_rule(n);
    REQUIRE(rule.size() == n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int g = 0; g < n; ++g)
        sum += rule.weights[g] * std::pow(rule.points[g], k);
      CHECK(sum == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    // One degree past exactness must generically fail (sanity of the bound).
    if (n <= 3) {
      double sum = 0.0;
      for (int g = 0; g < n; ++g)
        sum += rule.weights[g] * std::pow(rule.points[g], 2 * n);
      CHECK(std::abs(sum - 1.0 / (2 * n + 1)) > 1e-8);
    }
  }
}

TEST_CASE("shifted Legendre polynomials are orthogonal on [0,1]") {
  const EdgeRule rule = edge_rule(12);
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      double sum = 0.0;
      for (int g = 0; g < rule.size(); ++g)
        sum += rule.weights[g] * legendre01(a, rule.points[g]) *
               legendre01(b, rule.points[g]);
      const double exact = (a == b) ? 1.0 / (2 * a + 1) : 0.0;
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("shifted Legendre reflection parity") {
  for (int m = 0; m <= 6; ++m) {
    for (double t : {0.12, 0.37, 0.5, 0.81}) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      CHECK(legendre01(m, 1.0 - t) ==
            doctest::Approx(sign * legendre01(m, t)).epsilon(1e-13));
    }
  }
  CHECK(legendre01(0, 0.3) == doctest::Approx(1.0));
  CHECK(legendre01(1, 0.75) == doctest::Approx(0.5));  // 2t - 1
}
