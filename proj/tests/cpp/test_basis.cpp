#include <doctest.h>

#include <cmath>

#include "legcs/basis.hpp"
#include "legcs/quadrature.hpp"
#include "legcs/rng.hpp"

using namespace legcs;

TEST_CASE("legendre 1d known values") {
  CHECK(eval_legendre_1d(0, 0.37) == 1.0);
  CHECK(eval_legendre_1d(0, -1.0) == 1.0);
  CHECK(eval_legendre_1d(1, 0.5) == doctest::Approx(0.86602540378443865).epsilon(1e-14));
  // sup norm sqrt(2j+1) is attained at y = 1.
  CHECK(eval_legendre_1d(200, 1.0) == doctest::Approx(std::sqrt(401.0)).epsilon(1e-11));
  // degree-5 closed form scaled by sqrt(11), evaluated independently.
  CHECK(eval_legendre_1d(5, 0.3) == doctest::Approx(1.1455165989978877).epsilon(1e-14));
}

TEST_CASE("legendre domain handling") {
  CHECK_THROWS_AS(eval_legendre_1d(3, 1.0 + 1e-9), std::domain_error);
  // Inside the tolerance band the argument clamps to the endpoint.
  CHECK(eval_legendre_1d(4, 1.0 + 1e-13) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(eval_legendre_1d(-1, 0.0), std::invalid_argument);
}

TEST_CASE("legendre multivariate tensor product") {
  CHECK(eval_legendre_multi({0, 0}, {0.2, -0.7}) == 1.0);
  const double a = 0.3, b = -0.8;
  CHECK(eval_legendre_multi({1, 1}, {a, b}) == doctest::Approx(3.0 * a * b).epsilon(1e-14));
  // closed-form P2, P3 with orthonormal scaling, computed independently.
  CHECK(eval_legendre_multi({2, 3}, {0.1, -0.4}) ==
        doctest::Approx(-1.2624914257134581).epsilon(1e-14));
  CHECK_THROWS_AS(eval_legendre_multi({1, 2, 3}, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("tensor consistency against univariate factors") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const MultiIndex j = {int(rng.next_u64() % 30), int(rng.next_u64() % 30),
                          int(rng.next_u64() % 30)};
    const Point y = {rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym()};
    const double prod =
        eval_legendre_1d(j[0], y[0]) * eval_legendre_1d(j[1], y[1]) * eval_legendre_1d(j[2], y[2]);
    CHECK(eval_legendre_multi(j, y) == doctest::Approx(prod).epsilon(1e-14));
  }
}

TEST_CASE("envelope values and domain") {
  CHECK(envelope({0.0}) == doctest::Approx(1.1283791670955126).epsilon(1e-14));
  CHECK(envelope({0.0, 0.0}) == doctest::Approx(4.0 / M_PI).epsilon(1e-14));
  // independent high-precision evaluation at y = 0.99.
  CHECK(envelope({0.99}) == doctest::Approx(3.0042895711567604).epsilon(1e-13));
  CHECK_THROWS_AS(envelope({1.0}), std::domain_error);
  CHECK_THROWS_AS(envelope({0.3, -1.0}), std::domain_error);
}

TEST_CASE("envelope dominates and is sharp for degrees <= 2000") {
  // 4001-point grid on [-0.9999, 0.9999].
  const int npts = 4001;
  double max_ratio = 0.0;
  std::vector<double> vals;
  for (int i = 0; i < npts; ++i) {
    const double y = -0.9999 + 2.0 * 0.9999 * i / (npts - 1);
    const double om = envelope_1d(y);
    eval_legendre_all(2000, y, vals);
    for (int j = 0; j <= 2000; ++j) {
      const double r = std::abs(vals[j]) / om;
      max_ratio = std::max(max_ratio, r);
      if (r > 1.0) {
        REQUIRE(std::abs(vals[j]) <= om + 1e-9);
      }
    }
  }
  CHECK(max_ratio <= 1.0 + 1e-9);
  CHECK(max_ratio >= 0.95);  // the constant 2/sqrt(pi) cannot be improved
}

TEST_CASE("orthonormality under gauss-legendre quadrature") {
  const GaussRule rule = gauss_legendre(80);
  std::vector<double> vals;
  for (int j = 0; j <= 60; j += 12) {
    for (int k = j; k <= 60; k += 12) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        eval_legendre_all(60, rule.nodes[q], vals);
        acc += 0.5 * rule.weights[q] * vals[j] * vals[k];
      }
      CHECK(acc == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("uniform bound identity max |L_j| = sqrt(2j+1)") {
  for (int j : {1, 7, 40, 199}) {
    double mx = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double y = -1.0 + 2.0 * i / 2000.0;
      mx = std::max(mx, std::abs(eval_legendre_1d(j, y)));
    }
    CHECK(mx == doctest::Approx(std::sqrt(2.0 * j + 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("expansion evaluation matches brute-force summation") {
  const IndexSet J = make_total_degree_set(2, 4);
  Rng rng(5);
  Eigen::VectorXd z(J.size());
  for (int i = 0; i < z.size(); ++i) z[i] = rng.gaussian();
  const Point y = {0.31, -0.62};
  double brute = 0.0;
  for (int i = 0; i < J.size(); ++i) brute += z[i] * eval_legendre_multi(J.indices[i], y);
  CHECK(eval_expansion(z, J, y) == doctest::Approx(brute).epsilon(1e-13));

  SUBCASE("single constant term and zero vector") {
    const IndexSet J0 = make_window_set(0, 0);
    Eigen::VectorXd one(1);
    one << 1.0;
    CHECK(eval_expansion(one, J0, {0.77}) == 1.0);
    CHECK(eval_expansion(Eigen::VectorXd::Zero(J.size()), J, y) == 0.0);
  }
  SUBCASE("length mismatch throws") {
    CHECK_THROWS_AS(eval_expansion(Eigen::VectorXd::Zero(3), J, y), std::invalid_argument);
  }
}

TEST_CASE("window index sets") {
  const IndexSet a = make_window_set(1, 200);
  CHECK(a.size() == 200);
  CHECK(a.indices.front()[0] == 1);
  CHECK(a.indices.back()[0] == 200);
  CHECK(make_window_set(301, 500).size() == 200);
  const IndexSet s = make_window_set(5, 5);
  CHECK(s.size() == 1);
  CHECK(s.indices[0][0] == 5);
  CHECK_THROWS_AS(make_window_set(3, 2), std::invalid_argument);
}

TEST_CASE("total degree index sets") {
  const IndexSet a = make_total_degree_set(2, 1);
  REQUIRE(a.size() == 3);
  CHECK(a.indices[0] == MultiIndex{0, 0});
  CHECK(a.indices[1] == MultiIndex{0, 1});
  CHECK(a.indices[2] == MultiIndex{1, 0});
  CHECK(make_total_degree_set(1, 7).size() == 8);
  CHECK(make_total_degree_set(3, 4).size() == 35);
  CHECK_THROWS_AS(make_total_degree_set(6, 100, 1000), std::invalid_argument);
}
