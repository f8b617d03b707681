#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "sphlkc/lkc.hpp"
#include "sphlkc/specfun.hpp"

using namespace sphlkc;

namespace {
constexpr double kFourPi = 12.566370614359172;
}

TEST_CASE("gaussian curvatures at the median level") {
  for (double lambda : {0.5, 3.0, 55.0}) {
    auto t = expected_lkc_gaussian(0.0, lambda);
    CHECK(t.l0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.l1 == doctest::Approx(M_PI * std::sqrt(lambda)).epsilon(1e-14));
    CHECK(t.l2 == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  }
}

TEST_CASE("gaussian curvature limits") {
  auto lo = expected_lkc_gaussian(-8.0, 20.0);
  CHECK(lo.l0 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(lo.l2 == doctest::Approx(kFourPi).epsilon(1e-6));
  CHECK(lo.l1 < 1e-10);
  auto hi = expected_lkc_gaussian(9.0, 20.0);
  CHECK(std::abs(hi.l0) < 1e-12);
  CHECK(hi.l1 < 1e-12);
  CHECK(hi.l2 < 1e-12);
}

TEST_CASE("eigenfunction specialization") {
  // lambda = ell(ell+1)/2 reproduces the generic formulas
  const int ell = 10;
  const double u = 1.0;
  auto t = expected_lkc_eigen(u, ell);
  double lambda = 55.0;
  auto g = gaussian_tail(u);
  double expect_l0 =
      2.0 * g.tail + lambda * kFourPi * u * std::exp(-0.5) / std::pow(2.0 * M_PI, 1.5);
  CHECK(t.l0 == doctest::Approx(expect_l0).epsilon(1e-13));
  auto direct = expected_lkc_gaussian(u, lambda);
  CHECK(t.l0 == direct.l0);
  CHECK(t.l1 == direct.l1);
  CHECK(t.l2 == direct.l2);
  // nodal length at the zero level
  auto z = expected_lkc_eigen(0.0, 20);
  CHECK(z.boundary_length() ==
        doctest::Approx(2.0 * M_PI * std::sqrt(210.0)).epsilon(1e-13));
  CHECK(expected_lkc_eigen(0.0, 1).l0 == doctest::Approx(1.0));
  CHECK_THROWS_AS(expected_lkc_eigen(0.0, 0), std::domain_error);
}

TEST_CASE("squared-field curvatures") {
  const double lambda = 7.0;
  auto full = expected_lkc_h2(-1.0, lambda);
  CHECK(full.l0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(full.l2 == doctest::Approx(kFourPi).epsilon(1e-14));

  auto mid = expected_lkc_h2(0.0, lambda);
  double tail1 = gaussian_tail(1.0).tail;
  CHECK(mid.l2 == doctest::Approx(8.0 * M_PI * tail1).epsilon(1e-14));
  CHECK(mid.l2 == doctest::Approx(3.9874).epsilon(1e-4));
  CHECK(mid.boundary_length() ==
        doctest::Approx(kFourPi * std::sqrt(lambda) * std::exp(-0.5)).epsilon(1e-13));

  CHECK_THROWS_AS(expected_lkc_h2(-1.5, lambda), std::domain_error);
}

TEST_CASE("cubic-field curvatures") {
  const double lambda = 12.0;
  CHECK(expected_lkc_cubic(0.0, lambda).l2 == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  auto c1 = expected_lkc_cubic(1.0, lambda);
  auto g1 = expected_lkc_gaussian(1.0, lambda);
  CHECK(c1.l2 == doctest::Approx(g1.l2).epsilon(1e-15));
  auto cm8 = expected_lkc_cubic(-8.0, lambda);
  CHECK(cm8.l2 ==
        doctest::Approx(kFourPi * gaussian_tail(-2.0).tail).epsilon(1e-14));
  CHECK(cm8.boundary_length() ==
        doctest::Approx(2.0 * M_PI * std::sqrt(lambda) * std::exp(-2.0)).epsilon(1e-13));
}

TEST_CASE("excursion probability approximation") {
  // frozen from the formula 2(1 - Phi(3)) + 6 phi(3)
  CHECK(excursion_prob_approx(3.0, 1.0) ==
        doctest::Approx(0.029290886534885).epsilon(1e-9));
  CHECK(excursion_prob_approx(2.0, 1e-14) == doctest::Approx(0.0455).epsilon(1e-3));
  CHECK_THROWS_AS(excursion_prob_approx(1.0, 0.0), std::domain_error);
}

TEST_CASE("tail approximation is the expected Euler characteristic") {
  auto g = expected_lkc_gaussian(1.5, 12.0);
  CHECK(excursion_prob_approx(1.5, 12.0) == doctest::Approx(g.l0).epsilon(1e-12));
  for (int iu = 0; iu < 20; ++iu)
    for (int il = 0; il < 20; ++il) {
      double u = -4.0 + 8.0 * iu / 19.0;
      double lambda = 0.25 + 55.0 * il / 19.0;
      CHECK(excursion_prob_approx(u, lambda) ==
            doctest::Approx(expected_lkc_gaussian(u, lambda).l0)
                .epsilon(1e-12)
                .scale(1.0));
    }
}

TEST_CASE("monotone area and finite values") {
  double prev = kFourPi + 1.0;
  for (double u = -6.0; u <= 6.0; u += 0.25) {
    auto t = expected_lkc_gaussian(u, 8.0);
    CHECK(std::isfinite(t.l0));
    CHECK(t.l1 >= 0.0);
    CHECK(t.l2 < prev);
    CHECK(t.l2 >= 0.0);
    CHECK(t.l2 <= kFourPi);
    prev = t.l2;
  }
}
