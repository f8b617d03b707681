#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sphlkc/specfun.hpp"

using namespace sphlkc;

TEST_CASE("legendre endpoint values") {
  CHECK(legendre_p(5, 1.0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(legendre_p(3, 1.0, 1) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(legendre_p(2, 1.0, 2) == doctest::Approx(3.0).epsilon(1e-15));
  // parity at the south endpoint
  CHECK(legendre_p(4, -1.0, 0) == doctest::Approx(1.0));
  CHECK(legendre_p(4, -1.0, 1) == doctest::Approx(-10.0));
  CHECK(legendre_p(3, -1.0, 1) == doctest::Approx(6.0));
}

TEST_CASE("legendre domain errors") {
  CHECK_THROWS_AS(legendre_p(-1, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS(legendre_p(3, 1.5, 0), std::domain_error);
  CHECK_THROWS_AS(legendre_p(3, 0.5, 3), std::domain_error);
}

TEST_CASE("legendre bounded and normalized on a grid") {
  double worst_bound = 0.0, worst_norm = 0.0;
  for (int ell = 0; ell <= 200; ++ell) {
    worst_norm = std::max(worst_norm, std::abs(legendre_p(ell, 1.0) - 1.0));
    for (int i = 0; i <= 1000; ++i) {
      double x = -1.0 + 2.0 * i / 1000.0;
      double p = legendre_p(ell, x);
      REQUIRE(std::isfinite(p));
      worst_bound = std::max(worst_bound, std::abs(p));
    }
  }
  CHECK(worst_norm < 1e-12);
  CHECK(worst_bound <= 1.0 + 1e-12);
}

TEST_CASE("legendre derivatives match finite differences") {
  const double h = 1e-4;
  for (int ell : {2, 3, 7, 15, 40}) {
    for (double x : {-0.83, -0.31, 0.02, 0.47, 0.9}) {
      auto f = [&](double t) { return legendre_p(ell, t, 0); };
      double d1 = oracle::fd_second(f, x, h);  // reuse: central 2nd derivative
      double first = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
      CHECK(legendre_p(ell, x, 1) == doctest::Approx(first).epsilon(1e-6));
      CHECK(legendre_p(ell, x, 2) == doctest::Approx(d1).epsilon(1e-6));
    }
  }
}

// Endpoint identities for the colatitude derivatives of P_ell(<x0, x>) along
// a meridian: at coincidence the second derivative is -P'(1) and the fourth
// is 3 P''(1) + P'(1) (chain rule of P_ell(cos d) at d = 0).
TEST_CASE("meridian derivative endpoint identities") {
  for (int ell : {2, 5, 10}) {
    auto g = [&](double d) { return legendre_p(ell, std::cos(d), 0); };
    double h = 0.02;
    double d2 = oracle::fd_second(g, 0.0, h);
    double d4 = oracle::fd_fourth(g, 0.0, h);
    double p1 = legendre_p(ell, 1.0, 1);
    double p2 = legendre_p(ell, 1.0, 2);
    CHECK(d2 == doctest::Approx(-p1).epsilon(1e-4));
    CHECK(d4 == doctest::Approx(3.0 * p2 + p1).epsilon(1e-4));
  }
}

TEST_CASE("hermite values") {
  CHECK(hermite(2, 0.0) == doctest::Approx(-1.0));
  CHECK(hermite(0, 7.3) == doctest::Approx(1.0));
  CHECK(hermite(-1, 0.0) == doctest::Approx(0.5));
  CHECK(hermite(3, 2.0) == doctest::Approx(2.0));  // u^3 - 3u at 2
  CHECK_THROWS_AS(hermite(-2, 0.0), std::domain_error);
}

TEST_CASE("hermite orthogonality under the Gaussian weight") {
  std::vector<double> u, w;
  oracle::gauss_hermite_prob(20, u, w);
  for (int p = 0; p <= 6; ++p) {
    for (int q = 0; q <= 6; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i)
        s += w[i] * hermite(p, u[i]) * hermite(q, u[i]);
      double expected = 0.0;
      if (p == q) {
        expected = 1.0;
        for (int k = 2; k <= q; ++k) expected *= k;
      }
      CHECK(s == doctest::Approx(expected).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("gaussian density and tail") {
  auto g0 = gaussian_tail(0.0);
  CHECK(g0.pdf == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(g0.tail == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gaussian_tail(40.0).tail < 1e-300);
  auto gp = gaussian_tail(1.7), gm = gaussian_tail(-1.7);
  CHECK(gp.tail + gm.tail == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gaussian Minkowski functionals") {
  CHECK(gaussian_minkowski(0, 0.0) == doctest::Approx(0.5));
  CHECK(gaussian_minkowski(1, 0.0) == doctest::Approx(0.3989422804014327));
  CHECK(gaussian_minkowski(2, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(gaussian_minkowski(-1, 0.0), std::domain_error);
}

TEST_CASE("EC densities") {
  CHECK(ec_density(0, 1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
  CHECK(ec_density(1, 0.0) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
  CHECK(ec_density(2, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("flag coefficients") {
  CHECK(flag_coeff(1, 1) == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
  CHECK(flag_coeff(2, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(flag_coeff(0, 2) == doctest::Approx(1.0).epsilon(1e-13));
}
