#include <doctest.h>

#include <cmath>
#include <complex>

#include "sphlkc/grid.hpp"
#include "sphlkc/sht.hpp"
#include "sphlkc/simsphere.hpp"
#include "sphlkc/specfun.hpp"

using namespace sphlkc;

namespace {
constexpr double kFourPi = 12.566370614359172;
}

TEST_CASE("grid weights integrate the sphere") {
  for (auto [nt, np] : {std::pair{8, 17}, std::pair{33, 67}, std::pair{96, 193}}) {
    auto g = make_grid(nt, np);
    double s = 0.0;
    for (int r = 0; r < g->n_theta(); ++r) s += g->node_weight(r) * g->n_phi();
    CHECK(s == doctest::Approx(kFourPi).epsilon(1e-13));
  }
  CHECK_THROWS_AS(make_grid(1, 8), std::invalid_argument);
}

TEST_CASE("zonal polynomials integrate to zero") {
  auto g = make_grid(12, 25);
  for (int ell = 1; ell <= 2 * 12 - 1; ++ell) {
    double s = 0.0;
    for (int r = 0; r < g->n_theta(); ++r)
      s += g->node_weight(r) * g->n_phi() * legendre_p(ell, g->cos_theta(r));
    CHECK(s == doctest::Approx(0.0).epsilon(1e-12).scale(kFourPi));
  }
}

TEST_CASE("synthesis of elementary coefficients") {
  auto g = make_grid(8, 17);
  HarmonicCoefficients a(2);
  a.ref(0, 0) = {std::sqrt(kFourPi), 0.0};
  auto constant = synthesize(a, g);
  for (double v : constant.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

  HarmonicCoefficients d(2);
  d.ref(1, 0) = {1.0, 0.0};
  auto dipole = synthesize(d, g);
  for (int r = 0; r < g->n_theta(); ++r) {
    double want = std::sqrt(3.0 / kFourPi) * g->cos_theta(r);
    for (int k = 0; k < g->n_phi(); ++k)
      CHECK(dipole.at(r, k) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("analysis of the constant field") {
  auto g = make_grid(8, 17);
  PixelField one = make_field(g);
  for (double& v : one.values) v = 1.0;
  auto alm = analyze(one, 4);
  CHECK(alm.ref(0, 0).real() == doctest::Approx(std::sqrt(kFourPi)).epsilon(1e-13));
  for (int ell = 1; ell <= 4; ++ell)
    for (int m = 0; m <= ell; ++m) {
      CHECK(std::abs(alm.ref(ell, m).real()) < 1e-12);
      CHECK(std::abs(alm.ref(ell, m).imag()) < 1e-12);
    }
}

TEST_CASE("round trip at full band") {
  for (int ellmax : {32, 64}) {
    auto g = make_grid(ellmax + 1, 2 * ellmax + 1);
    auto spec = PowerSpectrum::sachs_wolfe(1.0, 2.0, ellmax);
    auto alm = sample_alm(spec, ellmax, 99);
    auto field = synthesize(alm, g);
    auto back = analyze(field, ellmax);
    double worst = 0.0;
    for (int ell = 0; ell <= ellmax; ++ell)
      for (int m = 0; m <= ell; ++m)
        worst = std::max(worst, std::abs(back.ref(ell, m) - alm.ref(ell, m)));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Parseval on the grid") {
  const int ellmax = 16;
  auto g = make_grid(ellmax + 1, 2 * ellmax + 1);
  auto spec = PowerSpectrum::bardeen(ellmax);
  auto alm = sample_alm(spec, ellmax, 5);
  auto field = synthesize(alm, g);
  double quad = 0.0;
  for (int r = 0; r < g->n_theta(); ++r)
    for (int k = 0; k < g->n_phi(); ++k)
      quad += g->node_weight(r) * field.at(r, k) * field.at(r, k);
  CHECK(quad == doctest::Approx(alm.power()).epsilon(1e-10));
}

TEST_CASE("under-resolved grids are rejected") {
  auto g = make_grid(8, 17);
  PixelField f = make_field(g);
  CHECK_THROWS_AS(analyze(f, 9), std::invalid_argument);
  HarmonicCoefficients a(20);
  CHECK_THROWS_AS(synthesize(a, g), std::invalid_argument);
}

TEST_CASE("harmonic filter") {
  const int ellmax = 12;
  auto spec = PowerSpectrum::bardeen(ellmax);
  auto alm = sample_alm(spec, ellmax, 3);
  auto same = harmonic_filter(alm, [](int) { return 1.0; });
  CHECK(same == alm);

  NeedletWindow w(2.0, 1);  // support (1, 4)
  auto filtered = harmonic_filter(alm, [&](int ell) { return w.multiplier(ell); });
  for (int ell = 0; ell <= ellmax; ++ell)
    for (int m = 0; m <= ell; ++m) {
      if (ell <= 1 || ell >= 4) {
        CHECK(std::abs(filtered.ref(ell, m)) == doctest::Approx(0.0));
      }
    }
}

TEST_CASE("pointwise hermite") {
  auto g = make_grid(6, 13);
  PixelField f = make_field(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = 0.1 * i;
  auto h1 = pointwise_hermite(f, 1, 2.0);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(h1.values[i] == doctest::Approx(f.values[i] / 2.0));

  PixelField c = make_field(g);
  for (double& v : c.values) v = 1.4;
  auto h3 = pointwise_hermite(c, 3, 0.7);
  double x = 1.4 / 0.7;
  for (double v : h3.values) CHECK(v == doctest::Approx(x * x * x - 3.0 * x));

  CHECK_THROWS_AS(pointwise_hermite(f, 2, 0.0), std::domain_error);
  CHECK_THROWS_AS(pointwise_hermite(f, 0, 1.0), std::domain_error);
}

TEST_CASE("hermite power doubles the band limit exactly") {
  const int ellmax = 8, q = 2;
  auto g = make_grid(2 * ellmax + 2, 4 * ellmax + 3);
  auto spec = PowerSpectrum::sachs_wolfe(1.0, 2.0, ellmax);
  auto alm = sample_alm(spec, ellmax, 11);
  auto field = synthesize(alm, g);
  auto h = pointwise_hermite(field, q, 1.0);
  auto ah = analyze(h, q * ellmax);
  auto back = synthesize(ah, g);
  for (std::size_t i = 0; i < h.values.size(); ++i)
    CHECK(back.values[i] == doctest::Approx(h.values[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("reality constraint in the coefficient accessor") {
  HarmonicCoefficients a(3);
  a.ref(2, 1) = {0.3, -0.7};
  auto neg = a.at(2, -1);
  CHECK(neg.real() == doctest::Approx(-0.3));
  CHECK(neg.imag() == doctest::Approx(-0.7));
  auto pos = a.at(2, 1);
  CHECK(pos == std::complex<double>{0.3, -0.7});
}
