#include "sphlkc/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace sphlkc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2 pi)

// P'_ell(1) = ell(ell+1)/2, P''_ell(1) = (ell-1)ell(ell+1)(ell+2)/8,
// with parity flips at x = -1.
double deriv1_at_one(int ell, double x) {
  double v = 0.5 * ell * (ell + 1);
  if (x < 0.0 && ell % 2 == 0) v = -v;
  return v;
}

double deriv2_at_one(int ell, double x) {
  double v = (ell - 1.0) * ell * (ell + 1.0) * (ell + 2.0) / 8.0;
  if (x < 0.0 && ell % 2 != 0) v = -v;
  return v;
}

}  // namespace

double legendre_p(int ell, double x, int deriv) {
  if (ell < 0) throw std::domain_error("legendre_p: ell must be >= 0");
  if (std::abs(x) > 1.0) throw std::domain_error("legendre_p: |x| must be <= 1");
  if (deriv < 0 || deriv > 2) throw std::domain_error("legendre_p: deriv in {0,1,2}");

  if (deriv == 0) {
    if (ell == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= ell; ++k) {
      double pn = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
      pm1 = p;
      p = pn;
    }
    return p;
  }

  if (ell == 0) return 0.0;
  if (deriv == 2 && ell == 1) return 0.0;

  // The ratio forms below have a 1 - x^2 denominator; endpoints are exact
  // closed forms instead.
  if (x == 1.0 || x == -1.0)
    return deriv == 1 ? deriv1_at_one(ell, x) : deriv2_at_one(ell, x);

  double pm1 = 1.0, p = x;
  for (int k = 2; k <= ell; ++k) {
    double pn = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
    pm1 = p;
    p = pn;
  }
  double omx2 = (1.0 - x) * (1.0 + x);
  double dp = ell * (pm1 - x * p) / omx2;
  if (deriv == 1) return dp;
  // Legendre ODE: (1 - x^2) P'' = 2 x P' - ell(ell+1) P.
  return (2.0 * x * dp - ell * (ell + 1.0) * p) / omx2;
}

double hermite(int q, double u) {
  if (q < -1) throw std::domain_error("hermite: q must be >= -1");
  if (q == -1) return gaussian_tail(u).tail;
  if (q == 0) return 1.0;
  double hm1 = 1.0, h = u;
  for (int k = 1; k < q; ++k) {
    double hn = u * h - k * hm1;
    hm1 = h;
    h = hn;
  }
  return h;
}

GaussianTail gaussian_tail(double u) {
  GaussianTail g;
  g.pdf = kInvSqrt2Pi * std::exp(-0.5 * u * u);
  g.tail = 0.5 * std::erfc(u / kSqrt2);
  return g;
}

double gaussian_minkowski(int j, double u) {
  if (j < 0) throw std::domain_error("gaussian_minkowski: j must be >= 0");
  auto g = gaussian_tail(u);
  if (j == 0) return g.tail;
  return hermite(j - 1, u) * g.pdf;
}

double ec_density(int ell, double u) {
  if (ell < 0) throw std::domain_error("ec_density: ell must be >= 0");
  constexpr double kTwoPi = 6.283185307179586;
  return std::pow(kTwoPi, -0.5 * ell) * gaussian_minkowski(ell, u);
}

double flag_coeff(int i, int ell) {
  if (i < 0 || ell < 0) throw std::domain_error("flag_coeff: indices must be >= 0");
  auto log_ball = [](int n) {
    return 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0);
  };
  double log_binom = std::lgamma(i + ell + 1.0) - std::lgamma(i + 1.0) -
                     std::lgamma(ell + 1.0);
  return std::exp(log_binom + log_ball(i + ell) - log_ball(i) - log_ball(ell));
}

}  // namespace sphlkc
