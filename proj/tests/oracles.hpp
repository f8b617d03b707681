#pragma once

// Test-only oracles. Everything here is independent of the library's
// evaluation paths: exact rational arithmetic for coupling coefficients,
// plain finite differences for derivatives, and a self-contained
// Gauss-Hermite rule for Gaussian-weighted integrals.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

struct ExactThreeJ {
  Rational squared;  // |3j|^2, exact
  int sign;          // -1, 0, +1
};

// Racah single-sum formula evaluated in exact rational arithmetic.
inline ExactThreeJ wigner3j_exact(int l1, int l2, int l3, int m1, int m2, int m3) {
  ExactThreeJ out{Rational(0), 0};
  if (m1 + m2 + m3 != 0) return out;
  if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return out;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return out;

  Rational delta = Rational(factorial(l1 + l2 - l3) * factorial(l1 - l2 + l3) *
                                factorial(-l1 + l2 + l3),
                            factorial(l1 + l2 + l3 + 1));
  BigInt mfac = factorial(l1 + m1) * factorial(l1 - m1) * factorial(l2 + m2) *
                factorial(l2 - m2) * factorial(l3 + m3) * factorial(l3 - m3);

  int zmin = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
  int zmax = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
  Rational s = 0;
  for (int z = zmin; z <= zmax; ++z) {
    Rational term(BigInt((z % 2 == 0) ? 1 : -1),
                  factorial(z) * factorial(l1 + l2 - l3 - z) * factorial(l1 - m1 - z) *
                      factorial(l2 + m2 - z) * factorial(l3 - l2 + m1 + z) *
                      factorial(l3 - l1 - m2 + z));
    s += term;
  }
  if (s == 0) return out;
  out.squared = delta * Rational(mfac) * s * s;
  int phase = ((l1 - l2 - m3) % 2 != 0) ? -1 : 1;
  out.sign = phase * (s > 0 ? 1 : -1);
  return out;
}

inline double wigner3j_oracle(int l1, int l2, int l3, int m1, int m2, int m3) {
  auto e = wigner3j_exact(l1, l2, l3, m1, m2, m3);
  return e.sign * std::sqrt(static_cast<double>(e.squared));
}

// --- finite differences ----------------------------------------------------

// Fourth-order central stencils for the second and fourth derivative.
inline double fd_second(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
         (12 * h * h);
}

inline double fd_fourth(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 3 * h) / 6 + 2 * f(x - 2 * h) - 13 * f(x - h) / 2 + 28 * f(x) / 3 -
          13 * f(x + h) / 2 + 2 * f(x + 2 * h) - f(x + 3 * h) / 6) /
         (h * h * h * h);
}

// --- Gauss-Hermite ----------------------------------------------------------

// Nodes/weights so that sum w_i f(u_i) = int f(u) phi(u) du exactly for
// polynomials of degree <= 2n - 1 (phi the standard normal density).
inline void gauss_hermite_prob(int n, std::vector<double>& u, std::vector<double>& w) {
  u.assign(n, 0.0);
  w.assign(n, 0.0);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  int m = (n + 1) / 2;
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * u[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * u[1];
    else
      z = 2.0 * z - u[i - 2];
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    u[i] = z;  // physicists' node, descending
    u[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  // map to the probabilists' weight
  const double inv_sqrt_pi = 0.5641895835477563;
  for (int i = 0; i < n; ++i) {
    u[i] *= std::sqrt(2.0);
    w[i] *= inv_sqrt_pi;
  }
}

}  // namespace oracle
