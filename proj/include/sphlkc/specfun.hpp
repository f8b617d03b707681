#pragma once

namespace sphlkc {

/// Legendre polynomial P_ell(x) or its first/second derivative (deriv = 0,1,2).
/// Derivatives at |x| = 1 use the closed-form endpoint values; elsewhere
/// they come from the three-term recurrence and the Legendre ODE.
double legendre_p(int ell, double x, int deriv = 0);

/// Probabilists' Hermite polynomial H_q(u); H_{q+1} = u H_q - q H_{q-1}.
/// The extension q = -1 returns the Gaussian upper tail 1 - Phi(u).
double hermite(int q, double u);

struct GaussianTail {
  double pdf;   // phi(u)
  double tail;  // 1 - Phi(u), via erfc (no cancellation for large u)
};

GaussianTail gaussian_tail(double u);

/// Gaussian Minkowski functional of the half line [u, inf):
/// M_0 = 1 - Phi(u), M_j = H_{j-1}(u) phi(u) for j >= 1.
double gaussian_minkowski(int j, double u);

/// Euler characteristic density rho_ell(u) = (2 pi)^{-ell/2} M_ell([u, inf)).
double ec_density(int ell, double u);

/// Flag coefficient [i+ell; ell] = binom(i+ell, ell) w_{i+ell} / (w_i w_ell),
/// with w_i = pi^{i/2} / Gamma(i/2 + 1) the volume of the i-ball.
double flag_coeff(int i, int ell);

}
