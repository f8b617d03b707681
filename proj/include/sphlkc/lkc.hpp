#pragma once

namespace sphlkc {

/// Expected Lipschitz-Killing curvatures of an excursion set on the unit
/// sphere in the Euclidean metric: l0 the Euler-Poincare characteristic,
/// l1 half the boundary length, l2 the area in steradians.
struct LkcTriple {
  double l0 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;

  double boundary_length() const { return 2.0 * l1; }
};

/// Closed forms for a unit-variance isotropic Gaussian field with second
/// spectral moment lambda.
LkcTriple expected_lkc_gaussian(double u, double lambda);

/// Specialization to a pure degree-ell eigenfunction, lambda = ell(ell+1)/2.
LkcTriple expected_lkc_eigen(double u, int ell);

/// Curvatures for the squared field H_2 of the normalized Gaussian input;
/// defined for u >= -1, levels map through v = sqrt(u + 1) with both tails
/// of the base field contributing.
LkcTriple expected_lkc_h2(double u, double lambda);

/// Curvatures for the cubed field; the odd real cube root extends the level
/// map v = cbrt(u) below zero continuously.
LkcTriple expected_lkc_cubic(double u, double lambda);

/// High-level excursion probability approximation
/// 2 (1 - Phi(u)) + 2 u phi(u) lambda, which equals the expected Euler
/// characteristic of the excursion set at level u.
double excursion_prob_approx(double u, double lambda_jq);

/// Order of the uniform error of excursion_prob_approx over high levels; the
/// constant is not computable in closed form, so only the class is reported.
inline constexpr const char* kExcursionProbErrorClass =
    "O(exp(-alpha*u^2/2)), alpha > 1";

}
