#include "sphlkc/lkc.hpp"

#include <cmath>
#include <stdexcept>

#include "sphlkc/specfun.hpp"

namespace sphlkc {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kFourPi = 12.566370614359172;
// 4 pi / (2 pi)^{3/2}
const double kEcScale = kFourPi / std::pow(2.0 * kPi, 1.5);

}  // namespace

LkcTriple expected_lkc_gaussian(double u, double lambda) {
  if (!(lambda > 0.0))
    throw std::domain_error("expected_lkc_gaussian: lambda must be positive");
  auto g = gaussian_tail(u);
  double e = std::exp(-0.5 * u * u);
  LkcTriple t;
  t.l0 = 2.0 * g.tail + kEcScale * lambda * u * e;
  t.l1 = kPi * std::sqrt(lambda) * e;
  t.l2 = kFourPi * g.tail;
  return t;
}

LkcTriple expected_lkc_eigen(double u, int ell) {
  if (ell < 1) throw std::domain_error("expected_lkc_eigen: ell must be >= 1");
  return expected_lkc_gaussian(u, 0.5 * ell * (ell + 1.0));
}

LkcTriple expected_lkc_h2(double u, double lambda) {
  if (!(lambda > 0.0))
    throw std::domain_error("expected_lkc_h2: lambda must be positive");
  if (u < -1.0)
    throw std::domain_error("expected_lkc_h2: level below the H_2 range");
  double v = std::sqrt(u + 1.0);
  auto g = gaussian_tail(v);
  double e = std::exp(-0.5 * v * v);
  LkcTriple t;
  t.l0 = 4.0 * g.tail + 2.0 * kEcScale * lambda * v * e;
  t.l1 = 2.0 * kPi * std::sqrt(lambda) * e;
  t.l2 = 2.0 * kFourPi * g.tail;
  return t;
}

LkcTriple expected_lkc_cubic(double u, double lambda) {
  if (!(lambda > 0.0))
    throw std::domain_error("expected_lkc_cubic: lambda must be positive");
  double v = std::cbrt(u);
  return expected_lkc_gaussian(v, lambda);
}

double excursion_prob_approx(double u, double lambda_jq) {
  if (!(lambda_jq > 0.0))
    throw std::domain_error("excursion_prob_approx: lambda must be positive");
  auto g = gaussian_tail(u);
  return 2.0 * g.tail + 2.0 * u * g.pdf * lambda_jq;
}

}  // namespace sphlkc
