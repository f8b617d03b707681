#include "sphlkc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sphlkc {

namespace {

// Gauss-Legendre nodes by Newton iteration on P_n; standard Chebyshev-like
// initial guesses converge in a handful of steps to machine precision.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double pm1 = 1.0, p = xi;
      for (int k = 2; k <= n; ++k) {
        double pn = ((2 * k - 1) * xi * p - (k - 1) * pm1) / k;
        pm1 = p;
        p = pn;
      }
      dp = n * (pm1 - xi * p) / (1.0 - xi * xi);
      double dx = p / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing step after convergence
        pm1 = 1.0;
        p = xi;
        for (int k = 2; k <= n; ++k) {
          double pn = ((2 * k - 1) * xi * p - (k - 1) * pm1) / k;
          pm1 = p;
          p = pn;
        }
        dp = n * (pm1 - xi * p) / (1.0 - xi * xi);
        xi -= p / dp;
        break;
      }
    }
    // nodes descending in x = cos(theta): ring 0 nearest the north pole
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

}  // namespace

SphereGrid::SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("SphereGrid: need n_theta >= 2 and n_phi >= 2");
  dphi_ = 2.0 * M_PI / n_phi;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  theta_.resize(n_theta);
  cos_theta_.resize(n_theta);
  sin_theta_.resize(n_theta);
  ring_weight_.resize(n_theta);
  for (int r = 0; r < n_theta; ++r) {
    cos_theta_[r] = x[r];
    theta_[r] = std::acos(x[r]);
    sin_theta_[r] = std::sin(theta_[r]);
    ring_weight_[r] = w[r] * dphi_;
  }
}

std::shared_ptr<const SphereGrid> make_grid(int n_theta, int n_phi) {
  return std::make_shared<const SphereGrid>(n_theta, n_phi);
}

PixelField make_field(std::shared_ptr<const SphereGrid> grid) {
  PixelField f;
  f.values.assign(grid->n_nodes(), 0.0);
  f.grid = std::move(grid);
  return f;
}

}  // namespace sphlkc
