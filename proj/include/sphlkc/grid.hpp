#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace sphlkc {

/// Quadrature grid on the sphere: Gauss-Legendre colatitude rings crossed
/// with equispaced longitudes. Weights integrate band-limited fields exactly
/// (degree <= 2 n_theta - 1 in cos(theta), <= n_phi - 1 in phi). Immutable
/// after construction; rings are indexed north to south, phi_k = 2 pi k / n_phi.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t n_nodes() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }

  double theta(int r) const { return theta_[r]; }
  double cos_theta(int r) const { return cos_theta_[r]; }
  double sin_theta(int r) const { return sin_theta_[r]; }
  double phi(int k) const { return dphi_ * k; }
  double dphi() const { return dphi_; }

  /// Quadrature weight of any node on ring r, in steradians.
  double node_weight(int r) const { return ring_weight_[r]; }

  std::size_t node_index(int r, int k) const {
    return static_cast<std::size_t>(r) * n_phi_ + k;
  }

 private:
  int n_theta_, n_phi_;
  double dphi_;
  std::vector<double> theta_, cos_theta_, sin_theta_, ring_weight_;
};

std::shared_ptr<const SphereGrid> make_grid(int n_theta, int n_phi);

/// Real scalar field sampled on a SphereGrid, row-major in (ring, phi).
struct PixelField {
  std::shared_ptr<const SphereGrid> grid;
  std::vector<double> values;

  double at(int r, int k) const { return values[grid->node_index(r, k)]; }
  double& at(int r, int k) { return values[grid->node_index(r, k)]; }
};

PixelField make_field(std::shared_ptr<const SphereGrid> grid);

}
