#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sphlkc/grid.hpp"

namespace sphlkc {

/// Spherical harmonic coefficients of a real field. Only m >= 0 is stored;
/// the reality constraint a_{ell,-m} = (-1)^m conj(a_{ell m}) holds by
/// construction and at() serves the full index range through it.
class HarmonicCoefficients {
 public:
  explicit HarmonicCoefficients(int ellmax);

  int ellmax() const { return ellmax_; }

  std::complex<double> at(int ell, int m) const;
  /// Mutable access, m >= 0 only.
  std::complex<double>& ref(int ell, int m);
  const std::complex<double>& ref(int ell, int m) const;

  /// sum over all (ell, m) of |a_{ell m}|^2 (both m signs counted).
  double power() const;

  bool operator==(const HarmonicCoefficients&) const = default;

 private:
  std::size_t idx(int ell, int m) const {
    return static_cast<std::size_t>(ell) * (ell + 1) / 2 + m;
  }
  int ellmax_;
  std::vector<std::complex<double>> a_;  // packed (ell, m >= 0)
};

/// T(x) = sum a_{ell m} Y_{ell m}(x) on the grid nodes. The grid must resolve
/// the band limit: n_theta >= ellmax + 1, n_phi >= 2 ellmax + 1.
PixelField synthesize(const HarmonicCoefficients& alm,
                      std::shared_ptr<const SphereGrid> grid);

/// Inverse transform by exact quadrature: a_{ell m} = sum_nodes w T conj(Y).
/// Exact when the field is band-limited and the grid resolves it.
HarmonicCoefficients analyze(const PixelField& field, int ellmax);

/// Per-degree multiplier a_{ell m} -> f(ell) a_{ell m} (zonal convolution).
HarmonicCoefficients harmonic_filter(const HarmonicCoefficients& alm,
                                     const std::function<double(int)>& multiplier);

/// Node-wise H_q(value / sigma); sigma must be the true standard deviation.
PixelField pointwise_hermite(const PixelField& field, int q, double sigma);

/// Fully normalized theta part of Y_{ell m} for one ring: out[idx] for
/// 0 <= m <= ell <= ellmax, packed as ell(ell+1)/2 + m (Condon-Shortley
/// phase included). Exposed for single-point evaluations.
void legendre_ring(double cos_theta, double sin_theta, int ellmax,
                   std::vector<double>& out);

}
