#pragma once

#include <cstdint>
#include <iosfwd>

#include "sphlkc/grid.hpp"
#include "sphlkc/sht.hpp"
#include "sphlkc/spectra.hpp"

namespace sphlkc {

/// Draw stream tags; surrogate draws never collide with base-field draws.
enum class DrawStream : std::uint32_t { BaseField = 0, Surrogate = 1 };

/// Gaussian harmonic coefficients for an isotropic spectrum:
/// a_{ell 0} ~ N(0, C_ell) real, a_{ell m} complex with E|a|^2 = C_ell for
/// m > 0. Deterministic in (seed, replicate); draws are keyed per (ell, m).
HarmonicCoefficients sample_alm(const PowerSpectrum& spec, int ellmax,
                                std::uint64_t seed, std::uint32_t replicate = 0,
                                DrawStream stream = DrawStream::BaseField);

struct SubordinatedField {
  PixelField raw;         // g_{j;q}
  PixelField normalized;  // g / sigma_theory
  double sigma_theory;    // sqrt of the transformed-spectrum variance
};

/// Full pipeline: sample -> needlet filter -> synthesize -> normalize ->
/// H_q -> analyze (band truncated at the kernel support; the monopole is
/// dropped) -> kernel filter -> synthesize. The grid must resolve
/// q * ell_max(window) so the analysis quadrature stays exact.
SubordinatedField build_gjq(const PowerSpectrum& spec, const NeedletWindow& w,
                            const SmoothingKernel& k, int q,
                            std::shared_ptr<const SphereGrid> grid,
                            std::uint64_t seed, std::uint32_t replicate = 0,
                            const TransformedSpectrum* precomputed = nullptr);

/// Gaussian field drawn directly from a transformed spectrum: the surrogate
/// sharing the subordinated field's covariance.
PixelField build_surrogate(const TransformedSpectrum& ts,
                           std::shared_ptr<const SphereGrid> grid,
                           std::uint64_t seed, std::uint32_t replicate = 0);

/// Single-node value of the normalized subordinated field, via direct
/// quadrature of the kernel integral against H_q(beta~). Equals the
/// build_gjq value at that node; cheap when only one node is needed.
/// kernel_row must come from kernel_row_at for the same grid.
double gjq_at_node(int q, const PixelField& beta_normalized,
                   const std::vector<double>& kernel_row, double sigma_theory);

/// K(<x_{r0,k0}, y>) dotted with quadrature weights for every grid node y.
std::vector<double> kernel_row_at(const SmoothingKernel& k, const SphereGrid& grid,
                                  int r0, int k0);

/// Normalized needlet field beta~_j on the grid (one replicate).
PixelField build_beta(const PowerSpectrum& spec, const NeedletWindow& w,
                      std::shared_ptr<const SphereGrid> grid, std::uint64_t seed,
                      std::uint32_t replicate = 0);

// --- field snapshots ---

/// Rows "theta phi value", one node per line.
void write_field_text(const PixelField& field, std::ostream& os);

/// Binary layout: magic "SPHLKCF1" (8 bytes), uint32 n_theta, uint32 n_phi,
/// then n_theta * n_phi float64 node values, all little-endian row-major.
void write_field_binary(const PixelField& field, std::ostream& os);
PixelField read_field_binary(std::istream& is);

}
