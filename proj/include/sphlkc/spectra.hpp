#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sphlkc {

enum class SpectrumModel { SachsWolfe, Bardeen, Tabulated };

/// Angular power spectrum model C_ell on 1 <= ell <= ellmax. The monopole is
/// excluded everywhere by convention.
class PowerSpectrum {
 public:
  static PowerSpectrum sachs_wolfe(double G, double alpha, int ellmax);
  static PowerSpectrum bardeen(int ellmax);
  static PowerSpectrum tabulated(std::vector<double> values);  // values[i] = C_{i+1}
  static PowerSpectrum from_table_file(const std::filesystem::path& path);

  /// C_ell; throws outside [1, ellmax].
  double operator()(int ell) const;

  SpectrumModel kind() const { return kind_; }
  int ellmax() const { return ellmax_; }
  double sachs_wolfe_G() const { return G_; }
  double sachs_wolfe_alpha() const { return alpha_; }
  const std::vector<double>& table() const { return table_; }

 private:
  PowerSpectrum() = default;
  SpectrumModel kind_ = SpectrumModel::Bardeen;
  int ellmax_ = 0;
  double G_ = 0.0, alpha_ = 0.0;
  std::vector<double> table_;
};

/// Needlet weight profile b(ell / B^j): a C-infinity bump supported in
/// (B^{j-1}, B^{j+1}) whose squares telescope to a partition of unity across
/// scales. The underlying mollifier integral is tabulated once and shared.
class NeedletWindow {
 public:
  NeedletWindow(double B, int j);

  double bandwidth() const { return B_; }
  int scale() const { return j_; }

  /// b(ell / B^j); exactly zero outside the open support band.
  double multiplier(int ell) const;

  /// b(xi) as a function of the continuous argument xi.
  double profile(double xi) const;

  /// Smallest/largest multipole with a possibly nonzero multiplier.
  int ell_min() const;
  int ell_max() const;

 private:
  double B_;
  int j_;
  double scale_pow_;  // B^j
};

/// Zonal smoothing kernel K(<x,y>) = sum_{ell<=L_K} (2ell+1)/(4pi) kappa(ell)
/// P_ell(<x,y>); stored as the multiplier sequence kappa(0..L_K).
struct SmoothingKernel {
  std::vector<double> kappa;

  int L_K() const { return static_cast<int>(kappa.size()) - 1; }
  double operator()(int ell) const {
    return (ell >= 0 && ell < static_cast<int>(kappa.size())) ? kappa[ell] : 0.0;
  }
  static SmoothingKernel ones(int L_K);
  /// kappa = 1 on the window's support band (and 0 elsewhere), up to L_K.
  static SmoothingKernel band_indicator(const NeedletWindow& w, int L_K);
};

/// C_ell for the given model; domain-checked access (identical to
/// spec(ell), provided for symmetry with the other free functions).
double spectrum_eval(const PowerSpectrum& spec, int ell);

/// b(ell / B^j).
double needlet_multiplier(const NeedletWindow& w, int ell);

/// Var(beta_j) = sum_ell b^2(ell/B^j) (2ell+1) C_ell / (4 pi).
double field_variance(const NeedletWindow& w, const PowerSpectrum& spec);

/// Second spectral moment of the normalized field:
/// lambda_j = sum b^2 (2ell+1) C_ell P'_ell(1) / sum b^2 (2ell+1) C_ell.
double spectral_moment(const NeedletWindow& w, const PowerSpectrum& spec);

/// Induced-metric surface measure 4 pi lambda_j.
double induced_l2(const NeedletWindow& w, const PowerSpectrum& spec);

/// Angular power spectrum of the subordinated smoothed field of order q.
/// Entry [ell] for 0 <= ell <= L_K; the monopole entry is always zero.
struct TransformedSpectrum {
  int q = 1;
  std::vector<double> values;

  int L_K() const { return static_cast<int>(values.size()) - 1; }
  /// Total variance sum_ell (2ell+1) values[ell] / (4 pi).
  double variance() const;
};

/// Build C_{ell;j,q}. The input field is normalized to unit variance before
/// Hermite subordination; q = 1 is the diagonal multiplier case, q = 2 uses
/// the pairwise 3j sum, q >= 3 the chained Clebsch-Gordan convolution route.
TransformedSpectrum transformed_spectrum(int q, const NeedletWindow& w,
                                         const PowerSpectrum& spec,
                                         const SmoothingKernel& k);

/// Same value as transformed_spectrum for q >= 2, evaluated literally through
/// cg_convolution for any order; the q = 2 pairwise path above is the fast
/// route and the two must agree.
TransformedSpectrum transformed_spectrum_generic(int q, const NeedletWindow& w,
                                                 const PowerSpectrum& spec,
                                                 const SmoothingKernel& k);

/// lambda_{j;q} = sum (2ell+1) C_{ell;j,q} P'_ell(1) / sum (2ell+1) C_{ell;j,q}.
double lambda_jq(const TransformedSpectrum& ts);

}
