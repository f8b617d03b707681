#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sphlkc/spectra.hpp"

namespace sphlkc {

/// Experiment definition shared by the Monte Carlo harnesses.
struct McSetup {
  PowerSpectrum spectrum;
  NeedletWindow window;
  SmoothingKernel kernel;
  int q = 1;
  int n_theta = 0;
  int n_phi = 0;
};

struct McRow {
  double level = 0.0;
  std::string stat;
  double mc_mean = 0.0;
  double mc_se = 0.0;
  double theory = 0.0;
  double z = 0.0;
};

struct McReport {
  std::vector<McRow> rows;
  std::uint64_t seed = 0;
  int replicates = 0;
  double lambda = 0.0;  // lambda_{j;q} behind the theory columns
  std::vector<std::string> notes;
};

/// Empirical LKCs of the normalized subordinated field and of its Gaussian
/// surrogate at each level, against the closed forms evaluated at
/// lambda_{j;q}. Stats: ec|len|area x _gjq|_surrogate.
McReport mc_validate_lkcs(const McSetup& setup, std::span<const double> levels,
                          int replicates, std::uint64_t seed);

/// Empirical P(sup > u) for both fields against the tail approximation
/// 2(1 - Phi(u)) + 2 u phi(u) lambda_{j;q}. Sup per replicate is the grid
/// max plus one quadratic refinement; the mean refinement is reported in
/// the notes as the residual-bias diagnostic.
McReport mc_sup_probability(const McSetup& setup, std::span<const double> levels,
                            int replicates, std::uint64_t seed);

struct Cum4Row {
  int j = 0;
  double cum4 = 0.0;      // normalized fourth cumulant at the probe node
  double se_indicative = 0.0;
  bool warn_low_replicates = false;
};

struct Cum4Report {
  std::vector<Cum4Row> rows;
  double slope = 0.0;  // least-squares slope of log|cum4| against j
  double log_bandwidth = 0.0;
  std::uint64_t seed = 0;
  int replicates = 0;
  std::vector<std::string> notes;
};

/// Normalized fourth cumulant of the single-node statistic g~_{j;q}(x0)
/// across scales, with the fitted log-decay slope (expected near
/// -2 log B). Needs at least 3 scales; below 5000 replicates the fourth
/// moment is flagged as unstable.
Cum4Report mc_cumulant_decay(const PowerSpectrum& spec, double B,
                             std::span<const int> j_list,
                             const SmoothingKernel& kernel, int q,
                             int replicates, std::uint64_t seed);

/// Replicate-parallel driver: runs body(rep) for rep in [0, n) on a small
/// thread pool (worker count from SPHLKC_WORKERS, default hardware). Bodies
/// must not share mutable state; reductions happen afterwards in index order.
void parallel_replicates(int n, const std::function<void(int)>& body);

}
