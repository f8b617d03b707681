#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sphlkc/mc.hpp"
#include "sphlkc/spectra.hpp"

namespace sphlkc {

/// Batch run description. Parsed from flat key = value text with [sections];
/// unknown keys are rejected. canonical() emits a normalized form that parses
/// back to an equal config, and the stable 64-bit hash of that form stamps
/// every artifact.
struct RunConfig {
  std::string command = "lkc-theory";
  std::uint64_t seed = 1;
  int replicates = 100;
  std::vector<double> levels = {0.0, 0.5, 1.0, 2.0};
  std::string out = "out";

  int n_theta = 0;  // 0 = derived from the band limit
  int n_phi = 0;

  std::string model = "sachs-wolfe";  // sachs-wolfe | bardeen | tabulated
  double G = 1.0;
  double alpha = 3.0;
  int ellmax = 0;  // 0 = window default
  std::string table;

  double B = 2.0;
  int j = 3;

  int L_K = 8;
  std::string kappa = "ones";  // ones | band | comma-separated values

  int q = 1;

  std::vector<int> j_list = {3, 4, 5};

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::filesystem::path& path);

  std::string canonical() const;
  std::uint64_t hash() const;

  // Materialized pieces (validated on construction).
  NeedletWindow make_window() const;
  PowerSpectrum make_spectrum() const;
  PowerSpectrum make_spectrum(int ellmax_needed) const;
  SmoothingKernel make_kernel() const;
  McSetup make_setup() const;

  bool operator==(const RunConfig&) const = default;
};

/// Executes the configured command, writing CSV artifacts plus manifest.txt
/// under config.out. Returns the process exit status (0 on success); errors
/// are reported by exception to the caller.
int run_command(const RunConfig& config);

std::uint64_t fnv1a64(const std::string& text);

}
