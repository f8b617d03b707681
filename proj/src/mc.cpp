#include "sphlkc/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

#include "sphlkc/geometry.hpp"
#include "sphlkc/lkc.hpp"
#include "sphlkc/simsphere.hpp"

namespace sphlkc {

namespace {

int worker_count() {
  if (const char* env = std::getenv("SPHLKC_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct MeanSe {
  double mean = 0.0, se = 0.0;
};

MeanSe reduce(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  double m = 0.0;
  for (double v : samples) m += v;
  m /= static_cast<double>(n);
  double s2 = 0.0;
  for (double v : samples) s2 += (v - m) * (v - m);
  MeanSe out;
  out.mean = m;
  out.se = n > 1 ? std::sqrt(s2 / (static_cast<double>(n) * (n - 1))) : 0.0;
  return out;
}

McRow make_row(double level, std::string stat, MeanSe ms, double theory) {
  McRow row;
  row.level = level;
  row.stat = std::move(stat);
  row.mc_mean = ms.mean;
  row.mc_se = ms.se;
  row.theory = theory;
  row.z = ms.se > 0.0 ? (ms.mean - theory) / ms.se : 0.0;
  return row;
}

std::string format_note(const char* key, double value) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s = %.17g", key, value);
  return buf;
}

}  // namespace

void parallel_replicates(int n, const std::function<void(int)>& body) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

McReport mc_validate_lkcs(const McSetup& setup, std::span<const double> levels,
                          int replicates, std::uint64_t seed) {
  if (replicates < 50)
    throw std::invalid_argument("mc_validate_lkcs: need at least 50 replicates");
  auto grid = make_grid(setup.n_theta, setup.n_phi);
  auto ts = transformed_spectrum(setup.q, setup.window, setup.spectrum, setup.kernel);
  double lambda = lambda_jq(ts);
  double sigma = std::sqrt(ts.variance());
  const std::size_t L = levels.size();

  // per replicate: [level][6] = ec/len/area for gjq then surrogate
  std::vector<std::vector<double>> samples(6 * L,
                                           std::vector<double>(replicates, 0.0));
  parallel_replicates(replicates, [&](int rep) {
    auto gres = build_gjq(setup.spectrum, setup.window, setup.kernel, setup.q, grid,
                          seed, static_cast<std::uint32_t>(rep), &ts);
    PixelField fsur = build_surrogate(ts, grid, seed, static_cast<std::uint32_t>(rep));
    for (double& v : fsur.values) v /= sigma;
    for (std::size_t li = 0; li < L; ++li) {
      double u = levels[li];
      auto sg = summarize_excursion(gres.normalized, u);
      auto sf = summarize_excursion(fsur, u);
      samples[6 * li + 0][rep] = static_cast<double>(sg.euler_char);
      samples[6 * li + 1][rep] = sg.boundary_length;
      samples[6 * li + 2][rep] = sg.area;
      samples[6 * li + 3][rep] = static_cast<double>(sf.euler_char);
      samples[6 * li + 4][rep] = sf.boundary_length;
      samples[6 * li + 5][rep] = sf.area;
    }
  });

  McReport report;
  report.seed = seed;
  report.replicates = replicates;
  report.lambda = lambda;
  static const char* kStats[6] = {"ec_gjq",       "len_gjq",       "area_gjq",
                                  "ec_surrogate", "len_surrogate", "area_surrogate"};
  for (std::size_t li = 0; li < L; ++li) {
    double u = levels[li];
    auto theory = expected_lkc_gaussian(u, lambda);
    double tvals[3] = {theory.l0, theory.boundary_length(), theory.l2};
    for (int s = 0; s < 6; ++s)
      report.rows.push_back(
          make_row(u, kStats[s], reduce(samples[6 * li + s]), tvals[s % 3]));
  }
  report.notes.push_back(format_note("lambda_jq", lambda));
  report.notes.push_back(format_note("sigma_theory", sigma));
  return report;
}

McReport mc_sup_probability(const McSetup& setup, std::span<const double> levels,
                            int replicates, std::uint64_t seed) {
  if (replicates < 1)
    throw std::invalid_argument("mc_sup_probability: need replicates");
  auto grid = make_grid(setup.n_theta, setup.n_phi);
  auto ts = transformed_spectrum(setup.q, setup.window, setup.spectrum, setup.kernel);
  double lambda = lambda_jq(ts);
  double sigma = std::sqrt(ts.variance());

  std::vector<double> sup_g(replicates), sup_f(replicates);
  std::vector<double> raw_g(replicates), raw_f(replicates);
  parallel_replicates(replicates, [&](int rep) {
    auto gres = build_gjq(setup.spectrum, setup.window, setup.kernel, setup.q, grid,
                          seed, static_cast<std::uint32_t>(rep), &ts);
    PixelField fsur = build_surrogate(ts, grid, seed, static_cast<std::uint32_t>(rep));
    for (double& v : fsur.values) v /= sigma;
    raw_g[rep] = *std::max_element(gres.normalized.values.begin(),
                                   gres.normalized.values.end());
    raw_f[rep] = *std::max_element(fsur.values.begin(), fsur.values.end());
    sup_g[rep] = sup_refined(gres.normalized);
    sup_f[rep] = sup_refined(fsur);
  });

  McReport report;
  report.seed = seed;
  report.replicates = replicates;
  report.lambda = lambda;
  auto tally = [&](const std::vector<double>& sup, const char* stat) {
    for (double u : levels) {
      int hits = 0;
      for (double s : sup)
        if (s > u) ++hits;
      double p = static_cast<double>(hits) / replicates;
      MeanSe ms;
      ms.mean = p;
      ms.se = std::sqrt(p * (1.0 - p) / replicates);
      report.rows.push_back(make_row(u, stat, ms, excursion_prob_approx(u, lambda)));
    }
  };
  tally(sup_g, "supprob_gjq");
  tally(sup_f, "supprob_surrogate");

  double dg = 0.0, df = 0.0;
  for (int i = 0; i < replicates; ++i) {
    dg += sup_g[i] - raw_g[i];
    df += sup_f[i] - raw_f[i];
  }
  report.notes.push_back(format_note("lambda_jq", lambda));
  report.notes.push_back(
      format_note("mean_sup_refinement_gjq", dg / replicates));
  report.notes.push_back(
      format_note("mean_sup_refinement_surrogate", df / replicates));
  return report;
}

Cum4Report mc_cumulant_decay(const PowerSpectrum& spec, double B,
                             std::span<const int> j_list,
                             const SmoothingKernel& kernel, int q,
                             int replicates, std::uint64_t seed) {
  if (j_list.size() < 3)
    throw std::invalid_argument("mc_cumulant_decay: need at least 3 scales");

  Cum4Report report;
  report.seed = seed;
  report.replicates = replicates;
  report.log_bandwidth = std::log(B);

  for (int j : j_list) {
    NeedletWindow w(B, j);
    int band = q * std::min(w.ell_max(), spec.ellmax());
    auto grid = make_grid(band + 2, 2 * band + 3);
    auto ts = transformed_spectrum(q, w, spec, kernel);
    if (!(ts.variance() > 0.0))
      throw std::domain_error(
          "mc_cumulant_decay: degenerate transformed spectrum at j=" +
          std::to_string(j) + " (kernel band misses the needlet band)");
    double sigma = std::sqrt(ts.variance());
    int r0 = grid->n_theta() / 2, k0 = 0;  // probe node near the equator
    auto row = kernel_row_at(kernel, *grid, r0, k0);

    std::vector<double> x(replicates);
    parallel_replicates(replicates, [&](int rep) {
      auto beta = build_beta(spec, w, grid, seed, static_cast<std::uint32_t>(rep));
      x[rep] = gjq_at_node(q, beta, row, sigma);
    });

    double m = 0.0;
    for (double v : x) m += v;
    m /= replicates;
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
      double d = v - m;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    m2 /= replicates;
    m4 /= replicates;

    Cum4Row crow;
    crow.j = j;
    crow.cum4 = m4 / (m2 * m2) - 3.0;
    crow.se_indicative = std::sqrt(24.0 / replicates);
    crow.warn_low_replicates = replicates < 5000;
    report.rows.push_back(crow);
  }

  // least-squares slope of log|cum4| against j
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& row : report.rows) {
    if (row.cum4 == 0.0) continue;
    double y = std::log(std::abs(row.cum4));
    sx += row.j;
    sy += y;
    sxx += static_cast<double>(row.j) * row.j;
    sxy += row.j * y;
    ++n;
  }
  if (n >= 2) report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report.notes.push_back(format_note("expected_slope", -2.0 * std::log(B)));
  return report;
}

}  // namespace sphlkc
