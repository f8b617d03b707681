#include "sphlkc/simsphere.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "sphlkc/rng.hpp"
#include "sphlkc/specfun.hpp"

namespace sphlkc {

namespace {

constexpr double kFourPi = 12.566370614359172;
constexpr char kFieldMagic[8] = {'S', 'P', 'H', 'L', 'K', 'C', 'F', '1'};

}  // namespace

HarmonicCoefficients sample_alm(const PowerSpectrum& spec, int ellmax,
                                std::uint64_t seed, std::uint32_t replicate,
                                DrawStream stream) {
  if (ellmax > spec.ellmax())
    throw std::invalid_argument("sample_alm: ellmax exceeds the spectrum range");
  HarmonicCoefficients alm(ellmax);
  const auto sid = static_cast<std::uint32_t>(stream);
  for (int ell = 1; ell <= ellmax; ++ell) {
    double c = spec(ell);
    if (c == 0.0) continue;
    double s = std::sqrt(c);
    double s2 = std::sqrt(0.5 * c);
    for (int m = 0; m <= ell; ++m) {
      auto z = counter_normals(seed, replicate, sid, static_cast<std::uint32_t>(ell),
                               static_cast<std::uint32_t>(m));
      if (m == 0)
        alm.ref(ell, 0) = {s * z.z0, 0.0};
      else
        alm.ref(ell, m) = {s2 * z.z0, s2 * z.z1};
    }
  }
  return alm;
}

PixelField build_beta(const PowerSpectrum& spec, const NeedletWindow& w,
                      std::shared_ptr<const SphereGrid> grid, std::uint64_t seed,
                      std::uint32_t replicate) {
  int ellmax = std::min(w.ell_max(), spec.ellmax());
  if (w.ell_max() > spec.ellmax())
    throw std::invalid_argument("build_beta: window support exceeds the spectrum");
  double var = field_variance(w, spec);
  if (!(var > 0.0)) throw std::domain_error("build_beta: zero-variance window");
  double inv_sigma = 1.0 / std::sqrt(var);
  auto alm = sample_alm(spec, ellmax, seed, replicate);
  auto filtered =
      harmonic_filter(alm, [&](int ell) { return w.multiplier(ell) * inv_sigma; });
  return synthesize(filtered, std::move(grid));
}

SubordinatedField build_gjq(const PowerSpectrum& spec, const NeedletWindow& w,
                            const SmoothingKernel& k, int q,
                            std::shared_ptr<const SphereGrid> grid,
                            std::uint64_t seed, std::uint32_t replicate,
                            const TransformedSpectrum* precomputed) {
  if (q < 1 || q > 4) throw std::invalid_argument("build_gjq: q must be in [1, 4]");
  int ellmax_beta = std::min(w.ell_max(), spec.ellmax());
  // The Hermite power multiplies the band limit; the analysis quadrature has
  // to be exact for the product of that band with the output band.
  int band_needed = q * ellmax_beta;
  if (grid->n_theta() < band_needed + 1 || grid->n_phi() < 2 * band_needed + 1)
    throw std::invalid_argument(
        "build_gjq: grid does not resolve the q-fold band limit");

  auto alm = sample_alm(spec, ellmax_beta, seed, replicate);
  auto filtered = harmonic_filter(alm, [&](int ell) { return w.multiplier(ell); });
  PixelField beta = synthesize(filtered, grid);
  double sigma = std::sqrt(field_variance(w, spec));
  PixelField h = pointwise_hermite(beta, q, sigma);

  int out_band = std::min(k.L_K(), band_needed);
  auto ah = analyze(h, out_band);
  auto ag = harmonic_filter(ah, [&](int ell) { return k(ell); });

  SubordinatedField out;
  out.raw = synthesize(ag, grid);
  TransformedSpectrum local;
  const TransformedSpectrum* ts = precomputed;
  if (ts == nullptr) {
    local = transformed_spectrum(q, w, spec, k);
    ts = &local;
  }
  out.sigma_theory = std::sqrt(ts->variance());
  if (!(out.sigma_theory > 0.0))
    throw std::domain_error("build_gjq: degenerate transformed spectrum");
  out.normalized = out.raw;
  for (double& v : out.normalized.values) v /= out.sigma_theory;
  return out;
}

PixelField build_surrogate(const TransformedSpectrum& ts,
                           std::shared_ptr<const SphereGrid> grid,
                           std::uint64_t seed, std::uint32_t replicate) {
  auto spec = PowerSpectrum::tabulated(
      ts.values.size() > 1
          ? std::vector<double>(ts.values.begin() + 1, ts.values.end())
          : std::vector<double>{0.0});
  int ellmax = spec.ellmax();
  auto alm = sample_alm(spec, ellmax, seed, replicate, DrawStream::Surrogate);
  // the transformed spectrum carries a monopole line; the base spectra do not
  if (!ts.values.empty() && ts.values[0] > 0.0) {
    auto z = counter_normals(seed, replicate,
                             static_cast<std::uint32_t>(DrawStream::Surrogate), 0, 0);
    alm.ref(0, 0) = {std::sqrt(ts.values[0]) * z.z0, 0.0};
  }
  return synthesize(alm, std::move(grid));
}

std::vector<double> kernel_row_at(const SmoothingKernel& k, const SphereGrid& grid,
                                  int r0, int k0) {
  const int L_K = k.L_K();
  std::vector<double> row(grid.n_nodes());
  double ct0 = grid.cos_theta(r0), st0 = grid.sin_theta(r0), phi0 = grid.phi(k0);
  for (int r = 0; r < grid.n_theta(); ++r) {
    double ct = grid.cos_theta(r), st = grid.sin_theta(r);
    double wnode = grid.node_weight(r);
    for (int kk = 0; kk < grid.n_phi(); ++kk) {
      double c = ct0 * ct + st0 * st * std::cos(grid.phi(kk) - phi0);
      c = std::min(1.0, std::max(-1.0, c));
      double ker = 0.0;
      for (int ell = 0; ell <= L_K; ++ell) {
        double kap = k(ell);
        if (kap == 0.0) continue;
        ker += (2.0 * ell + 1.0) / kFourPi * kap * legendre_p(ell, c);
      }
      row[grid.node_index(r, kk)] = wnode * ker;
    }
  }
  return row;
}

double gjq_at_node(int q, const PixelField& beta_normalized,
                   const std::vector<double>& kernel_row, double sigma_theory) {
  if (kernel_row.size() != beta_normalized.values.size())
    throw std::invalid_argument("gjq_at_node: kernel row does not match the grid");
  if (!(sigma_theory > 0.0))
    throw std::domain_error("gjq_at_node: sigma must be positive");
  double acc = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < kernel_row.size(); ++i) {
    double v = kernel_row[i] * hermite(q, beta_normalized.values[i]);
    double y = v - comp, t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc / sigma_theory;
}

void write_field_text(const PixelField& field, std::ostream& os) {
  const SphereGrid& g = *field.grid;
  char buf[96];
  for (int r = 0; r < g.n_theta(); ++r)
    for (int k = 0; k < g.n_phi(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", g.theta(r), g.phi(k),
                    field.at(r, k));
      os << buf;
    }
}

void write_field_binary(const PixelField& field, std::ostream& os) {
  const SphereGrid& g = *field.grid;
  os.write(kFieldMagic, sizeof(kFieldMagic));
  std::uint32_t nt = g.n_theta(), np = g.n_phi();
  os.write(reinterpret_cast<const char*>(&nt), 4);
  os.write(reinterpret_cast<const char*>(&np), 4);
  os.write(reinterpret_cast<const char*>(field.values.data()),
           static_cast<std::streamsize>(field.values.size() * sizeof(double)));
}

PixelField read_field_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kFieldMagic, 8) != 0)
    throw std::runtime_error("read_field_binary: bad magic");
  std::uint32_t nt = 0, np = 0;
  is.read(reinterpret_cast<char*>(&nt), 4);
  is.read(reinterpret_cast<char*>(&np), 4);
  if (!is || nt < 2 || np < 2) throw std::runtime_error("read_field_binary: bad header");
  PixelField f = make_field(make_grid(static_cast<int>(nt), static_cast<int>(np)));
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!is) throw std::runtime_error("read_field_binary: truncated payload");
  return f;
}

}  // namespace sphlkc
