#include "sphlkc/sht.hpp"

#include <cmath>
#include <stdexcept>

#include "sphlkc/specfun.hpp"

namespace sphlkc {

namespace {

constexpr double kFourPi = 12.566370614359172;

void check_resolves(const SphereGrid& grid, int ellmax, const char* who) {
  if (grid.n_theta() < ellmax + 1 || grid.n_phi() < 2 * ellmax + 1)
    throw std::invalid_argument(std::string(who) +
                                ": grid does not resolve the band limit");
}

}  // namespace

HarmonicCoefficients::HarmonicCoefficients(int ellmax) : ellmax_(ellmax) {
  if (ellmax < 0) throw std::invalid_argument("HarmonicCoefficients: ellmax < 0");
  a_.assign(static_cast<std::size_t>(ellmax + 1) * (ellmax + 2) / 2, {0.0, 0.0});
}

std::complex<double> HarmonicCoefficients::at(int ell, int m) const {
  if (ell < 0 || ell > ellmax_ || std::abs(m) > ell)
    throw std::out_of_range("HarmonicCoefficients::at");
  if (m >= 0) return a_[idx(ell, m)];
  std::complex<double> v = std::conj(a_[idx(ell, -m)]);
  return (m % 2 != 0) ? -v : v;
}

std::complex<double>& HarmonicCoefficients::ref(int ell, int m) {
  if (ell < 0 || ell > ellmax_ || m < 0 || m > ell)
    throw std::out_of_range("HarmonicCoefficients::ref");
  return a_[idx(ell, m)];
}

const std::complex<double>& HarmonicCoefficients::ref(int ell, int m) const {
  if (ell < 0 || ell > ellmax_ || m < 0 || m > ell)
    throw std::out_of_range("HarmonicCoefficients::ref");
  return a_[idx(ell, m)];
}

double HarmonicCoefficients::power() const {
  double s = 0.0;
  for (int ell = 0; ell <= ellmax_; ++ell) {
    s += std::norm(a_[idx(ell, 0)]);
    for (int m = 1; m <= ell; ++m) s += 2.0 * std::norm(a_[idx(ell, m)]);
  }
  return s;
}

// Fully normalized associated Legendre recurrence, m-major. The seed value
// lambda_mm carries the sin^m(theta) factor and the sqrt((2m+1)/(4pi) ...)
// normalization so every lambda is O(1).
void legendre_ring(double x, double sth, int ellmax, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(ellmax + 1) * (ellmax + 2) / 2);
  auto idx = [](int ell, int m) {
    return static_cast<std::size_t>(ell) * (ell + 1) / 2 + m;
  };
  double pmm = 1.0 / std::sqrt(kFourPi);  // lambda_00
  for (int m = 0; m <= ellmax; ++m) {
    if (m > 0) {
      // lambda_mm = -sqrt((2m+1)/(2m)) sin(theta) lambda_{m-1,m-1}
      pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sth;
    }
    out[idx(m, m)] = pmm;
    if (m == ellmax) break;
    double p0 = pmm;
    double p1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    out[idx(m + 1, m)] = p1;
    double oldfact = std::sqrt(2.0 * m + 3.0);
    for (int ell = m + 2; ell <= ellmax; ++ell) {
      double fact = std::sqrt((4.0 * ell * ell - 1.0) /
                              (static_cast<double>(ell) * ell - static_cast<double>(m) * m));
      double p2 = (x * p1 - p0 / oldfact) * fact;
      out[idx(ell, m)] = p2;
      oldfact = fact;
      p0 = p1;
      p1 = p2;
    }
  }
}

PixelField synthesize(const HarmonicCoefficients& alm,
                      std::shared_ptr<const SphereGrid> grid) {
  const int ellmax = alm.ellmax();
  check_resolves(*grid, ellmax, "synthesize");
  PixelField field = make_field(grid);
  const SphereGrid& g = *grid;

  std::vector<double> lam;
  std::vector<std::complex<double>> cm(ellmax + 1);
  auto lidx = [](int ell, int m) {
    return static_cast<std::size_t>(ell) * (ell + 1) / 2 + m;
  };

  for (int r = 0; r < g.n_theta(); ++r) {
    legendre_ring(g.cos_theta(r), g.sin_theta(r), ellmax, lam);
    for (int m = 0; m <= ellmax; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (int ell = m; ell <= ellmax; ++ell) acc += alm.ref(ell, m) * lam[lidx(ell, m)];
      cm[m] = acc;
    }
    // T = Re(c_0) + 2 sum_{m>=1} Re(c_m e^{i m phi})
    for (int k = 0; k < g.n_phi(); ++k) {
      double phi = g.phi(k);
      const std::complex<double> zk{std::cos(phi), std::sin(phi)};
      std::complex<double> zm = zk;
      double v = cm[0].real();
      for (int m = 1; m <= ellmax; ++m) {
        v += 2.0 * (cm[m] * zm).real();
        zm *= zk;
      }
      field.at(r, k) = v;
    }
  }
  return field;
}

HarmonicCoefficients analyze(const PixelField& field, int ellmax) {
  const SphereGrid& g = *field.grid;
  check_resolves(g, ellmax, "analyze");
  HarmonicCoefficients alm(ellmax);

  std::vector<double> lam;
  std::vector<std::complex<double>> fm(ellmax + 1);
  auto lidx = [](int ell, int m) {
    return static_cast<std::size_t>(ell) * (ell + 1) / 2 + m;
  };

  for (int r = 0; r < g.n_theta(); ++r) {
    legendre_ring(g.cos_theta(r), g.sin_theta(r), ellmax, lam);
    // ring-wise phi sums F_m = w_r sum_k T e^{-i m phi_k}
    for (int m = 0; m <= ellmax; ++m) fm[m] = {0.0, 0.0};
    for (int k = 0; k < g.n_phi(); ++k) {
      double v = field.at(r, k);
      double phi = g.phi(k);
      std::complex<double> z{std::cos(phi), -std::sin(phi)};
      std::complex<double> zm{1.0, 0.0};
      for (int m = 0; m <= ellmax; ++m) {
        fm[m] += v * zm;
        zm *= z;
      }
    }
    double wr = g.node_weight(r);
    for (int m = 0; m <= ellmax; ++m) {
      std::complex<double> f = wr * fm[m];
      for (int ell = m; ell <= ellmax; ++ell) alm.ref(ell, m) += lam[lidx(ell, m)] * f;
    }
  }
  return alm;
}

HarmonicCoefficients harmonic_filter(const HarmonicCoefficients& alm,
                                     const std::function<double(int)>& multiplier) {
  HarmonicCoefficients out(alm.ellmax());
  for (int ell = 0; ell <= alm.ellmax(); ++ell) {
    double f = multiplier(ell);
    for (int m = 0; m <= ell; ++m) out.ref(ell, m) = f * alm.ref(ell, m);
  }
  return out;
}

PixelField pointwise_hermite(const PixelField& field, int q, double sigma) {
  if (q < 1) throw std::domain_error("pointwise_hermite: q must be >= 1");
  if (!(sigma > 0.0)) throw std::domain_error("pointwise_hermite: sigma must be positive");
  PixelField out = field;
  for (double& v : out.values) v = hermite(q, v / sigma);
  return out;
}

}  // namespace sphlkc
