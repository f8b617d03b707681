#include "sphlkc/spectra.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sphlkc/specfun.hpp"
#include "sphlkc/wigner.hpp"

namespace sphlkc {

namespace {

constexpr double kFourPi = 12.566370614359172;

// ---------------------------------------------------------------------------
// Mollifier profile psi(u) = int_{-1}^{u} exp(-1/(1-t^2)) dt, normalized to
// psi(1) = 1. Tabulated once on a uniform grid of panels, each integrated by
// 16-point Gauss-Legendre; evaluation adds the partial panel, so the profile
// is smooth and accurate to machine precision.
// ---------------------------------------------------------------------------

constexpr int kPanels = 10000;

double mollifier(double t) {
  double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

double panel_integral(double a, double b) {
  static const std::array<double, 8> x = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static const std::array<double, 8> w = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i)
    s += w[i] * (mollifier(c - h * x[i]) + mollifier(c + h * x[i]));
  return s * h;
}

class BumpProfile {
 public:
  BumpProfile() {
    cum_.resize(kPanels + 1);
    long double acc = 0.0L;
    cum_[0] = 0.0;
    for (int i = 0; i < kPanels; ++i) {
      acc += panel_integral(knot(i), knot(i + 1));
      cum_[i + 1] = static_cast<double>(acc);
    }
    total_ = cum_[kPanels];
  }

  // psi(u) on [-1, 1], clamped outside.
  double psi(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double pos = (u + 1.0) / 2.0 * kPanels;
    int i = std::min(static_cast<int>(pos), kPanels - 1);
    return (cum_[i] + panel_integral(knot(i), u)) / total_;
  }

 private:
  static double knot(int i) { return -1.0 + 2.0 * i / kPanels; }
  std::vector<double> cum_;
  double total_ = 1.0;
};

const BumpProfile& bump() {
  static BumpProfile p;
  return p;
}

// phi_B(t): 1 on [0, 1/B], a smooth descent on [1/B, 1], 0 beyond.
double phi_B(double B, double t) {
  if (t <= 1.0 / B) return 1.0;
  if (t >= 1.0) return 0.0;
  return bump().psi(1.0 - 2.0 * B / (B - 1.0) * (t - 1.0 / B));
}

// b^2(xi) = phi_B(xi/B) - phi_B(xi): the squares telescope across scales,
// which is what makes the partition of unity exact.
double b_squared(double B, double xi) {
  double v = phi_B(B, xi / B) - phi_B(B, xi);
  return v > 0.0 ? v : 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// PowerSpectrum
// ---------------------------------------------------------------------------

PowerSpectrum PowerSpectrum::sachs_wolfe(double G, double alpha, int ellmax) {
  if (G <= 0.0) throw std::domain_error("sachs_wolfe: G must be positive");
  if (alpha < 2.0) throw std::domain_error("sachs_wolfe: alpha must be >= 2");
  if (ellmax < 1) throw std::domain_error("sachs_wolfe: ellmax must be positive");
  PowerSpectrum s;
  s.kind_ = SpectrumModel::SachsWolfe;
  s.G_ = G;
  s.alpha_ = alpha;
  s.ellmax_ = ellmax;
  return s;
}

PowerSpectrum PowerSpectrum::bardeen(int ellmax) {
  if (ellmax < 1) throw std::domain_error("bardeen: ellmax must be positive");
  PowerSpectrum s;
  s.kind_ = SpectrumModel::Bardeen;
  s.ellmax_ = ellmax;
  return s;
}

PowerSpectrum PowerSpectrum::tabulated(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("tabulated: empty spectrum");
  for (double v : values)
    if (!(v >= 0.0)) throw std::domain_error("tabulated: C_ell must be >= 0");
  PowerSpectrum s;
  s.kind_ = SpectrumModel::Tabulated;
  s.ellmax_ = static_cast<int>(values.size());
  s.table_ = std::move(values);
  return s;
}

PowerSpectrum PowerSpectrum::from_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectrum table: " + path.string());
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream ss(line);
    long ell;
    double c;
    if (!(ss >> ell >> c)) continue;
    if (ell < 0) throw std::runtime_error("spectrum table: negative multipole");
    if (ell == 0) continue;  // monopole excluded by convention
    if (ell > static_cast<long>(values.size())) values.resize(ell, 0.0);
    values[ell - 1] = c;
  }
  if (values.empty()) throw std::runtime_error("spectrum table: no rows");
  return tabulated(std::move(values));
}

double PowerSpectrum::operator()(int ell) const {
  if (ell < 1 || ell > ellmax_)
    throw std::domain_error("PowerSpectrum: ell outside [1, ellmax]");
  switch (kind_) {
    case SpectrumModel::SachsWolfe:
      return G_ * std::pow(static_cast<double>(ell), -alpha_);
    case SpectrumModel::Bardeen:
      return 1.0 / (static_cast<double>(ell) * (ell + 1.0));
    case SpectrumModel::Tabulated:
      return table_[ell - 1];
  }
  return 0.0;
}

double spectrum_eval(const PowerSpectrum& spec, int ell) { return spec(ell); }

// ---------------------------------------------------------------------------
// NeedletWindow
// ---------------------------------------------------------------------------

NeedletWindow::NeedletWindow(double B, int j) : B_(B), j_(j) {
  if (!(B > 1.0)) throw std::domain_error("NeedletWindow: B must exceed 1");
  if (j < 0) throw std::domain_error("NeedletWindow: j must be >= 0");
  scale_pow_ = std::pow(B, j);
}

double NeedletWindow::profile(double xi) const {
  return std::sqrt(b_squared(B_, xi));
}

double NeedletWindow::multiplier(int ell) const {
  if (ell < 0) return 0.0;
  return profile(ell / scale_pow_);
}

int NeedletWindow::ell_min() const {
  double lo = scale_pow_ / B_;
  return static_cast<int>(std::floor(lo)) + 1;
}

int NeedletWindow::ell_max() const {
  double hi = scale_pow_ * B_;
  int m = static_cast<int>(std::ceil(hi)) - 1;
  return m < 1 ? 1 : m;
}

double needlet_multiplier(const NeedletWindow& w, int ell) {
  return w.multiplier(ell);
}

SmoothingKernel SmoothingKernel::ones(int L_K) {
  if (L_K < 0) throw std::domain_error("SmoothingKernel: L_K must be >= 0");
  SmoothingKernel k;
  k.kappa.assign(L_K + 1, 1.0);
  return k;
}

SmoothingKernel SmoothingKernel::band_indicator(const NeedletWindow& w, int L_K) {
  SmoothingKernel k;
  k.kappa.assign(L_K + 1, 0.0);
  for (int ell = std::max(0, w.ell_min()); ell <= std::min(L_K, w.ell_max()); ++ell)
    k.kappa[ell] = 1.0;
  return k;
}

// ---------------------------------------------------------------------------
// Spectral sums
// ---------------------------------------------------------------------------

namespace {

// Banded weights u_ell = b^2(ell/B^j) (2ell+1) C_ell / (4 pi), ell ascending.
struct BandWeights {
  int lo = 0;
  std::vector<double> u;  // index ell - lo
  double sum = 0.0;       // = Var(beta_j)
};

BandWeights band_weights(const NeedletWindow& w, const PowerSpectrum& spec) {
  if (w.ell_max() > spec.ellmax())
    throw std::domain_error(
        "window support exceeds spectrum ellmax (truncated spectrum)");
  BandWeights bw;
  bw.lo = std::max(1, w.ell_min());
  double comp = 0.0;
  for (int ell = bw.lo; ell <= w.ell_max(); ++ell) {
    double b = w.multiplier(ell);
    double v = b * b * (2.0 * ell + 1.0) * spec(ell) / kFourPi;
    bw.u.push_back(v);
    double y = v - comp, t = bw.sum + y;
    comp = (t - bw.sum) - y;
    bw.sum = t;
  }
  return bw;
}

}  // namespace

double field_variance(const NeedletWindow& w, const PowerSpectrum& spec) {
  return band_weights(w, spec).sum;
}

double spectral_moment(const NeedletWindow& w, const PowerSpectrum& spec) {
  auto bw = band_weights(w, spec);
  if (!(bw.sum > 0.0))
    throw std::domain_error("spectral_moment: window carries no power");
  double num = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < bw.u.size(); ++i) {
    int ell = bw.lo + static_cast<int>(i);
    double v = bw.u[i] * 0.5 * ell * (ell + 1.0);
    double y = v - comp, t = num + y;
    comp = (t - num) - y;
    num = t;
  }
  return num / bw.sum;
}

double induced_l2(const NeedletWindow& w, const PowerSpectrum& spec) {
  return kFourPi * spectral_moment(w, spec);
}

double TransformedSpectrum::variance() const {
  double s = 0.0;
  for (int ell = 0; ell < static_cast<int>(values.size()); ++ell)
    s += (2.0 * ell + 1.0) * values[ell] / kFourPi;
  return s;
}

double lambda_jq(const TransformedSpectrum& ts) {
  double num = 0.0, den = 0.0;
  for (int ell = 1; ell <= ts.L_K(); ++ell) {
    double wgt = (2.0 * ell + 1.0) * ts.values[ell] / kFourPi;
    den += wgt;
    num += wgt * 0.5 * ell * (ell + 1.0);
  }
  if (!(den > 0.0))
    throw std::domain_error("lambda_jq: degenerate transformed spectrum");
  return num / den;
}

namespace {

void validate_transform_args(int q, const SmoothingKernel& k) {
  if (q < 1 || q > 4)
    throw std::invalid_argument("transformed_spectrum: q must be in [1, 4]");
  if (k.kappa.empty())
    throw std::invalid_argument("transformed_spectrum: empty kernel");
}

std::uint64_t pack_tuple(const std::vector<int>& t) {
  std::vector<int> s = t;
  std::sort(s.begin(), s.end());
  std::uint64_t key = 0;
  for (int v : s) key = (key << 16) | static_cast<std::uint64_t>(v);
  return key;
}

}  // namespace

TransformedSpectrum transformed_spectrum_generic(int q, const NeedletWindow& w,
                                                 const PowerSpectrum& spec,
                                                 const SmoothingKernel& k) {
  validate_transform_args(q, k);
  if (q < 2)
    throw std::invalid_argument("transformed_spectrum_generic: q must be >= 2");
  auto bw = band_weights(w, spec);
  if (!(bw.sum > 0.0))
    throw std::domain_error("transformed_spectrum: window carries no power");
  const int L_K = k.L_K();
  const int n = static_cast<int>(bw.u.size());

  // Normalized weights: the field is standardized before subordination.
  std::vector<double> wgt(bw.u);
  for (double& v : wgt) v /= bw.sum;

  std::vector<double> acc(L_K + 1, 0.0);
  std::unordered_map<std::uint64_t, std::vector<double>> dist_memo;
  std::vector<int> idx(q, 0), ells(q, 0);
  while (true) {
    double weight = 1.0;
    for (int d = 0; d < q; ++d) {
      weight *= wgt[idx[d]];
      ells[d] = bw.lo + idx[d];
    }
    auto key = pack_tuple(ells);
    auto it = dist_memo.find(key);
    if (it == dist_memo.end())
      it = dist_memo.emplace(key, cg_distribution(ells)).first;
    const auto& dist = it->second;
    int top = std::min<int>(L_K, static_cast<int>(dist.size()) - 1);
    for (int ell = 0; ell <= top; ++ell) acc[ell] += weight * dist[ell];

    int d = q - 1;
    while (d >= 0 && ++idx[d] == n) idx[d--] = 0;
    if (d < 0) break;
  }

  double qfact = 1.0;
  for (int i = 2; i <= q; ++i) qfact *= i;

  TransformedSpectrum ts;
  ts.q = q;
  ts.values.assign(L_K + 1, 0.0);
  for (int ell = 0; ell <= L_K; ++ell) {
    double kap = k(ell);
    ts.values[ell] = qfact * kFourPi / (2.0 * ell + 1.0) * kap * kap * acc[ell];
  }
  return ts;
}

TransformedSpectrum transformed_spectrum(int q, const NeedletWindow& w,
                                         const PowerSpectrum& spec,
                                         const SmoothingKernel& k) {
  validate_transform_args(q, k);
  const int L_K = k.L_K();

  if (q == 1) {
    auto bw = band_weights(w, spec);
    if (!(bw.sum > 0.0))
      throw std::domain_error("transformed_spectrum: window carries no power");
    TransformedSpectrum ts;
    ts.q = 1;
    ts.values.assign(L_K + 1, 0.0);
    for (int ell = 1; ell <= L_K; ++ell) {
      if (ell > spec.ellmax()) break;
      double b = w.multiplier(ell), kap = k(ell);
      ts.values[ell] = b * b * kap * kap * spec(ell) / bw.sum;
    }
    return ts;
  }

  if (q >= 3) return transformed_spectrum_generic(q, w, spec, k);

  // q = 2 pairwise route: C_{ell;j,2} = 2 kappa^2(ell) * 4pi *
  //   sum_{l1 l2} u_{l1} u_{l2} 3j0(ell, l1, l2)^2  with normalized u.
  auto bw = band_weights(w, spec);
  if (!(bw.sum > 0.0))
    throw std::domain_error("transformed_spectrum: window carries no power");
  const int n = static_cast<int>(bw.u.size());
  std::vector<double> wgt(bw.u);
  for (double& v : wgt) v /= bw.sum;

  TransformedSpectrum ts;
  ts.q = 2;
  ts.values.assign(L_K + 1, 0.0);
  for (int ell = 0; ell <= L_K; ++ell) {
    double kap = k(ell);
    if (kap == 0.0) continue;
    double s = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
      int l1 = bw.lo + i;
      for (int jx = 0; jx < n; ++jx) {
        int l2 = bw.lo + jx;
        if (l2 < std::abs(l1 - ell) || l2 > l1 + ell) continue;
        double w3 = wigner3j_zero(ell, l1, l2);
        if (w3 == 0.0) continue;
        double v = wgt[i] * wgt[jx] * w3 * w3;
        double y = v - comp, t = s + y;
        comp = (t - s) - y;
        s = t;
      }
    }
    ts.values[ell] = 2.0 * kap * kap * kFourPi * s;
  }
  return ts;
}

}  // namespace sphlkc
