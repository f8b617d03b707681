#include "sphlkc/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace sphlkc {

namespace {

// Cumulative log-factorials in long double; the alternating sums below live
// on differences of these, so the table is built once to high accuracy.
class LogFactTable {
 public:
  long double operator()(int n) const {
    if (n < 0) throw std::domain_error("log-factorial of negative argument");
    if (n >= static_cast<int>(table_.size())) grow(n);
    return table_[n];
  }

  LogFactTable() {
    table_.reserve(1024);
    table_.push_back(0.0L);
    grow(1023);
  }

 private:
  void grow(int n) const {
    while (static_cast<int>(table_.size()) <= n) {
      std::size_t k = table_.size();
      table_.push_back(table_.back() + std::log(static_cast<long double>(k)));
    }
  }
  mutable std::vector<long double> table_;
};

const LogFactTable& lf() {
  static LogFactTable t;
  return t;
}

bool triangle_ok(int a, int b, int c) {
  return c >= std::abs(a - b) && c <= a + b;
}

double wigner3j_zero_uncached(int l1, int l2, int l3) {
  int L = l1 + l2 + l3;
  if (L % 2 != 0) return 0.0;
  if (!triangle_ok(l1, l2, l3)) return 0.0;
  int h = L / 2;
  const auto& f = lf();
  long double lg = f(h) - f(h - l1) - f(h - l2) - f(h - l3) +
                   0.5L * (f(L - 2 * l1) + f(L - 2 * l2) + f(L - 2 * l3) - f(L + 1));
  double v = static_cast<double>(std::exp(lg));
  // overall phase (-1)^{L/2}: the fully symmetric form (required by the
  // orthonormality sums and by invariance under column permutations)
  return (h % 2 != 0) ? -v : v;
}

// Memo keyed by the sorted triple (the all-zero symbol is fully symmetric
// under column permutations).
std::uint64_t pack_sorted(int a, int b, int c) {
  int v[3] = {a, b, c};
  std::sort(v, v + 3);
  return (static_cast<std::uint64_t>(v[0]) << 42) |
         (static_cast<std::uint64_t>(v[1]) << 21) |
         static_cast<std::uint64_t>(v[2]);
}

std::shared_mutex g_zero_mutex;
std::unordered_map<std::uint64_t, double> g_zero_cache;

}  // namespace

double wigner3j_zero(int ell1, int ell2, int ell3) {
  if (ell1 < 0 || ell2 < 0 || ell3 < 0) return 0.0;
  if ((ell1 + ell2 + ell3) % 2 != 0 || !triangle_ok(ell1, ell2, ell3)) return 0.0;

  std::uint64_t key = pack_sorted(ell1, ell2, ell3);
  {
    std::shared_lock lock(g_zero_mutex);
    auto it = g_zero_cache.find(key);
    if (it != g_zero_cache.end()) return it->second;
  }
  double v = wigner3j_zero_uncached(ell1, ell2, ell3);
  {
    std::unique_lock lock(g_zero_mutex);
    g_zero_cache.emplace(key, v);
  }
  return v;
}

double wigner3j(const TripleIndex& idx) {
  const int l1 = idx.ell1, l2 = idx.ell2, l3 = idx.ell3;
  const int m1 = idx.m1, m2 = idx.m2, m3 = idx.m3;
  if (l1 < 0 || l2 < 0 || l3 < 0) return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3)
    throw std::domain_error("wigner3j: |m_i| must be <= ell_i");
  if (m1 + m2 + m3 != 0) return 0.0;
  if (!triangle_ok(l1, l2, l3)) return 0.0;
  if (m1 == 0 && m2 == 0 && m3 == 0) return wigner3j_zero(l1, l2, l3);

  const auto& f = lf();
  long double pre =
      0.5L * (f(l1 + l2 - l3) + f(l1 - l2 + l3) + f(-l1 + l2 + l3) - f(l1 + l2 + l3 + 1) +
              f(l1 + m1) + f(l1 - m1) + f(l2 + m2) + f(l2 - m2) + f(l3 + m3) + f(l3 - m3));

  int zmin = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
  int zmax = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});

  // Kahan-compensated alternating sum over z.
  long double sum = 0.0L, comp = 0.0L;
  for (int z = zmin; z <= zmax; ++z) {
    long double lt = pre - (f(z) + f(l1 + l2 - l3 - z) + f(l1 - m1 - z) + f(l2 + m2 - z) +
                            f(l3 - l2 + m1 + z) + f(l3 - l1 - m2 + z));
    long double term = std::exp(lt);
    if (z % 2 != 0) term = -term;
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double v = static_cast<double>(sum);
  return ((l1 - l2 - m3) % 2 != 0) ? -v : v;
}

double clebsch_gordan(int ell1, int m1, int ell2, int m2, int ell3, int m3) {
  double w = wigner3j({ell1, ell2, ell3, m1, m2, -m3});
  double v = std::sqrt(2.0 * ell3 + 1.0) * w;
  return ((ell3 - m3) % 2 != 0) ? -v : v;
}

namespace {

// Squared m=0 Clebsch-Gordan {C^{c0}_{a0 b0}}^2 = (2c+1) 3j0(a,b,c)^2.
double cg0_sq(int a, int b, int c) {
  double w = wigner3j_zero(a, b, c);
  return (2.0 * c + 1.0) * w * w;
}

}  // namespace

std::vector<double> cg_distribution(std::span<const int> ells) {
  const int q = static_cast<int>(ells.size());
  if (q < 2 || q > 4)
    throw std::invalid_argument("cg_distribution: order q must be in [2, 4]");
  for (int l : ells)
    if (l < 0) throw std::domain_error("cg_distribution: multipoles must be >= 0");

  int lsum = 0;
  for (int l : ells) lsum += l;

  // Chain the couplings left to right: dist[c] holds the total squared weight
  // of reaching intermediate multipole c after coupling the first k inputs.
  std::vector<double> dist(lsum + 1, 0.0);
  for (int c = std::abs(ells[0] - ells[1]); c <= ells[0] + ells[1]; ++c)
    dist[c] = cg0_sq(ells[0], ells[1], c);
  for (int k = 2; k < q; ++k) {
    std::vector<double> next(lsum + 1, 0.0);
    for (int a = 0; a <= lsum; ++a) {
      if (dist[a] == 0.0) continue;
      for (int c = std::abs(a - ells[k]); c <= a + ells[k]; ++c)
        next[c] += dist[a] * cg0_sq(a, ells[k], c);
    }
    dist.swap(next);
  }
  return dist;
}

CgConvolution cg_convolution(std::span<const int> ells, int ell) {
  if (ell < 0) throw std::domain_error("cg_convolution: ell must be >= 0");
  auto dist = cg_distribution(ells);
  CgConvolution out;
  out.ells.assign(ells.begin(), ells.end());
  out.ell = ell;
  out.value = ell < static_cast<int>(dist.size()) ? dist[ell] : 0.0;
  return out;
}

}  // namespace sphlkc
