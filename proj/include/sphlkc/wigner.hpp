#pragma once

#include <span>
#include <vector>

namespace sphlkc {

struct TripleIndex {
  int ell1, ell2, ell3;
  int m1, m2, m3;
};

/// Wigner 3j symbol with all m = 0. Zero for odd ell1+ell2+ell3 or triangle
/// violation; otherwise the signed square-root factorial expression evaluated
/// with log-factorials. Values are memoized (the spectra sums reuse them
/// heavily); the cache is guarded for concurrent use.
double wigner3j_zero(int ell1, int ell2, int ell3);

/// General Wigner 3j symbol via the alternating Racah sum with log-factorials
/// and compensated summation. Selection-rule failures return 0, not an error.
double wigner3j(const TripleIndex& idx);

/// Clebsch-Gordan coefficient C^{l3 m3}_{l1 m1 l2 m2} =
/// (-1)^{l3-m3} sqrt(2 l3 + 1) * 3j(l1, l2, l3; m1, m2, -m3).
double clebsch_gordan(int ell1, int m1, int ell2, int m2, int ell3, int m3);

struct CgConvolution {
  std::vector<int> ells;
  int ell;
  double value;  // >= 0; sums to 1 over ell
};

/// Chained Clebsch-Gordan convolution C(ell_1, ..., ell_q, ell): the squared
/// m=0 coupling chain summed over intermediate multipoles. Supports q in
/// [2, 4] (the lambda sum grows combinatorially with q).
CgConvolution cg_convolution(std::span<const int> ells, int ell);

/// Full distribution over ell = 0 .. sum(ells) in one pass; entry [ell]
/// equals cg_convolution(ells, ell).value.
std::vector<double> cg_distribution(std::span<const int> ells);

}
