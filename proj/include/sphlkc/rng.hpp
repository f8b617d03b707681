#pragma once

#include <array>
#include <cstdint>

namespace sphlkc {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). Streams are
// addressed purely by (key, counter), so Monte Carlo draws keyed by
// (seed, replicate, stream, ell, m) are order-independent and reproducible
// under any parallel schedule.
struct Philox4x32 {
  static constexpr std::uint32_t kW32A = 0x9E3779B9u;
  static constexpr std::uint32_t kW32B = 0xBB67AE85u;
  static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
  static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kM4x32A) * ctr[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(kM4x32B) * ctr[2];
      std::array<std::uint32_t, 4> next = {
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
          static_cast<std::uint32_t>(p0)};
      ctr = next;
      key[0] += kW32A;
      key[1] += kW32B;
    }
    return ctr;
  }
};

struct NormalPair {
  double z0, z1;
};

/// Two independent standard normals from one Philox block via Box-Muller.
inline NormalPair counter_normals(std::uint64_t seed, std::uint32_t replicate,
                                  std::uint32_t stream, std::uint32_t ell,
                                  std::uint32_t m) {
  auto out = Philox4x32::block(
      {replicate, stream, ell, m},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  auto to_uniform = [](std::uint32_t hi, std::uint32_t lo) {
    std::uint64_t u = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(u) + 1.0) * 0x1p-64;  // in (0, 1]
  };
  double u1 = to_uniform(out[0], out[1]);
  double u2 = to_uniform(out[2], out[3]);
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586 * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace sphlkc
