#pragma once

#include <cmath>
#include <cstdint>

namespace ptf {

/// SplitMix64 finalizer, used to derive stream keys from (seed, labels).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator (Philox2x64, 10 rounds).
///
/// Streams are addressed by (root seed, operation id, two free labels);
/// distinct addresses give independent streams, and a stream's output is a
/// pure function of its address and the draw counter.  This is what makes
/// chunked Monte Carlo reproducible under any thread count: chunk c of an
/// estimator always consumes stream (seed, op, c) no matter which thread
/// runs it.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  static Rng stream(std::uint64_t root, std::uint64_t op, std::uint64_t a = 0,
                    std::uint64_t b = 0) {
    std::uint64_t k = mix64(root ^ 0x7065727365757345ULL);
    k = mix64(k ^ mix64(op));
    k = mix64(k ^ mix64(a));
    k = mix64(k ^ mix64(b));
    return Rng(k);
  }

  std::uint64_t next_u64() {
    if (have_ == 0) {
      block(ctr_++, buf_[0], buf_[1]);
      have_ = 2;
    }
    return buf_[--have_];
  }

  /// Uniform in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
  }

  /// Uniform sign in {-1, +1}.
  int sign() { return (next_u64() & 1) ? -1 : +1; }

  /// Uniform integer in [0, bound) by rejection (exact, unbiased).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  /// Standard normal via the Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  void block(std::uint64_t n, std::uint64_t& out0, std::uint64_t& out1) const {
    std::uint64_t c0 = n, c1 = 0, k = key_;
    for (int r = 0; r < 10; ++r) {
      const unsigned __int128 prod =
          static_cast<unsigned __int128>(0xD2B74407B1CE6E93ULL) * c0;
      const std::uint64_t lo = static_cast<std::uint64_t>(prod);
      const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
      c0 = hi ^ k ^ c1;
      c1 = lo;
      k += 0x9E3779B97F4A7C15ULL;
    }
    out0 = c0;
    out1 = c1;
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int have_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stable operation ids for stream derivation.  Append-only.
enum OpId : std::uint64_t {
  kOpGns = 1,
  kOpGi = 2,
  kOpGiReplacement = 3,
  kOpGas = 4,
  kOpPerturbation = 5,
  kOpTailProbe = 6,
  kOpAnticoncGauss = 7,
  kOpAnticoncCube = 8,
  kOpInvarianceCube = 9,
  kOpInvarianceGauss = 10,
  kOpCrossTerm = 11,
  kOpReduction = 12,
  kOpRestrictionSample = 13,
  kOpFamilyDense = 14,
  kOpFamilySparse = 15,
  kOpFamilyRegular = 16,
  kOpFamilyExpansion = 17,
  kOpDataset = 18,
  kOpLabelNoise = 19,
  kOpDecompose = 20,
};

}  // namespace ptf
