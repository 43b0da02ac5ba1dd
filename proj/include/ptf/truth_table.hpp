#pragma once

#include <cstdint>
#include <vector>

#include "ptf/multilinear.hpp"
#include "ptf/parallel.hpp"

namespace ptf {

/// Largest n accepted by the exact-enumeration operations.
inline constexpr std::uint32_t kMaxExactVars = 26;

/// Dense +/-1 table of a Boolean function on {-1,+1}^n.  Row index i encodes
/// the input x by its bits: bit (j-1) of i clear means x_j = +1, set means
/// x_j = -1.
struct TruthTable {
  std::uint32_t n = 0;
  std::vector<std::int8_t> values;  // length 2^n, entries +/-1

  TruthTable() = default;
  TruthTable(std::uint32_t nvars, std::vector<std::int8_t> vals);

  std::uint64_t size() const { return std::uint64_t{1} << n; }

  static int input_bit(std::uint64_t index, std::uint32_t var) {
    return (index >> (var - 1)) & 1 ? -1 : +1;
  }

  /// The +/-1 input vector encoded by a row index.
  std::vector<double> input_point(std::uint64_t index) const;
};

/// In-place Walsh-Hadamard transform: v[mask] <- sum_i v[i] *
/// (-1)^{popcount(i & mask)}.  Self-inverse up to a factor 2^n.
void walsh_hadamard_serial(std::vector<double>& v);
void walsh_hadamard(std::vector<double>& v, Exec exec = Exec::parallel);

/// Walsh expansion of f: the unique multilinear p with p(x) = f(x) on the
/// hypercube.  O(n 2^n).
MultilinearPoly fourier_transform(const TruthTable& f,
                                  Exec exec = Exec::parallel);

/// Dense evaluation of p on every hypercube point, via the same transform.
std::vector<double> evaluate_on_cube(const MultilinearPoly& p,
                                     Exec exec = Exec::parallel);

/// sign(p) as a table, with sign(0) = +1.
TruthTable sign_table(const MultilinearPoly& p, Exec exec = Exec::parallel);

/// True if p(x) == 0 exactly for some hypercube point (tie inputs).
bool has_zero_on_cube(const MultilinearPoly& p, Exec exec = Exec::parallel);

/// Packed serialization: "ptftt <n>\n" header followed by 2^n bits, 8 per
/// byte, LSB first; a set bit marks f = -1.
std::vector<std::uint8_t> serialize_table(const TruthTable& f);
TruthTable deserialize_table(const std::vector<std::uint8_t>& bytes);

}  // namespace ptf
