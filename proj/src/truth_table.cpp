#include "ptf/truth_table.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ptf {

TruthTable::TruthTable(std::uint32_t nvars, std::vector<std::int8_t> vals)
    : n(nvars), values(std::move(vals)) {
  if (n > kMaxExactVars)
    throw std::invalid_argument("truth table: n exceeds enumeration budget");
  if (values.size() != (std::uint64_t{1} << n))
    throw std::invalid_argument("truth table: length must be 2^n");
  for (std::int8_t v : values)
    if (v != 1 && v != -1)
      throw std::invalid_argument("truth table: entries must be +/-1");
}

std::vector<double> TruthTable::input_point(std::uint64_t index) const {
  std::vector<double> x(n);
  for (std::uint32_t j = 1; j <= n; ++j) x[j - 1] = input_bit(index, j);
  return x;
}

void walsh_hadamard_serial(std::vector<double>& v) {
  const std::size_t sz = v.size();
  for (std::size_t len = 1; len < sz; len <<= 1) {
    for (std::size_t i = 0; i < sz; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

void walsh_hadamard(std::vector<double>& v, Exec exec) {
  if (exec == Exec::serial) {
    walsh_hadamard_serial(v);
    return;
  }
  // Each pass updates disjoint blocks of 2*len entries; every element sees
  // the same sequence of butterflies regardless of scheduling, so the result
  // is bit-identical to the serial transform.
  const std::size_t sz = v.size();
  double* data = v.data();
  for (std::size_t len = 1; len < sz; len <<= 1) {
    const std::int64_t nblocks = static_cast<std::int64_t>(sz / (len << 1));
#pragma omp parallel for schedule(static) if (nblocks >= 8)
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
      const std::size_t i = static_cast<std::size_t>(blk) * (len << 1);
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = data[j];
        const double b = data[j + len];
        data[j] = a + b;
        data[j + len] = a - b;
      }
    }
  }
}

MultilinearPoly fourier_transform(const TruthTable& f, Exec exec) {
  std::vector<double> v(f.values.begin(), f.values.end());
  walsh_hadamard(v, exec);
  const double scale = 1.0 / static_cast<double>(f.size());
  MultilinearPoly p(f.n);
  for (std::uint64_t mask = 0; mask < f.size(); ++mask) {
    const double c = v[mask] * scale;
    if (c != 0.0) p.coeffs.emplace(mask_varset(mask), c);
  }
  return p;
}

namespace {
std::vector<double> dense_coeffs(const MultilinearPoly& p) {
  if (p.n > kMaxExactVars)
    throw std::invalid_argument("dense evaluation: n exceeds budget");
  std::vector<double> v(std::size_t{1} << p.n, 0.0);
  for (const auto& [s, c] : p.coeffs) v[varset_mask(s)] += c;
  return v;
}
}  // namespace

std::vector<double> evaluate_on_cube(const MultilinearPoly& p, Exec exec) {
  std::vector<double> v = dense_coeffs(p);
  walsh_hadamard(v, exec);
  return v;
}

TruthTable sign_table(const MultilinearPoly& p, Exec exec) {
  std::vector<double> v = evaluate_on_cube(p, exec);
  std::vector<std::int8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0.0 ? -1 : +1;
  return TruthTable(p.n, std::move(out));
}

bool has_zero_on_cube(const MultilinearPoly& p, Exec exec) {
  std::vector<double> v = evaluate_on_cube(p, exec);
  for (double t : v)
    if (t == 0.0) return true;
  return false;
}

std::vector<std::uint8_t> serialize_table(const TruthTable& f) {
  std::string header = "ptftt " + std::to_string(f.n) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const std::size_t start = out.size();
  out.resize(start + (f.size() + 7) / 8, 0);
  for (std::uint64_t i = 0; i < f.size(); ++i)
    if (f.values[i] == -1) out[start + i / 8] |= std::uint8_t(1u << (i % 8));
  return out;
}

TruthTable deserialize_table(const std::vector<std::uint8_t>& bytes) {
  static const std::string magic = "ptftt ";
  auto it = std::search(bytes.begin(), bytes.end(), magic.begin(), magic.end());
  if (it != bytes.begin())
    throw std::invalid_argument("truth table blob: bad magic");
  std::size_t pos = magic.size();
  std::uint64_t n = 0;
  bool any = false;
  while (pos < bytes.size() && bytes[pos] != '\n') {
    if (bytes[pos] < '0' || bytes[pos] > '9')
      throw std::invalid_argument("truth table blob: bad header");
    n = n * 10 + (bytes[pos] - '0');
    any = true;
    ++pos;
  }
  if (!any || pos == bytes.size() || n > kMaxExactVars)
    throw std::invalid_argument("truth table blob: bad header");
  ++pos;  // newline
  const std::uint64_t count = std::uint64_t{1} << n;
  if (bytes.size() - pos != (count + 7) / 8)
    throw std::invalid_argument("truth table blob: payload size mismatch");
  std::vector<std::int8_t> vals(count);
  for (std::uint64_t i = 0; i < count; ++i)
    vals[i] = (bytes[pos + i / 8] >> (i % 8)) & 1 ? -1 : +1;
  return TruthTable(static_cast<std::uint32_t>(n), std::move(vals));
}

}  // namespace ptf
