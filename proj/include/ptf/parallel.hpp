#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptf {

enum class Exec { serial, parallel };

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline double wall_time() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

/// Splits [0, total) into fixed-size chunks and evaluates
/// fn(chunk_index, begin, end) -> Result for each.  The chunk layout depends
/// only on (total, chunk_size), never on the thread count, and the returned
/// vector is ordered by chunk index; callers merge it serially.  Identical
/// results for Exec::serial and Exec::parallel at any thread count.
template <class Result, class Fn>
std::vector<Result> run_chunks(std::uint64_t total, std::uint64_t chunk_size,
                               Fn&& fn, Exec exec = Exec::parallel) {
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t nchunks =
      total == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
  std::vector<Result> results(nchunks);
  const std::int64_t nc = static_cast<std::int64_t>(nchunks);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
    const std::uint64_t end = std::min(begin + chunk_size, total);
    results[static_cast<std::size_t>(c)] =
        fn(static_cast<std::uint64_t>(c), begin, end);
  }
  return results;
}

/// Default Monte Carlo chunk: small enough to load-balance, large enough to
/// amortize stream setup.
inline constexpr std::uint64_t kMcChunk = 1 << 14;

}  // namespace ptf
