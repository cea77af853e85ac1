#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "revbound/distribution.hpp"
#include "revbound/rng.hpp"

namespace revbound {

// Every data-parallel kernel has a serial reference path. Both produce
// bit-identical results: work is cut into a fixed set of chunks and partial
// results are combined in chunk order, whatever the thread count.
enum class Exec { serial, parallel };

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t n = 0;
};

namespace kernels {

// Monte Carlo work is split into this many chunks, each with its own stream
// seeded by derive_seed(seed, chunk).
inline constexpr std::size_t kMonteCarloChunks = 64;

struct ChunkMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from mean
};

inline void combine(ChunkMoments& into, const ChunkMoments& part) {
  if (part.n == 0) return;
  if (into.n == 0) {
    into = part;
    return;
  }
  const double n = static_cast<double>(into.n + part.n);
  const double delta = part.mean - into.mean;
  into.mean += delta * static_cast<double>(part.n) / n;
  into.m2 += part.m2 + delta * delta * static_cast<double>(into.n) * static_cast<double>(part.n) / n;
  into.n += part.n;
}

inline std::size_t chunk_begin(std::size_t n, std::size_t chunks, std::size_t c) {
  return n / chunks * c + std::min(c, n % chunks);
}

template <class Draw>
ChunkMoments run_chunk(std::size_t n, std::size_t chunks, std::size_t c, std::uint64_t seed,
                       Draw& draw) {
  Rng rng(derive_seed(seed, c));
  ChunkMoments acc;
  const std::size_t end = chunk_begin(n, chunks, c + 1);
  for (std::size_t i = chunk_begin(n, chunks, c); i < end; ++i) {
    const double x = draw(rng);
    ++acc.n;
    const double delta = x - acc.mean;
    acc.mean += delta / static_cast<double>(acc.n);
    acc.m2 += delta * (x - acc.mean);
  }
  return acc;
}

inline MeanEstimate finish(const std::vector<ChunkMoments>& parts) {
  ChunkMoments total;
  for (const auto& p : parts) combine(total, p);
  MeanEstimate out;
  out.n = total.n;
  out.mean = total.mean;
  if (total.n > 1) {
    const double variance = total.m2 / static_cast<double>(total.n - 1);
    out.standard_error = std::sqrt(variance / static_cast<double>(total.n));
  }
  return out;
}

// Mean and CLT standard error of draw(rng) over n draws.
template <class Draw>
MeanEstimate monte_carlo_mean_serial(std::size_t n, std::uint64_t seed, Draw draw) {
  const std::size_t chunks = std::min(kMonteCarloChunks, std::max<std::size_t>(n, 1));
  std::vector<ChunkMoments> parts(chunks);
  for (std::size_t c = 0; c < chunks; ++c) parts[c] = run_chunk(n, chunks, c, seed, draw);
  return finish(parts);
}

template <class Draw>
MeanEstimate monte_carlo_mean_parallel(std::size_t n, std::uint64_t seed, Draw draw) {
  const std::size_t chunks = std::min(kMonteCarloChunks, std::max<std::size_t>(n, 1));
  std::vector<ChunkMoments> parts(chunks);
  const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1) firstprivate(draw)
  for (std::int64_t c = 0; c < count; ++c) {
    parts[static_cast<std::size_t>(c)] = run_chunk(n, chunks, static_cast<std::size_t>(c), seed, draw);
  }
  return finish(parts);
}

template <class Draw>
MeanEstimate monte_carlo_mean(std::size_t n, std::uint64_t seed, Draw draw, Exec exec) {
  return exec == Exec::parallel ? monte_carlo_mean_parallel(n, seed, draw)
                                : monte_carlo_mean_serial(n, seed, draw);
}

// out[i] = f(i) for i in [0, n).
template <class F>
void fill_serial(std::span<double> out, F f) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
}

template <class F>
void fill_parallel(std::span<double> out, F f) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
}

template <class F>
void fill(std::span<double> out, F f, Exec exec) {
  if (exec == Exec::parallel) {
    fill_parallel(out, f);
  } else {
    fill_serial(out, f);
  }
}

// quantile(levels[i]) for every level.
std::vector<double> quantiles(const Distribution& d, std::span<const double> levels, Exec exec);

// Independent draws from d, chunked like the Monte Carlo kernels.
std::vector<double> draw_samples(const Distribution& d, std::size_t n, std::uint64_t seed, Exec exec);

}  // namespace kernels

}  // namespace revbound
