#include "revbound/kernels.hpp"

namespace revbound::kernels {

std::vector<double> quantiles(const Distribution& d, std::span<const double> levels, Exec exec) {
  std::vector<double> out(levels.size());
  fill(out, [&](std::size_t i) { return d.quantile(levels[i]); }, exec);
  return out;
}

std::vector<double> draw_samples(const Distribution& d, std::size_t n, std::uint64_t seed, Exec exec) {
  std::vector<double> out(n);
  const std::size_t chunks = std::min(kMonteCarloChunks, std::max<std::size_t>(n, 1));
  auto run = [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t end = chunk_begin(n, chunks, c + 1);
    for (std::size_t i = chunk_begin(n, chunks, c); i < end; ++i) out[i] = d.sample(rng);
  };
  if (exec == Exec::parallel) {
    const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < count; ++c) run(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
  }
  return out;
}

}  // namespace revbound::kernels
