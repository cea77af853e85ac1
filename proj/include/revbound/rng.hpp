#pragma once

#include <cstdint>
#include <random>

namespace revbound {

// Caller-owned random state. Uniform draws are built from raw engine bits so
// that sample streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform_open();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed for chunk `stream` of a run seeded with `master`
// (splitmix64 finalizer over the pair).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace revbound
