#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "revbound/distribution.hpp"
#include "revbound/kernels.hpp"

namespace revbound {

// F(V_i) for n independent draws V_i ~ d. For an atomless law these are
// Uniform[0, 1]; laws with atoms are rejected with std::invalid_argument.
std::vector<double> probability_integral_samples(const Distribution& d, std::size_t n,
                                                 std::uint64_t seed, Exec exec = Exec::parallel);

// Kolmogorov-Smirnov distance between the empirical law of `values` and
// Uniform[0, 1].
double ks_statistic_uniform(std::span<const double> values);

// Asymptotic one-sample KS critical value at the 1% level: sqrt(ln(200)/2)/sqrt(n).
double ks_critical_1pct(std::size_t n);

}  // namespace revbound
