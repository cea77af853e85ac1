#pragma once

#include <cstdint>

#include "revbound/distribution.hpp"
#include "revbound/kernels.hpp"

namespace revbound {

// Integral over (0, 1) of g(quantile(u)) with an error estimate. `value` may
// be +inf or -inf when a tail of the integral diverges.
struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;
};

// E[V] = integral of quantile(u) du. Finite discrete laws are summed exactly.
QuadratureEstimate expectation_estimate(const Distribution& d, double tol = 1e-8,
                                        Exec exec = Exec::parallel);

// E[log V] = integral of log(quantile(u)) du.
QuadratureEstimate log_expectation_estimate(const Distribution& d, double tol = 1e-8,
                                            Exec exec = Exec::parallel);

double expectation(const Distribution& d, double tol = 1e-8);
double log_expectation(const Distribution& d, double tol = 1e-8);

// exp(E[log V]); 0 when E[log V] = -inf.
double geometric_expectation(const Distribution& d, double tol = 1e-8);

// Sample mean and standard error of log V over n >= 1000 draws.
MeanEstimate mc_log_expectation(const Distribution& d, std::size_t n, std::uint64_t seed,
                                Exec exec = Exec::parallel);

struct MomentsReport {
  double expectation = 0.0;            // +inf when E[V] diverges
  double expectation_error = 0.0;
  double log_expectation = 0.0;        // -inf when E[log V] diverges
  double geometric_expectation = 0.0;
  double quadrature_error = 0.0;       // error bound on log_expectation
  double mc_estimate = 0.0;            // Monte Carlo cross-check of log_expectation
  double mc_standard_error = 0.0;
  std::size_t mc_samples = 0;
};

struct MomentsOptions {
  double tol = 1e-8;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;
};

MomentsReport moments_report(const Distribution& d, const MomentsOptions& options = {});

}  // namespace revbound
