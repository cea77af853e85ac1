#pragma once

namespace revbound {

// Principal branch W0 of the Lambert W function: the w >= -1 solving
// w * exp(w) = x, for x >= -1/e. Halley iteration from a branch-point series
// near -1/e, log1p(x) near zero and log x - log log x for large x.
// Throws std::domain_error for x < -1/e - 1e-15.
double lambert_w(double x);

// Checks W(x) <= -1 + sqrt(2(e x + 1)) (+1e-12) for x in [-1/e, 0].
bool lambert_w_upper_check(double x);

// -1 + sqrt(2(e x + 1)), clamped to -1 at the branch point.
double lambert_w_upper_bound(double x);

}  // namespace revbound
