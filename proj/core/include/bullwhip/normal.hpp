#pragma once

namespace bullwhip {

// Inverse standard normal CDF, evaluated by a high-accuracy rational
// approximation (absolute error below 1e-9 over (0, 1), in practice near
// machine precision). Throws InvalidInputError unless 0 < p < 1.
double inverse_normal_cdf(double p);

// Standard normal CDF via the complementary error function. Kept as an
// algorithmically independent counterpart of inverse_normal_cdf so the two
// can be round-trip tested against each other.
double normal_cdf(double x);

}  // namespace bullwhip
