#pragma once

#include <vector>

#include "bullwhip/arma.hpp"

namespace bullwhip {

// The bullwhip measure compares order variance with demand variance for a
// single-retailer order-up-to policy replenishing over L periods (lead time
// plus the review period, so L >= 1) with MMSE demand forecasts:
//
//   M = Var(O_t) / Var(d_t)
//     = 1 + 2 * [ sum_{0<=i<j<=L} psi_i psi_j ] / [ sum_{j>=0} psi_j^2 ].
//
// M > 1 means orders amplify demand variability.

enum class BullwhipMethod {
  general,             // cross-sum over the truncated psi series
  ar1_closed_form,     // AR(1) formula in phi and L
  arma11_closed_form,  // ARMA(1,1) formula in phi, theta and L
  ma_trivial,          // pure MA demand under a constant order-up-to level
};

struct BullwhipResult {
  double m = 0.0;
  int lead_time = 0;
  double numerator_cross_sum = 0.0;  // sum_{0<=i<j<=L} psi_i psi_j
  double denominator_psi_sq = 0.0;   // tail-corrected sum psi_j^2
  BullwhipMethod method = BullwhipMethod::general;
};

// Cross-sum route, valid for any stationary model. The numerator uses the
// identity sum_{i<j} psi_i psi_j = ((sum psi_j)^2 - sum psi_j^2) / 2 over
// j = 0..L; the denominator is head_sum_sq() * (1 + tail_bound).
//
// Weights beyond the truncation index are treated as zero, which is sound
// only when the certified tail is negligible; otherwise a TruncationError
// is thrown. lead_time < 1 throws InvalidInputError.
BullwhipResult bullwhip_general(const PsiWeights& psi, int lead_time);

// AR(1):  M = 1 + 2 phi (1 - phi^L)(1 - phi^{L+1}) / (1 - phi),  |phi| < 1.
BullwhipResult bullwhip_ar1(double phi, int lead_time);

// ARMA(1,1), |phi| < 1 and |theta| < 1:
//
//   M = 1 + 2 (phi + theta)(1 - phi^L)
//             [1 - phi^{L+1} + theta phi (1 - phi^{L-1})]
//           / [(1 - phi)(1 + theta^2 + 2 phi theta)].
BullwhipResult bullwhip_arma11(double phi, double theta, int lead_time);

// Pure MA(q) demand treated as a driftless i.i.d.-mean stream: the
// order-up-to level is held constant, orders equal demand one for one, and
// M = 1 for every lead time. This is a deliberately different policy from
// the forecast-difference route, which for q >= 1 yields M != 1; both are
// exposed and the simulator follows this one for pure MA input.
BullwhipResult bullwhip_maq(const std::vector<double>& theta, int lead_time);

// True when the cross-sum is positive, i.e. order variance strictly exceeds
// demand variance at this lead time.
bool bullwhip_exists(const PsiWeights& psi, int lead_time);

// True when M(lead_time + 1) > M(lead_time). Both share a denominator, so
// this reduces to the sign of psi_{L+1} * sum_{j<=L} psi_j.
bool bullwhip_increases_at(const PsiWeights& psi, int lead_time);

}  // namespace bullwhip
