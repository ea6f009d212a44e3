#pragma once

#include "bullwhip/arma.hpp"

namespace bullwhip {

// Safety factor z = Phi^{-1}(service_level), 0 < service_level < 1.
double safety_factor(double service_level);

// Standard deviation of the cumulative forecast error over the protection
// interval: with partial sums P_tau = psi_0 + ... + psi_tau,
//
//   sigma_hat_L = sigma_eps * sqrt( P_0^2 + P_1^2 + ... + P_{L-1}^2 ).
//
// It does not depend on when the forecast is made, only on the weights and
// L. For L = 1 it equals sigma_eps exactly.
double sigma_hat_l(const PsiWeights& psi, double sigma_eps, int lead_time);

// Two safety stock measures at the same service level:
//   ss   = z * sigma_d * sqrt(L)   (demand variability over L periods)
//   sslt = z * sigma_hat_L         (lead-time forecast-error variability)
struct SafetyStocks {
  double ss = 0.0;
  double sslt = 0.0;
};

SafetyStocks safety_stocks(const ArmaModel& model, int lead_time,
                           double service_level);

// Everything the supply-chain performance summary needs, in one pass.
struct ScperfReport {
  double bullwhip = 0.0;
  double demand_mean = 0.0;
  double demand_sd = 0.0;
  double sigma_hat_L = 0.0;
  double safety_factor = 0.0;
  double service_level = 0.0;
  double ss = 0.0;
  double sslt = 0.0;
  int lead_time = 0;
};

// Bundles the bullwhip measure and both safety stocks for one model.
// Pure MA input takes the constant-level route (M = 1); everything else
// goes through bullwhip_general.
ScperfReport scperf(const ArmaModel& model, int lead_time,
                    double service_level);

}  // namespace bullwhip
