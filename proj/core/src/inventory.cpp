#include "bullwhip/inventory.hpp"

#include <cmath>
#include <sstream>

#include "bullwhip/errors.hpp"
#include "bullwhip/measure.hpp"
#include "bullwhip/normal.hpp"

namespace bullwhip {

double safety_factor(double service_level) {
  if (!(service_level > 0.0 && service_level < 1.0)) {
    throw InvalidInputError(
        "service level must lie strictly between 0 and 1");
  }
  return inverse_normal_cdf(service_level);
}

double sigma_hat_l(const PsiWeights& psi, double sigma_eps, int lead_time) {
  if (lead_time < 1) {
    throw InvalidInputError("lead_time must be a positive integer");
  }
  if (!(sigma_eps > 0.0) || !std::isfinite(sigma_eps)) {
    throw InvalidInputError("sigma_eps must be positive and finite");
  }
  if (psi.weights.empty()) throw InvalidInputError("empty psi series");
  if (psi.truncation_index() < lead_time - 1 && psi.tail_bound > 1e-9) {
    std::ostringstream os;
    os << "sigma_hat_l: psi series is truncated at index "
       << psi.truncation_index() << " but index " << lead_time - 1
       << " is needed and the tail bound " << psi.tail_bound
       << " is not negligible";
    throw TruncationError(os.str(), psi.tail_bound);
  }

  // The error of the cumulative L-period forecast made at t is
  // sum_{tau=1..L} sum_{j=0..tau-1} psi_j eps_{t+tau-j}; grouping by
  // innovation gives independent terms with weights P_0 .. P_{L-1}.
  double bracket = 0.0;
  double partial = 0.0;
  for (int tau = 0; tau < lead_time; ++tau) {
    partial += psi.psi(tau);
    bracket += partial * partial;
  }
  return sigma_eps * std::sqrt(bracket);
}

SafetyStocks safety_stocks(const ArmaModel& model, int lead_time,
                           double service_level) {
  const PsiWeights psi = psi_weights(model);
  const double z = safety_factor(service_level);
  const double sd = std::sqrt(demand_variance(model, psi));

  SafetyStocks s;
  s.ss = z * sd * std::sqrt(static_cast<double>(lead_time));
  s.sslt = z * sigma_hat_l(psi, model.sigma_eps, lead_time);
  return s;
}

ScperfReport scperf(const ArmaModel& model, int lead_time,
                    double service_level) {
  const PsiWeights psi = psi_weights(model);
  const double z = safety_factor(service_level);
  const double sd = std::sqrt(demand_variance(model, psi));
  const double shl = sigma_hat_l(psi, model.sigma_eps, lead_time);
  const BullwhipResult bw = model.p() == 0
                                ? bullwhip_maq(model.theta, lead_time)
                                : bullwhip_general(psi, lead_time);

  ScperfReport r;
  r.bullwhip = bw.m;
  r.demand_mean = demand_mean(model);
  r.demand_sd = sd;
  r.sigma_hat_L = shl;
  r.safety_factor = z;
  r.service_level = service_level;
  r.ss = z * sd * std::sqrt(static_cast<double>(lead_time));
  r.sslt = z * shl;
  r.lead_time = lead_time;
  return r;
}

}  // namespace bullwhip
