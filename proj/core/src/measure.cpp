#include "bullwhip/measure.hpp"

#include <cmath>
#include <sstream>

#include "bullwhip/errors.hpp"

namespace bullwhip {

namespace {

// Weights past the truncation may be read as zero only when the certified
// tail says they are negligible.
constexpr double kNegligibleTailRel = 1e-9;

void require_weights_through(const PsiWeights& psi, int index,
                             const char* caller) {
  if (psi.truncation_index() < index && psi.tail_bound > kNegligibleTailRel) {
    std::ostringstream os;
    os << caller << ": psi series is truncated at index "
       << psi.truncation_index() << " but index " << index
       << " is needed and the tail bound " << psi.tail_bound
       << " is not negligible";
    throw TruncationError(os.str(), psi.tail_bound);
  }
}

void check_lead_time(int lead_time) {
  if (lead_time < 1) {
    throw InvalidInputError("lead_time must be a positive integer");
  }
}

double pow_i(double x, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= x;
  return acc;
}

}  // namespace

BullwhipResult bullwhip_general(const PsiWeights& psi, int lead_time) {
  check_lead_time(lead_time);
  if (psi.weights.empty()) throw InvalidInputError("empty psi series");
  require_weights_through(psi, lead_time + 1, "bullwhip_general");

  const int top = std::min(lead_time, psi.truncation_index());
  double s1 = 0.0;
  double s2 = 0.0;
  for (int j = 0; j <= top; ++j) {
    const double w = psi.weights[static_cast<std::size_t>(j)];
    s1 += w;
    s2 += w * w;
  }
  const double cross = 0.5 * (s1 * s1 - s2);
  const double den = psi.head_sum_sq() * (1.0 + psi.tail_bound);

  BullwhipResult r;
  r.m = 1.0 + 2.0 * cross / den;
  r.lead_time = lead_time;
  r.numerator_cross_sum = cross;
  r.denominator_psi_sq = den;
  r.method = BullwhipMethod::general;
  return r;
}

BullwhipResult bullwhip_ar1(double phi, int lead_time) {
  check_lead_time(lead_time);
  if (!std::isfinite(phi)) throw InvalidInputError("phi must be finite");
  if (!(std::fabs(phi) < 1.0)) {
    throw DomainError("AR(1) is stationary only for |phi| < 1");
  }

  // With psi_j = phi^j the cross sum telescopes into
  // phi (1 - phi^L)(1 - phi^{L+1}) / ((1 - phi)(1 - phi^2)).
  const double num = phi * (1.0 - pow_i(phi, lead_time)) *
                     (1.0 - pow_i(phi, lead_time + 1)) /
                     ((1.0 - phi) * (1.0 - phi * phi));
  const double den = 1.0 / (1.0 - phi * phi);

  BullwhipResult r;
  r.m = 1.0 + 2.0 * num / den;
  r.lead_time = lead_time;
  r.numerator_cross_sum = num;
  r.denominator_psi_sq = den;
  r.method = BullwhipMethod::ar1_closed_form;
  return r;
}

BullwhipResult bullwhip_arma11(double phi, double theta, int lead_time) {
  check_lead_time(lead_time);
  if (!std::isfinite(phi) || !std::isfinite(theta)) {
    throw InvalidInputError("phi and theta must be finite");
  }
  if (!(std::fabs(phi) < 1.0)) {
    throw DomainError("ARMA(1,1) is stationary only for |phi| < 1");
  }
  if (!(std::fabs(theta) < 1.0)) {
    throw DomainError("ARMA(1,1) is invertible only for |theta| < 1");
  }

  // psi_j = (phi + theta) phi^{j-1} for j >= 1; both sums collapse to
  // geometric expressions. Per unit innovation variance:
  //   cross = (phi + theta)(1 - phi^L)
  //           [1 - phi^{L+1} + theta phi (1 - phi^{L-1})]
  //           / ((1 - phi)(1 - phi^2)),
  //   total = (1 + theta^2 + 2 phi theta) / (1 - phi^2).
  const double num = (phi + theta) * (1.0 - pow_i(phi, lead_time)) *
                     (1.0 - pow_i(phi, lead_time + 1) +
                      theta * phi * (1.0 - pow_i(phi, lead_time - 1))) /
                     ((1.0 - phi) * (1.0 - phi * phi));
  const double den =
      (1.0 + theta * theta + 2.0 * phi * theta) / (1.0 - phi * phi);

  BullwhipResult r;
  r.m = 1.0 + 2.0 * num / den;
  r.lead_time = lead_time;
  r.numerator_cross_sum = num;
  r.denominator_psi_sq = den;
  r.method = BullwhipMethod::arma11_closed_form;
  return r;
}

BullwhipResult bullwhip_maq(const std::vector<double>& theta, int lead_time) {
  check_lead_time(lead_time);
  double sum_sq = 1.0;
  for (double t : theta) {
    if (!std::isfinite(t)) throw InvalidInputError("theta must be finite");
    sum_sq += t * t;
  }

  // Constant order-up-to level: orders replicate demand, so the order and
  // demand variances coincide for every lead time.
  BullwhipResult r;
  r.m = 1.0;
  r.lead_time = lead_time;
  r.numerator_cross_sum = 0.0;
  r.denominator_psi_sq = sum_sq;
  r.method = BullwhipMethod::ma_trivial;
  return r;
}

bool bullwhip_exists(const PsiWeights& psi, int lead_time) {
  return bullwhip_general(psi, lead_time).numerator_cross_sum > 0.0;
}

bool bullwhip_increases_at(const PsiWeights& psi, int lead_time) {
  check_lead_time(lead_time);
  if (psi.weights.empty()) throw InvalidInputError("empty psi series");
  require_weights_through(psi, lead_time + 2, "bullwhip_increases_at");

  const int top = std::min(lead_time, psi.truncation_index());
  double s1 = 0.0;
  for (int j = 0; j <= top; ++j) s1 += psi.weights[static_cast<std::size_t>(j)];
  return psi.psi(lead_time + 1) * s1 > 0.0;
}

}  // namespace bullwhip
