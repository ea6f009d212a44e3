#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bullwhip/arma.hpp"

namespace bullwhip {

// Reproducible random stream for one replication. Sub-stream seeds are
// derived from (seed, stream index) with a SplitMix64 mix, so replications
// are statistically independent yet fully determined by the pair, whatever
// order they run in. Normal draws go through the inverse CDF, which keeps
// sequences bitwise identical across platforms.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  // uniform draw in the open interval (0, 1)
  double uniform01();

  // N(0, sigma^2) draw
  double normal(double sigma);

 private:
  std::mt19937_64 gen_;
};

struct SimulationConfig {
  ArmaModel model;
  int lead_time = 1;
  double service_level = 0.95;
  long periods = 100000;  // simulated periods per replication, burn-in included
  long burn_in = -1;      // discarded leading periods; -1 picks the default rule
  int replications = 20;
  std::uint64_t seed = 42;
  bool keep_out_trace = false;  // retain replication 0's order-up-to levels
};

// Burn-in actually used: the configured value, or
// max(2000, 10 * truncation index, truncation index + L + max(p, q)) when
// unset. Must stay below periods, and a configured value must still cover
// the truncation window; violations throw InvalidInputError.
long resolve_burn_in(const SimulationConfig& config);

struct DemandPath {
  std::vector<double> demand;       // d_1 .. d_T
  std::vector<double> innovations;  // eps_1 .. eps_T
};

// Simulates the demand recursion for `periods` steps. Presample demand is
// pinned at the stationary mean and presample innovations at zero, which is
// exactly the moving-average representation with zero history, so the
// simulated path matches that representation term for term.
DemandPath generate_demand(const ArmaModel& model, long periods,
                           RngStream& stream);

struct OutPolicyPath {
  std::vector<double> orders;      // O_1 .. O_T
  std::vector<double> out_levels;  // S_1 .. S_T
};

// Replays the order-up-to policy over a realized path. Writing DL_t for the
// sum of the tau = 1..L MMSE forecasts made at t from the recorded
// innovations, the policy is
//
//   S_t = DL_t + z * sigma_hat_L,       O_t = (DL_t - DL_{t-1}) + d_t,
//
// with negative orders allowed (returns are permitted). For pure MA input
// the level is held constant instead (DL_t = L * mu_d), so orders equal
// demand exactly; see bullwhip_maq.
OutPolicyPath run_out_policy(const SimulationConfig& config,
                             std::span<const double> demand,
                             std::span<const double> innovations);

// The same orders assembled directly from the innovation sequence through
// the MA form of the order process,
//
//   O_t = mu_d + (psi_0 + ... + psi_L) eps_t + sum_{j>=1} psi_{L+j} eps_{t-j},
//
// an algebraically independent route that must agree with run_out_policy
// path by path (for the forecast-difference policy, i.e. p >= 1 or white
// noise).
std::vector<double> orders_ma_form(const SimulationConfig& config,
                                   std::span<const double> innovations);

struct ReplicationStats {
  double var_d = 0.0;  // demand sample variance past burn-in
  double var_o = 0.0;  // order sample variance past burn-in
};

struct SimulationResult {
  double empirical_m = 0.0;  // mean of per-replication variance ratios
  double analytic_m = 0.0;
  double half_width = 0.0;   // 95% normal-approximation CI half width
  std::vector<ReplicationStats> per_replication;
  std::optional<std::vector<double>> out_level_trace;
};

// Optional per-replication observer (e.g. to dump traces). Invoked once per
// replication, possibly from worker threads; spans are only valid during
// the call.
using TraceSink = std::function<void(
    int replication, long burn_in, std::span<const double> demand,
    std::span<const double> orders, std::span<const double> out_levels,
    std::span<const double> innovations)>;

// Monte-Carlo estimate of the bullwhip measure with its analytic
// counterpart attached. Replications run on independent sub-streams and
// aggregate into per-replication slots, so results are identical no matter
// how many threads execute them. Throws DegenerateInputError if a
// replication produces zero demand variance.
SimulationResult estimate_bullwhip(const SimulationConfig& config,
                                   const TraceSink& sink = {});

}  // namespace bullwhip
