#include "bullwhip/simulate.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "bullwhip/errors.hpp"
#include "bullwhip/inventory.hpp"
#include "bullwhip/measure.hpp"
#include "bullwhip/normal.hpp"

namespace bullwhip {

namespace {

// The policy replay certifies its truncation much harder than the analysis
// default: the forecast sums feed a path-by-path identity check at 1e-8, so
// discarded weights must sit far below that, not merely below 1e-12 in
// summed squares.
constexpr double kPolicyPsiRelTol = 1e-26;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ull);
}

// Unbiased sample variance over a span.
double sample_variance(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw InvalidInputError("variance needs at least two points");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) {
    const double d = v - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

// Shared precomputation for the policy replay: certified weights, their
// exact recursion extension through index N + L (the replay reads shifted
// weights up to that index), and the stationary mean.
struct PolicyContext {
  std::vector<double> ext;  // psi_0 .. psi_{N+L}
  double mu_d = 0.0;
  long n = 0;  // certified truncation index
  PsiWeights psi;
};

PolicyContext make_policy_context(const SimulationConfig& config) {
  PolicyContext ctx;
  ctx.psi = psi_weights(config.model, kPolicyPsiRelTol);
  ctx.n = ctx.psi.truncation_index();
  ctx.ext = psi_recursion(config.model,
                          static_cast<int>(ctx.n) + config.lead_time);
  ctx.mu_d = demand_mean(config.model);
  return ctx;
}

void check_common_config(const SimulationConfig& config) {
  if (config.lead_time < 1) {
    throw InvalidInputError("lead_time must be a positive integer");
  }
  if (!(config.service_level > 0.0 && config.service_level < 1.0)) {
    throw InvalidInputError(
        "service level must lie strictly between 0 and 1");
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : gen_(substream_seed(seed, stream)) {}

double RngStream::uniform01() {
  // 53 random bits, centered so the result never touches 0 or 1.
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal(double sigma) {
  return sigma * inverse_normal_cdf(uniform01());
}

long resolve_burn_in(const SimulationConfig& config) {
  check_common_config(config);
  const PsiWeights psi = psi_weights(config.model, kPolicyPsiRelTol);
  const long n = psi.truncation_index();
  const long window =
      n + config.lead_time + std::max(config.model.p(), config.model.q());

  long burn = config.burn_in;
  if (burn < 0) {
    burn = std::max({2000L, 10L * n, window});
  } else if (burn < window) {
    std::ostringstream os;
    os << "burn_in " << burn << " does not cover the forecast window; need "
       << "at least " << window;
    throw InvalidInputError(os.str());
  }
  if (config.periods <= burn) {
    std::ostringstream os;
    os << "periods " << config.periods << " must exceed burn_in " << burn;
    throw InvalidInputError(os.str());
  }
  return burn;
}

DemandPath generate_demand(const ArmaModel& model, long periods,
                           RngStream& stream) {
  if (periods < 1) throw InvalidInputError("periods must be positive");
  const ValidationVerdict verdict = validate_model(model);
  if (!verdict.passes()) {
    throw DomainError("generate_demand requires a model passing validation");
  }

  const double mu_d = demand_mean(model);
  const int p = model.p();
  const int q = model.q();

  DemandPath path;
  path.demand.resize(static_cast<std::size_t>(periods));
  path.innovations.resize(static_cast<std::size_t>(periods));

  for (long t = 0; t < periods; ++t) {
    const double e = stream.normal(model.sigma_eps);
    path.innovations[static_cast<std::size_t>(t)] = e;
    double acc = model.mu + e;
    for (int k = 1; k <= p; ++k) {
      const double prev =
          t - k >= 0 ? path.demand[static_cast<std::size_t>(t - k)] : mu_d;
      acc += model.phi[static_cast<std::size_t>(k - 1)] * prev;
    }
    for (int j = 1; j <= q; ++j) {
      const double prev =
          t - j >= 0 ? path.innovations[static_cast<std::size_t>(t - j)] : 0.0;
      acc += model.theta[static_cast<std::size_t>(j - 1)] * prev;
    }
    path.demand[static_cast<std::size_t>(t)] = acc;
  }
  return path;
}

OutPolicyPath run_out_policy(const SimulationConfig& config,
                             std::span<const double> demand,
                             std::span<const double> innovations) {
  check_common_config(config);
  const long T = static_cast<long>(demand.size());
  if (T == 0 || demand.size() != innovations.size()) {
    throw InvalidInputError(
        "demand and innovation series must be nonempty and equally long");
  }
  {
    SimulationConfig probe = config;
    probe.periods = T;
    const long burn = resolve_burn_in(probe);
    if (T <= burn + config.lead_time) {
      throw InvalidInputError(
          "series too short: length must exceed burn_in + lead_time");
    }
  }

  const PolicyContext ctx = make_policy_context(config);
  const int L = config.lead_time;
  const double level_mean = static_cast<double>(L) * ctx.mu_d;
  const double z_sigma =
      safety_factor(config.service_level) *
      sigma_hat_l(ctx.psi, config.model.sigma_eps, L);

  OutPolicyPath out;
  out.orders.resize(static_cast<std::size_t>(T));
  out.out_levels.resize(static_cast<std::size_t>(T));

  if (config.model.p() == 0) {
    // Pure MA input: constant order-up-to level, orders track demand.
    for (long t = 0; t < T; ++t) {
      out.orders[static_cast<std::size_t>(t)] =
          demand[static_cast<std::size_t>(t)];
      out.out_levels[static_cast<std::size_t>(t)] = level_mean + z_sigma;
    }
    return out;
  }

  // Lead-time demand forecast DL_t = L mu_d + sum_k W_k eps_{t-k}, where
  // W_k collects the forecast weight every horizon puts on the innovation
  // k periods back.
  const long n = ctx.n;
  std::vector<double> w_lead(static_cast<std::size_t>(n) + 1, 0.0);
  for (long k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int tau = 1; tau <= L; ++tau) {
      s += ctx.ext[static_cast<std::size_t>(k + tau)];
    }
    w_lead[static_cast<std::size_t>(k)] = s;
  }

  double dl_prev = level_mean;  // DL_0: no observed innovations yet
  for (long t = 1; t <= T; ++t) {
    const long kmax = std::min(n, t - 1);
    double acc = 0.0;
    const double* wp = w_lead.data();
    const double* ep = innovations.data() + (t - 1);
    for (long k = 0; k <= kmax; ++k) acc += wp[k] * ep[-k];
    const double dl = level_mean + acc;
    out.orders[static_cast<std::size_t>(t - 1)] =
        (dl - dl_prev) + demand[static_cast<std::size_t>(t - 1)];
    out.out_levels[static_cast<std::size_t>(t - 1)] = dl + z_sigma;
    dl_prev = dl;
  }
  return out;
}

std::vector<double> orders_ma_form(const SimulationConfig& config,
                                   std::span<const double> innovations) {
  check_common_config(config);
  const long T = static_cast<long>(innovations.size());
  if (T == 0) throw InvalidInputError("innovation series must be nonempty");

  const PolicyContext ctx = make_policy_context(config);
  const int L = config.lead_time;
  const long n = ctx.n;

  double front = 0.0;  // psi_0 + ... + psi_L
  for (int j = 0; j <= L; ++j) front += ctx.ext[static_cast<std::size_t>(j)];

  std::vector<double> orders(static_cast<std::size_t>(T));
  for (long t = 1; t <= T; ++t) {
    double acc = front * innovations[static_cast<std::size_t>(t - 1)];
    const long mmax = std::min(n, t - 1);
    const double* cp = ctx.ext.data() + L;
    const double* ep = innovations.data() + (t - 1);
    for (long m = 1; m <= mmax; ++m) acc += cp[m] * ep[-m];
    orders[static_cast<std::size_t>(t - 1)] = ctx.mu_d + acc;
  }
  return orders;
}

SimulationResult estimate_bullwhip(const SimulationConfig& config,
                                   const TraceSink& sink) {
  check_common_config(config);
  if (config.replications < 1) {
    throw InvalidInputError("replications must be a positive integer");
  }
  const long burn = resolve_burn_in(config);
  const long T = config.periods;
  if (T - burn < 2) {
    throw InvalidInputError("need at least two periods past burn_in");
  }

  SimulationResult result;
  result.analytic_m =
      config.model.p() == 0
          ? bullwhip_maq(config.model.theta, config.lead_time).m
          : bullwhip_general(psi_weights(config.model), config.lead_time).m;

  const int reps = config.replications;
  result.per_replication.resize(static_cast<std::size_t>(reps));
  std::vector<double> ratios(static_cast<std::size_t>(reps), 0.0);

  std::exception_ptr first_error = nullptr;
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::mutex sink_mutex;

  auto run_replication = [&](int r) {
    RngStream stream(config.seed, static_cast<std::uint64_t>(r));
    const DemandPath path = generate_demand(config.model, T, stream);
    const OutPolicyPath policy =
        run_out_policy(config, path.demand, path.innovations);

    const auto tail = static_cast<std::size_t>(burn);
    const std::span<const double> d(path.demand.data() + tail,
                                    path.demand.size() - tail);
    const std::span<const double> o(policy.orders.data() + tail,
                                    policy.orders.size() - tail);
    const double var_d = sample_variance(d);
    const double var_o = sample_variance(o);
    if (var_d == 0.0) {
      throw DegenerateInputError(
          "demand variance vanished: the variance ratio is undefined");
    }
    result.per_replication[static_cast<std::size_t>(r)] = {var_d, var_o};
    ratios[static_cast<std::size_t>(r)] = var_o / var_d;

    if (sink) {
      const std::lock_guard<std::mutex> lock(sink_mutex);
      sink(r, burn, path.demand, policy.orders, policy.out_levels,
           path.innovations);
    }
    if (r == 0 && config.keep_out_trace) {
      result.out_level_trace = policy.out_levels;
    }
  };

  auto worker = [&]() {
    while (true) {
      const long r = next.fetch_add(1);
      if (r >= reps || failed.load()) return;
      try {
        run_replication(static_cast<int>(r));
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int nthreads =
      static_cast<int>(std::min<unsigned long>(hw, static_cast<unsigned long>(reps)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  double mean = 0.0;
  for (double m : ratios) mean += m;
  mean /= static_cast<double>(reps);
  result.empirical_m = mean;

  if (reps > 1) {
    double ss = 0.0;
    for (double m : ratios) {
      const double d = m - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(reps - 1));
    result.half_width = inverse_normal_cdf(0.975) * sd /
                        std::sqrt(static_cast<double>(reps));
  } else {
    result.half_width = 0.0;
  }
  return result;
}

}  // namespace bullwhip
