#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "bullwhip/arma.hpp"
#include "bullwhip/errors.hpp"
#include "bullwhip/inventory.hpp"
#include "bullwhip/simulate.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace bw = bullwhip;
using testsupport::ModelGen;

TEST_SUITE_BEGIN("simulate");

TEST_CASE("streams are reproducible and sigma-linear") {
  bw::RngStream a(42, 3), b(42, 3), c(42, 4), d(42, 3);
  for (int i = 0; i < 8; ++i) {
    const double x = a.normal(1.0);
    CHECK(x == b.normal(1.0));
    CHECK(d.normal(2.5) == 2.5 * x);
  }
  bool all_equal = true;
  bw::RngStream a2(42, 3);
  for (int i = 0; i < 8; ++i) {
    all_equal = all_equal && (a2.normal(1.0) == c.normal(1.0));
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("uniform draws stay strictly inside the unit interval") {
  bw::RngStream s(7, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("white-noise demand is the innovation plus the intercept") {
  bw::RngStream s(1, 0);
  const auto path = bw::generate_demand({5.0, {}, {}, 2.0}, 200, s);
  REQUIRE(path.demand.size() == 200);
  for (std::size_t t = 0; t < 200; ++t) {
    CHECK(path.demand[t] == 5.0 + path.innovations[t]);
  }
}

TEST_CASE("presample pinning starts the path at the stationary mean") {
  bw::RngStream s(2, 0);
  const auto path = bw::generate_demand({10.0, {0.5}, {}, 1.0}, 50, s);
  CHECK(path.demand[0] ==
        doctest::Approx(20.0 + path.innovations[0]).epsilon(1e-14));
}

TEST_CASE("the recursion equals the finite-window moving-average form") {
  ModelGen gen(909);
  for (int i = 0; i < 10; ++i) {
    const bw::ArmaModel m = gen.model(3, 3, false);
    bw::RngStream s(11, static_cast<std::uint64_t>(i));
    const long T = 400;
    const auto path = bw::generate_demand(m, T, s);
    const auto w = bw::psi_recursion(m, static_cast<int>(T));
    const double mu_d = bw::demand_mean(m);

    double scale = 1.0;
    for (const double v : path.demand) scale = std::max(scale, std::fabs(v));
    for (long t = 1; t <= T; ++t) {
      double acc = mu_d;
      for (long k = 0; k < t; ++k) {
        acc += w[static_cast<std::size_t>(k)] *
               path.innovations[static_cast<std::size_t>(t - 1 - k)];
      }
      CHECK(std::fabs(path.demand[static_cast<std::size_t>(t - 1)] - acc) <=
            1e-9 * scale);
    }
  }
}

TEST_CASE("generate_demand rejects bad inputs") {
  bw::RngStream s(3, 0);
  CHECK_THROWS_AS(bw::generate_demand({0.0, {1.2}, {}, 1.0}, 10, s),
                  bw::DomainError);
  CHECK_THROWS_AS(bw::generate_demand({0.0, {0.5}, {}, 1.0}, 0, s),
                  bw::InvalidInputError);
}

TEST_CASE("burn-in resolution enforces the forecast window") {
  bw::SimulationConfig cfg;
  cfg.model = {0.0, {}, {}, 1.0};
  CHECK(bw::resolve_burn_in(cfg) == 2000);

  cfg.burn_in = 900;
  cfg.periods = 1000;
  CHECK(bw::resolve_burn_in(cfg) == 900);

  cfg.periods = 900;
  CHECK_THROWS_AS(bw::resolve_burn_in(cfg), bw::InvalidInputError);

  bw::SimulationConfig arma;
  arma.model = {0.0, {0.95}, {0.4}, 1.0};
  arma.burn_in = 100;  // far below the truncation window
  CHECK_THROWS_AS(bw::resolve_burn_in(arma), bw::InvalidInputError);
}

TEST_CASE("constant-level policy passes demand through untouched") {
  for (const bw::ArmaModel& m :
       {bw::ArmaModel{10.0, {}, {}, 1.0}, bw::ArmaModel{10.0, {}, {0.5}, 1.0},
        bw::ArmaModel{10.0, {}, {0.9, 0.8}, 2.0}}) {
    bw::SimulationConfig cfg;
    cfg.model = m;
    bw::RngStream s(5, 0);
    const long T = 2500;
    const auto path = bw::generate_demand(m, T, s);
    const auto pol = bw::run_out_policy(cfg, path.demand, path.innovations);

    const auto psi = bw::psi_weights(m);
    const double level =
        1.0 * bw::demand_mean(m) +
        bw::safety_factor(0.95) * bw::sigma_hat_l(psi, m.sigma_eps, 1);
    for (long t = 0; t < T; ++t) {
      CHECK(pol.orders[static_cast<std::size_t>(t)] ==
            path.demand[static_cast<std::size_t>(t)]);
      CHECK(pol.out_levels[static_cast<std::size_t>(t)] == level);
    }
  }
}

TEST_CASE("a unit innovation impulse moves orders by the shifted weights") {
  const bw::ArmaModel m{10.0, {0.5}, {}, 1.0};
  const long T = 2100;
  const long t0 = 2050;  // 0-based index of the impulse

  std::vector<double> eps(static_cast<std::size_t>(T), 0.0);
  eps[static_cast<std::size_t>(t0)] = 1.0;
  std::vector<double> demand(static_cast<std::size_t>(T));
  double prev = 20.0;
  for (long t = 0; t < T; ++t) {
    const double d = 10.0 + 0.5 * prev + eps[static_cast<std::size_t>(t)];
    demand[static_cast<std::size_t>(t)] = d;
    prev = d;
  }

  bw::SimulationConfig cfg;
  cfg.model = m;
  cfg.lead_time = 1;
  const auto pol = bw::run_out_policy(cfg, demand, eps);

  CHECK(pol.orders[static_cast<std::size_t>(t0 - 1)] == 20.0);
  CHECK(pol.orders[static_cast<std::size_t>(t0)] == 21.5);   // psi_0 + psi_1
  CHECK(pol.orders[static_cast<std::size_t>(t0 + 1)] == 20.25);  // psi_2
  CHECK(pol.orders[static_cast<std::size_t>(t0 + 2)] == 20.125);  // psi_3
}

TEST_CASE("policy replay and the direct order form agree path by path") {
  ModelGen gen(111);
  int done = 0;
  while (done < 8) {
    const bw::ArmaModel m = gen.model(3, 3, false);
    if (m.p() == 0) continue;  // constant-level dispatch has its own test
    bw::SimulationConfig cfg;
    cfg.model = m;
    cfg.lead_time = gen.uniform_int(1, 5);

    bw::RngStream s(13, static_cast<std::uint64_t>(done));
    const long T = 4000;
    const auto path = bw::generate_demand(m, T, s);
    const auto pol = bw::run_out_policy(cfg, path.demand, path.innovations);
    const auto direct = bw::orders_ma_form(cfg, path.innovations);

    double scale = 1.0;
    for (const double v : pol.orders) scale = std::max(scale, std::fabs(v));
    for (long t = 0; t < T; ++t) {
      CHECK(std::fabs(pol.orders[static_cast<std::size_t>(t)] -
                      direct[static_cast<std::size_t>(t)]) <= 1e-8 * scale);
    }

    // The level moves exactly as much as orders outpace demand.
    for (long t = 1; t < T; ++t) {
      const auto i = static_cast<std::size_t>(t);
      const double level_move = pol.out_levels[i] - pol.out_levels[i - 1];
      const double order_excess = pol.orders[i] - path.demand[i];
      CHECK(std::fabs(level_move - order_excess) <= 1e-9 * scale);
    }
    ++done;
  }
}

TEST_CASE("policy replay validates its series") {
  bw::SimulationConfig cfg;
  cfg.model = {0.0, {0.5}, {}, 1.0};
  const std::vector<double> d(3000, 0.0), e(2999, 0.0);
  CHECK_THROWS_AS(bw::run_out_policy(cfg, d, e), bw::InvalidInputError);
  const std::vector<double> short_d(100, 0.0), short_e(100, 0.0);
  CHECK_THROWS_AS(bw::run_out_policy(cfg, short_d, short_e),
                  bw::InvalidInputError);
}

TEST_CASE("demand statistics match the model they were drawn from") {
  // Long single paths; tolerances sit many standard errors out, so these
  // only fail on real scale or sign-convention defects.
  {
    const bw::ArmaModel m{0.0, {0.9}, {}, 2.0};
    bw::RngStream s(17, 0);
    const auto path = bw::generate_demand(m, 1000000, s);
    const std::span<const double> tail(path.demand.data() + 2000,
                                       path.demand.size() - 2000);
    const double want = bw::demand_variance(m, bw::psi_weights(m));
    CHECK(std::fabs(testsupport::variance_of(tail) - want) <= 0.05 * want);
  }
  {
    const bw::ArmaModel m{0.0, {0.5}, {0.8}, 1.0};
    bw::RngStream s(19, 0);
    const auto path = bw::generate_demand(m, 200000, s);
    const std::span<const double> tail(path.demand.data() + 2000,
                                       path.demand.size() - 2000);
    const auto psi = bw::psi_weights(m);
    double g1 = 0.0;  // theoretical lag-1 autocovariance
    for (int j = 0; j + 1 <= psi.truncation_index(); ++j) {
      g1 += psi.psi(j) * psi.psi(j + 1);
    }
    const double g0 = psi.head_sum_sq();
    // With the additive MA convention psi_1 = 1.3, so the lag-1
    // autocovariance is strongly positive; a subtractive reading of theta
    // would flip it far outside this band.
    const double got = testsupport::acvf(tail, 1);
    CHECK(std::fabs(got - g1) <= 0.04 * g0);
    CHECK(got > 0.5 * g0);
  }
}

TEST_CASE("the estimator is bitwise deterministic in its seed") {
  bw::SimulationConfig cfg;
  cfg.model = {20.0, {0.5}, {}, 1.0};
  cfg.periods = 5000;
  cfg.replications = 4;
  cfg.seed = 99;

  const auto a = bw::estimate_bullwhip(cfg);
  const auto b = bw::estimate_bullwhip(cfg);
  CHECK(a.empirical_m == b.empirical_m);
  CHECK(a.half_width == b.half_width);
  REQUIRE(a.per_replication.size() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(a.per_replication[r].var_d == b.per_replication[r].var_d);
    CHECK(a.per_replication[r].var_o == b.per_replication[r].var_o);
  }

  cfg.seed = 100;
  const auto c = bw::estimate_bullwhip(cfg);
  CHECK(a.empirical_m != c.empirical_m);
}

TEST_CASE("the analytic attachment uses the cross-sum route") {
  bw::SimulationConfig cfg;
  cfg.model = {0.0, {0.95}, {0.4}, 1.0};
  cfg.periods = 7000;
  cfg.replications = 2;
  const auto res = bw::estimate_bullwhip(cfg);
  CHECK(std::fabs(res.analytic_m - 1.137109) < 1e-5);
}

TEST_CASE("pure MA inputs estimate at exactly one") {
  bw::SimulationConfig cfg;
  cfg.model = {10.0, {}, {0.9, 0.8}, 1.0};
  cfg.periods = 2500;
  cfg.replications = 3;
  const auto res = bw::estimate_bullwhip(cfg);
  CHECK(res.empirical_m == 1.0);
  CHECK(res.half_width == 0.0);
  CHECK(res.analytic_m == 1.0);
}

TEST_CASE("traces and sinks expose the replication paths") {
  bw::SimulationConfig cfg;
  cfg.model = {20.0, {0.5}, {}, 1.0};
  cfg.periods = 3000;
  cfg.replications = 3;
  cfg.keep_out_trace = true;

  std::set<int> seen;
  long burn_seen = -1;
  std::size_t span_len = 0;
  const auto res = bw::estimate_bullwhip(
      cfg, [&](int rep, long burn, std::span<const double> demand,
               std::span<const double> orders,
               std::span<const double> out_levels,
               std::span<const double> innovations) {
        seen.insert(rep);
        burn_seen = burn;
        span_len = demand.size();
        CHECK(orders.size() == demand.size());
        CHECK(out_levels.size() == demand.size());
        CHECK(innovations.size() == demand.size());
      });

  CHECK(seen == std::set<int>{0, 1, 2});
  CHECK(burn_seen == bw::resolve_burn_in(cfg));
  CHECK(span_len == 3000);
  REQUIRE(res.out_level_trace.has_value());
  CHECK(res.out_level_trace->size() == 3000);

  cfg.keep_out_trace = false;
  CHECK_FALSE(bw::estimate_bullwhip(cfg).out_level_trace.has_value());
}

TEST_CASE("degenerate innovation scales are reported, tiny ones are fine") {
  bw::SimulationConfig cfg;
  cfg.model = {5.0, {}, {}, 1e-300};
  cfg.periods = 2100;
  cfg.replications = 1;
  CHECK_THROWS_AS(bw::estimate_bullwhip(cfg), bw::DegenerateInputError);

  cfg.model = {5.0, {0.5}, {}, 1e-12};
  cfg.periods = 4000;
  cfg.replications = 2;
  const auto res = bw::estimate_bullwhip(cfg);
  CHECK(std::fabs(res.empirical_m - 1.75) < 0.3);
}

TEST_CASE("estimator configuration errors") {
  bw::SimulationConfig cfg;
  cfg.model = {0.0, {0.5}, {}, 1.0};
  cfg.replications = 0;
  CHECK_THROWS_AS(bw::estimate_bullwhip(cfg), bw::InvalidInputError);

  cfg.replications = 1;
  cfg.periods = 1500;  // at or below the automatic burn-in
  CHECK_THROWS_AS(bw::estimate_bullwhip(cfg), bw::InvalidInputError);

  cfg.periods = 100000;
  cfg.lead_time = 0;
  CHECK_THROWS_AS(bw::estimate_bullwhip(cfg), bw::InvalidInputError);

  cfg.lead_time = 1;
  cfg.service_level = 1.0;
  CHECK_THROWS_AS(bw::estimate_bullwhip(cfg), bw::InvalidInputError);
}

TEST_SUITE_END();
