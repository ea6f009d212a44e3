// Command-line front end: bullwhip measure, safety stocks, psi weights,
// reference tables, parameter sweeps and the Monte-Carlo cross-check.
//
// Exit codes: 0 success, 2 invalid input, 3 model outside the supported
// domain (non-stationary, non-invertible, redundant, unreachable tolerance),
// 4 unexpected failure. Usage errors exit with CLI11's own codes.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bullwhip/arma.hpp"
#include "bullwhip/errors.hpp"
#include "bullwhip/inventory.hpp"
#include "bullwhip/measure.hpp"
#include "bullwhip/simulate.hpp"

namespace bw = bullwhip;
using nlohmann::json;

namespace {

// Shortest decimal string that round-trips to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct ModelArgs {
  double mu = 0.0;
  std::vector<double> phi;
  std::vector<double> theta;
  double sigma = 1.0;

  bw::ArmaModel to_model() const { return {mu, phi, theta, sigma}; }
};

void add_model_options(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--mu", args.mu, "demand intercept, >= 0 (default 0)");
  cmd->add_option("--phi", args.phi,
                  "AR coefficient, repeat for higher lags (in lag order)");
  cmd->add_option("--theta", args.theta,
                  "MA coefficient, repeat for higher lags (in lag order)");
  cmd->add_option("--sigma", args.sigma,
                  "innovation standard deviation (default 1)");
}

struct RenderArgs {
  std::string format = "text";
  int precision = -1;
};

void add_render_options(CLI::App* cmd, RenderArgs& args) {
  cmd->add_option("--format", args.format, "output format (default text)")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--precision", args.precision,
                  "decimal digits for all text fields (default: per-field)")
      ->check(CLI::Range(0, 17));
}

// Per-field text precision; a --precision value overrides every field.
struct TextPrecision {
  int measure = 5;  // bullwhip measure
  int stat = 4;     // means, deviations, safety factor
  int stock = 3;    // SS and SSLT
  int weight = 6;   // psi weights
};

TextPrecision text_precision(const RenderArgs& args) {
  TextPrecision p;
  if (args.precision >= 0) {
    p.measure = p.stat = p.stock = p.weight = args.precision;
  }
  return p;
}

json request_json(const ModelArgs& margs) {
  return json{{"mu", margs.mu},
              {"phi", margs.phi},
              {"theta", margs.theta},
              {"sigma_eps", margs.sigma}};
}

// ---------------------------------------------------------------- scperf

int run_scperf(const ModelArgs& margs, int lead_time, double service_level,
               const RenderArgs& render) {
  const bw::ScperfReport rep =
      bw::scperf(margs.to_model(), lead_time, service_level);

  if (render.format == "json") {
    json req = request_json(margs);
    req["lead_time"] = lead_time;
    req["service_level"] = service_level;
    const json j{{"bullwhip", rep.bullwhip},
                 {"demand_mean", rep.demand_mean},
                 {"demand_sd", rep.demand_sd},
                 {"sigma_hat_L", rep.sigma_hat_L},
                 {"safety_factor", rep.safety_factor},
                 {"service_level", rep.service_level},
                 {"ss", rep.ss},
                 {"sslt", rep.sslt},
                 {"lead_time", rep.lead_time},
                 {"request", req}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (render.format == "csv") {
    std::cout << "bullwhip,demand_mean,demand_sd,sigma_hat_L,safety_factor,"
                 "service_level,ss,sslt,lead_time\n"
              << shortest(rep.bullwhip) << ',' << shortest(rep.demand_mean)
              << ',' << shortest(rep.demand_sd) << ','
              << shortest(rep.sigma_hat_L) << ','
              << shortest(rep.safety_factor) << ','
              << shortest(rep.service_level) << ',' << shortest(rep.ss) << ','
              << shortest(rep.sslt) << ',' << rep.lead_time << "\n";
    return 0;
  }

  const TextPrecision p = text_precision(render);
  std::printf("bullwhip       %s\n", fixed(rep.bullwhip, p.measure).c_str());
  std::printf("demand_mean    %s\n", fixed(rep.demand_mean, p.stat).c_str());
  std::printf("demand_sd      %s\n", fixed(rep.demand_sd, p.stat).c_str());
  std::printf("sigma_hat_L    %s\n", fixed(rep.sigma_hat_L, p.stat).c_str());
  std::printf("safety_factor  %s\n",
              fixed(rep.safety_factor, p.stat).c_str());
  std::printf("service_level  %s\n", shortest(rep.service_level).c_str());
  std::printf("ss             %s\n", fixed(rep.ss, p.stock).c_str());
  std::printf("sslt           %s\n", fixed(rep.sslt, p.stock).c_str());
  std::printf("lead_time      %d\n", rep.lead_time);
  return 0;
}

// ------------------------------------------------------------------- psi

int run_psi(const ModelArgs& margs, int terms, const RenderArgs& render) {
  const bw::PsiWeights psi = bw::psi_weights(margs.to_model());

  std::vector<double> w(static_cast<std::size_t>(terms) + 1);
  std::vector<double> partial(w.size());
  std::vector<double> sq(w.size());
  double run = 0.0, run_sq = 0.0;
  for (int j = 0; j <= terms; ++j) {
    const double v = psi.psi(j);
    run += v;
    run_sq += v * v;
    w[static_cast<std::size_t>(j)] = v;
    partial[static_cast<std::size_t>(j)] = run;
    sq[static_cast<std::size_t>(j)] = run_sq;
  }

  if (render.format == "json") {
    json req = request_json(margs);
    req["terms"] = terms;
    const json j{{"weights", w},
                 {"partial_sums", partial},
                 {"cum_sum_sq", sq},
                 {"truncation_index", psi.truncation_index()},
                 {"tail_bound", psi.tail_bound},
                 {"request", req}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (render.format == "csv") {
    std::cout << "j,psi,partial_sum,cum_sum_sq\n";
    for (int j = 0; j <= terms; ++j) {
      const auto i = static_cast<std::size_t>(j);
      std::cout << j << ',' << shortest(w[i]) << ',' << shortest(partial[i])
                << ',' << shortest(sq[i]) << "\n";
    }
    return 0;
  }

  const TextPrecision p = text_precision(render);
  const int width = p.weight + 8;
  std::printf("%4s  %*s  %*s  %*s\n", "j", width, "psi", width, "psi_sum",
              width, "psi_sq_sum");
  for (int j = 0; j <= terms; ++j) {
    const auto i = static_cast<std::size_t>(j);
    std::printf("%4d  %*s  %*s  %*s\n", j, width,
                fixed(w[i], p.weight).c_str(), width,
                fixed(partial[i], p.weight).c_str(), width,
                fixed(sq[i], p.weight).c_str());
  }
  return 0;
}

// -------------------------------------------------------------- validate

int run_validate(const ModelArgs& margs, const RenderArgs& render) {
  const bw::ValidationVerdict v = bw::validate_model(margs.to_model());

  const auto root_row = [](const std::complex<double>& z) {
    return json{{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}};
  };

  if (render.format == "json") {
    json ar = json::array(), ma = json::array();
    for (const auto& z : v.ar_roots) ar.push_back(root_row(z));
    for (const auto& z : v.ma_roots) ma.push_back(root_row(z));
    const json j{{"stationary", v.stationary},
                 {"invertible", v.invertible},
                 {"redundant", v.redundant},
                 {"passes", v.passes()},
                 {"ar_roots", ar},
                 {"ma_roots", ma},
                 {"request", request_json(margs)}};
    std::cout << j.dump(2) << "\n";
  } else {
    const auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::printf("stationary  %s\n", yn(v.stationary));
    std::printf("invertible  %s\n", yn(v.invertible));
    std::printf("redundant   %s\n", yn(v.redundant));
    const auto print_roots = [](const char* label, const auto& roots) {
      for (const auto& z : roots) {
        std::printf("%s  %+.6f%+.6fi  modulus %.6f\n", label, z.real(),
                    z.imag(), std::abs(z));
      }
    };
    print_roots("ar_root   ", v.ar_roots);
    print_roots("ma_root   ", v.ma_roots);
  }

  if (v.passes()) return 0;
  if (!v.stationary) {
    std::cerr << "error: AR polynomial root inside or on the unit circle "
                 "(not stationary)\n";
  } else if (!v.invertible) {
    std::cerr << "error: MA polynomial root inside or on the unit circle "
                 "(not invertible)\n";
  } else {
    std::cerr << "error: AR and MA polynomials share a root "
                 "(redundant parameterization)\n";
  }
  return 3;
}

// ----------------------------------------------------------------- table

int run_table(int id, const RenderArgs& render) {
  if (id == 1) {
    static constexpr double kPairs[3][2] = {
        {-0.2, 0.7}, {0.6, -0.4}, {0.7, 0.2}};
    bw::PsiWeights psi[3];
    for (int i = 0; i < 3; ++i) {
      psi[i] = bw::psi_weights(
          bw::ArmaModel{0.0, {kPairs[i][0], kPairs[i][1]}, {}, 1.0});
    }
    if (render.format == "json") {
      json models = json::array();
      for (int i = 0; i < 3; ++i) {
        json ms = json::array();
        for (int L = 1; L <= 10; ++L) {
          ms.push_back(bw::bullwhip_general(psi[i], L).m);
        }
        models.push_back(json{{"phi", {kPairs[i][0], kPairs[i][1]}},
                              {"m", ms}});
      }
      std::cout << json{{"table", 1}, {"models", models}}.dump(2) << "\n";
    } else if (render.format == "csv") {
      std::cout << "phi1,phi2,lead_time,m\n";
      for (int i = 0; i < 3; ++i) {
        for (int L = 1; L <= 10; ++L) {
          std::cout << shortest(kPairs[i][0]) << ',' << shortest(kPairs[i][1])
                    << ',' << L << ','
                    << fixed(bw::bullwhip_general(psi[i], L).m, 6) << "\n";
        }
      }
    } else {
      std::printf("%3s  %12s  %12s  %12s\n", "L", "AR(-0.2,0.7)",
                  "AR(0.6,-0.4)", "AR(0.7,0.2)");
      for (int L = 1; L <= 10; ++L) {
        std::printf("%3d  %12s  %12s  %12s\n", L,
                    fixed(bw::bullwhip_general(psi[0], L).m, 6).c_str(),
                    fixed(bw::bullwhip_general(psi[1], L).m, 6).c_str(),
                    fixed(bw::bullwhip_general(psi[2], L).m, 6).c_str());
      }
    }
    return 0;
  }

  const bw::ArmaModel model{0.0, {0.95}, {0.4}, 1.0};

  if (id == 2) {
    if (render.format == "json") {
      json rows = json::array();
      for (int L = 1; L <= 10; ++L) {
        const bw::ScperfReport rep = bw::scperf(model, L, 0.95);
        rows.push_back(json{{"lead_time", L},
                            {"m", rep.bullwhip},
                            {"ss", rep.ss},
                            {"sslt", rep.sslt}});
      }
      std::cout << json{{"table", 2},
                        {"model", {{"phi", {0.95}}, {"theta", {0.4}}}},
                        {"service_level", 0.95},
                        {"rows", rows}}
                       .dump(2)
                << "\n";
    } else if (render.format == "csv") {
      std::cout << "lead_time,m,ss,sslt\n";
      for (int L = 1; L <= 10; ++L) {
        const bw::ScperfReport rep = bw::scperf(model, L, 0.95);
        std::cout << L << ',' << fixed(rep.bullwhip, 5) << ','
                  << fixed(rep.ss, 3) << ',' << fixed(rep.sslt, 3) << "\n";
      }
    } else {
      std::printf("%3s  %9s  %8s  %8s\n", "L", "M", "SS", "SSLT");
      for (int L = 1; L <= 10; ++L) {
        const bw::ScperfReport rep = bw::scperf(model, L, 0.95);
        std::printf("%3d  %9s  %8s  %8s\n", L, fixed(rep.bullwhip, 5).c_str(),
                    fixed(rep.ss, 3).c_str(), fixed(rep.sslt, 3).c_str());
      }
    }
    return 0;
  }

  // Table 3: both stocks for SL = 0.90..0.99 and L = 1..3.
  if (render.format == "json") {
    json rows = json::array();
    for (int slc = 90; slc <= 99; ++slc) {
      const double sl = slc / 100.0;
      json cells = json::array();
      for (int L = 1; L <= 3; ++L) {
        const bw::SafetyStocks st = bw::safety_stocks(model, L, sl);
        cells.push_back(
            json{{"lead_time", L}, {"ss", st.ss}, {"sslt", st.sslt}});
      }
      rows.push_back(json{{"service_level", sl}, {"cells", cells}});
    }
    std::cout << json{{"table", 3},
                      {"model", {{"phi", {0.95}}, {"theta", {0.4}}}},
                      {"rows", rows}}
                     .dump(2)
              << "\n";
  } else if (render.format == "csv") {
    std::cout
        << "service_level,ss_l1,sslt_l1,ss_l2,sslt_l2,ss_l3,sslt_l3\n";
    for (int slc = 90; slc <= 99; ++slc) {
      const double sl = slc / 100.0;
      std::cout << fixed(sl, 2);
      for (int L = 1; L <= 3; ++L) {
        const bw::SafetyStocks st = bw::safety_stocks(model, L, sl);
        std::cout << ',' << fixed(st.ss, 3) << ',' << fixed(st.sslt, 3);
      }
      std::cout << "\n";
    }
  } else {
    std::printf("%5s  %8s  %8s  %8s  %8s  %8s  %8s\n", "SL", "SS(1)",
                "SSLT(1)", "SS(2)", "SSLT(2)", "SS(3)", "SSLT(3)");
    for (int slc = 90; slc <= 99; ++slc) {
      const double sl = slc / 100.0;
      std::printf("%5s", fixed(sl, 2).c_str());
      for (int L = 1; L <= 3; ++L) {
        const bw::SafetyStocks st = bw::safety_stocks(model, L, sl);
        std::printf("  %8s  %8s", fixed(st.ss, 3).c_str(),
                    fixed(st.sslt, 3).c_str());
      }
      std::printf("\n");
    }
  }
  return 0;
}

// ----------------------------------------------------------------- sweep

// Preset grids run on integer hundredths so that printed coordinates are
// exact decimals and phi + theta cancels exactly on the diagonal.
void sweep_fig1() {
  std::cout << "phi,theta,lead_time,m\n";
  for (int pc = -95; pc <= 95; pc += 5) {
    for (int tc = -95; tc <= 95; tc += 5) {
      const double phi = pc / 100.0, theta = tc / 100.0;
      std::cout << shortest(phi) << ',' << shortest(theta) << ",1,"
                << shortest(bw::bullwhip_arma11(phi, theta, 1).m) << "\n";
    }
  }
}

void sweep_fig2() {
  std::cout << "phi,theta,lead_time,m\n";
  for (const int tc : {-60, -30, 0, 30, 60}) {
    for (int L = 1; L <= 2; ++L) {
      for (int pc = -95; pc <= 95; pc += 5) {
        const double phi = pc / 100.0, theta = tc / 100.0;
        std::cout << shortest(phi) << ',' << shortest(theta) << ',' << L
                  << ',' << shortest(bw::bullwhip_arma11(phi, theta, L).m)
                  << "\n";
      }
    }
  }
}

void sweep_fig3() {
  std::cout << "phi,lead_time,m\n";
  for (int L = 1; L <= 6; ++L) {
    for (int pc = -95; pc <= 95; pc += 5) {
      const double phi = pc / 100.0;
      std::cout << shortest(phi) << ',' << L << ','
                << shortest(bw::bullwhip_ar1(phi, L).m) << "\n";
    }
  }
}

int run_sweep(const ModelArgs& margs, int lead_time,
              const std::string& preset, const std::string& param,
              double from, double to, double step) {
  if (!preset.empty()) {
    if (preset == "fig1") {
      sweep_fig1();
    } else if (preset == "fig2") {
      sweep_fig2();
    } else {
      sweep_fig3();
    }
    return 0;
  }

  if (param.empty()) {
    throw bw::InvalidInputError("sweep needs --preset or --param");
  }
  if (!(step > 0.0) || from > to) {
    throw bw::InvalidInputError("empty sweep grid: need step > 0, from <= to");
  }
  const bool sweep_phi = param == "phi";
  if (sweep_phi && !margs.phi.empty()) {
    throw bw::InvalidInputError(
        "the swept value becomes phi1; drop the --phi flags");
  }
  if (!sweep_phi && !margs.theta.empty()) {
    throw bw::InvalidInputError(
        "the swept value becomes theta1; drop the --theta flags");
  }
  const long cells = static_cast<long>((to - from) / step) + 2;
  if (cells > 1000000) {
    throw bw::InvalidInputError("sweep grid exceeds 1e6 cells");
  }

  std::cout << param << ",lead_time,m\n";
  for (long i = 0;; ++i) {
    const double v = from + static_cast<double>(i) * step;
    if (v > to + step * 1e-9) break;
    bw::ArmaModel model = margs.to_model();
    (sweep_phi ? model.phi : model.theta).assign(1, v);
    std::cout << shortest(v) << ',' << lead_time << ',';
    try {
      const bw::PsiWeights psi = bw::psi_weights(model);
      std::cout << shortest(bw::bullwhip_general(psi, lead_time).m);
    } catch (const bw::Error&) {
      // outside the stationary/invertible region: missing value
    }
    std::cout << "\n";
  }
  return 0;
}

// -------------------------------------------------------------- simulate

int run_simulate(const ModelArgs& margs, int lead_time, double service_level,
                 long periods, long burn_in, int replications,
                 std::uint64_t seed, const std::string& trace_dir,
                 double agreement, const RenderArgs& render) {
  bw::SimulationConfig cfg;
  cfg.model = margs.to_model();
  cfg.lead_time = lead_time;
  cfg.service_level = service_level;
  cfg.periods = periods;
  cfg.burn_in = burn_in;
  cfg.replications = replications;
  cfg.seed = seed;

  bw::TraceSink sink;
  if (!trace_dir.empty()) {
    std::filesystem::create_directories(trace_dir);
    sink = [&trace_dir](int rep, long burn, std::span<const double> demand,
                        std::span<const double> orders,
                        std::span<const double> out_levels,
                        std::span<const double> innovations) {
      char name[32];
      std::snprintf(name, sizeof name, "replication_%03d.csv", rep);
      std::ofstream file(std::filesystem::path(trace_dir) / name);
      file << "t,demand,order,out_level,innovation,past_burn_in\n";
      for (std::size_t t = 0; t < demand.size(); ++t) {
        file << (t + 1) << ',' << shortest(demand[t]) << ','
             << shortest(orders[t]) << ',' << shortest(out_levels[t]) << ','
             << shortest(innovations[t]) << ','
             << (static_cast<long>(t) >= burn ? 1 : 0) << "\n";
      }
    };
  }

  const long resolved_burn = bw::resolve_burn_in(cfg);
  const bw::SimulationResult res = bw::estimate_bullwhip(cfg, sink);
  const bool pass = std::fabs(res.empirical_m - res.analytic_m) <=
                    agreement * res.half_width;
  const char* verdict = pass ? "PASS" : "FAIL";

  if (render.format == "json") {
    json req = request_json(margs);
    req["lead_time"] = lead_time;
    req["service_level"] = service_level;
    req["periods"] = periods;
    req["burn_in"] = burn_in;
    req["replications"] = replications;
    req["seed"] = seed;
    json reps = json::array();
    for (const auto& r : res.per_replication) {
      reps.push_back(json{{"var_d", r.var_d}, {"var_o", r.var_o}});
    }
    const json j{{"empirical_m", res.empirical_m},
                 {"analytic_m", res.analytic_m},
                 {"half_width", res.half_width},
                 {"verdict", verdict},
                 {"resolved_burn_in", resolved_burn},
                 {"per_replication", reps},
                 {"request", req}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (render.format == "csv") {
    std::cout << "empirical_m,analytic_m,half_width,verdict\n"
              << shortest(res.empirical_m) << ',' << shortest(res.analytic_m)
              << ',' << shortest(res.half_width) << ',' << verdict << "\n";
    return 0;
  }

  const TextPrecision p = text_precision(render);
  std::printf("empirical_m   %s\n", fixed(res.empirical_m, p.measure).c_str());
  std::printf("analytic_m    %s\n", fixed(res.analytic_m, p.measure).c_str());
  std::printf("half_width    %s\n", fixed(res.half_width, p.measure).c_str());
  std::printf("replications  %d\n", replications);
  std::printf("periods       %ld\n", periods);
  std::printf("burn_in       %ld\n", resolved_burn);
  std::printf("seed          %llu\n",
              static_cast<unsigned long long>(seed));
  std::printf("verdict       %s\n", verdict);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bullwhip measure, forecast-error variance and safety stocks for "
      "stationary ARMA demand under an order-up-to policy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bullwhip 1.0.0");

  ModelArgs margs;
  RenderArgs render;
  int lead_time = 1;
  double service_level = 0.95;

  // scperf
  CLI::App* scperf_cmd = app.add_subcommand(
      "scperf", "bullwhip measure and safety stocks for one model");
  add_model_options(scperf_cmd, margs);
  add_render_options(scperf_cmd, render);
  scperf_cmd->add_option("-L,--lead-time", lead_time,
                         "periods covered by an order, >= 1 (default 1)");
  scperf_cmd->add_option("--sl,--service-level", service_level,
                         "cycle service level in (0, 1) (default 0.95)");

  // psi
  int terms = 10;
  CLI::App* psi_cmd = app.add_subcommand(
      "psi", "moving-average weights and their running sums");
  add_model_options(psi_cmd, margs);
  add_render_options(psi_cmd, render);
  psi_cmd->add_option("-n,--terms", terms, "highest index printed (default 10)")
      ->check(CLI::Range(0, 100000));

  // validate
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "stationarity, invertibility and redundancy check");
  add_model_options(validate_cmd, margs);
  add_render_options(validate_cmd, render);

  // table
  int table_id = 0;
  CLI::App* table_cmd =
      app.add_subcommand("table", "reference tables over built-in models");
  table_cmd->add_option("id", table_id, "table number: 1, 2 or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  add_render_options(table_cmd, render);

  // sweep
  std::string preset, param;
  double from = 0.0, to = 0.0, step = 0.0;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "CSV grid of the measure over a parameter range");
  add_model_options(sweep_cmd, margs);
  sweep_cmd->add_option("-L,--lead-time", lead_time,
                        "lead time for custom sweeps (default 1)");
  sweep_cmd->add_option("--preset", preset,
                        "built-in grid: fig1 (phi x theta surface, L=1), "
                        "fig2 (phi sweep per theta, L=1..2), "
                        "fig3 (AR(1) phi sweep, L=1..6)")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  sweep_cmd->add_option("--param", param, "coefficient to sweep")
      ->check(CLI::IsMember({"phi", "theta"}));
  sweep_cmd->add_option("--from", from, "first grid value");
  sweep_cmd->add_option("--to", to, "last grid value");
  sweep_cmd->add_option("--step", step, "grid increment, > 0");

  // simulate
  long periods = 100000, burn_in = -1;
  int replications = 20;
  std::uint64_t seed = 42;
  std::string trace_dir;
  double agreement = 1.0;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte-Carlo cross-check of the analytic measure");
  add_model_options(simulate_cmd, margs);
  add_render_options(simulate_cmd, render);
  simulate_cmd->add_option("-L,--lead-time", lead_time,
                           "periods covered by an order, >= 1 (default 1)");
  simulate_cmd->add_option("--sl,--service-level", service_level,
                           "cycle service level in (0, 1) (default 0.95)");
  simulate_cmd->add_option("--periods", periods,
                           "periods per replication, burn-in included");
  simulate_cmd->add_option("--burn-in", burn_in,
                           "discarded leading periods (-1 = automatic)");
  simulate_cmd->add_option("--replications", replications,
                           "independent replications (default 20)");
  simulate_cmd->add_option("--seed", seed, "RNG seed (default 42)");
  simulate_cmd->add_option("--trace-dir", trace_dir,
                           "write per-replication path CSVs here");
  simulate_cmd->add_option("-k,--agreement-factor", agreement,
                           "verdict passes when |empirical - analytic| <= "
                           "k * half_width (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(scperf_cmd)) {
      return run_scperf(margs, lead_time, service_level, render);
    }
    if (app.got_subcommand(psi_cmd)) {
      return run_psi(margs, terms, render);
    }
    if (app.got_subcommand(validate_cmd)) {
      return run_validate(margs, render);
    }
    if (app.got_subcommand(table_cmd)) {
      return run_table(table_id, render);
    }
    if (app.got_subcommand(sweep_cmd)) {
      return run_sweep(margs, lead_time, preset, param, from, to, step);
    }
    return run_simulate(margs, lead_time, service_level, periods, burn_in,
                        replications, seed, trace_dir, agreement, render);
  } catch (const bw::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
