#include "bullwhip/arma.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bullwhip/errors.hpp"

namespace bullwhip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMeanDenomTol = 1e-12;
constexpr double kImagResidueTol = 1e-10;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

// Drop trailing zero coefficients so the effective polynomial degree (and
// with it the companion matrix) is well posed.
std::vector<double> trim_trailing_zeros(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

// Eigenvalues of the companion matrix of
//   lambda^m - c_1 lambda^{m-1} - ... - c_m,
// the reversal of 1 - c_1 z - ... - c_m z^m. Each eigenvalue is the
// reciprocal of a root of the original polynomial, so "all roots outside
// the unit circle" becomes "spectral radius below one".
std::vector<std::complex<double>> inverse_roots(const std::vector<double>& c) {
  const int m = static_cast<int>(c.size());
  if (m == 0) return {};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) a(0, i) = c[static_cast<std::size_t>(i)];
  for (int i = 1; i < m; ++i) a(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  return out;
}

std::vector<std::complex<double>> reciprocals(
    const std::vector<std::complex<double>>& lambdas) {
  std::vector<std::complex<double>> roots;
  roots.reserve(lambdas.size());
  for (const auto& l : lambdas) {
    roots.push_back(std::abs(l) > 0.0 ? 1.0 / l
                                      : std::complex<double>(kInf, 0.0));
  }
  return roots;
}

double spectral_radius(const std::vector<std::complex<double>>& lambdas) {
  double rho = 0.0;
  for (const auto& l : lambdas) rho = std::max(rho, std::abs(l));
  return rho;
}

void check_model_numbers(const ArmaModel& model) {
  if (!std::isfinite(model.mu) || !std::isfinite(model.sigma_eps) ||
      !all_finite(model.phi) || !all_finite(model.theta)) {
    throw InvalidInputError("model coefficients must be finite");
  }
  if (model.mu < 0.0) throw InvalidInputError("mu must be nonnegative");
  if (!(model.sigma_eps > 0.0)) {
    throw InvalidInputError("sigma_eps must be positive");
  }
}

std::string describe_violation(const ValidationVerdict& v) {
  std::ostringstream os;
  if (!v.stationary) {
    double worst = kInf;
    for (const auto& z : v.ar_roots) worst = std::min(worst, std::abs(z));
    os << "model is not stationary: AR root modulus " << worst
       << " is not outside the unit circle";
  } else if (!v.invertible) {
    double worst = kInf;
    for (const auto& z : v.ma_roots) worst = std::min(worst, std::abs(z));
    os << "model is not invertible: MA root modulus " << worst
       << " is not outside the unit circle";
  } else {
    os << "model is redundant: the AR and MA polynomials share a root";
  }
  return os.str();
}

ValidationVerdict validated_or_throw(const ArmaModel& model) {
  ValidationVerdict v = validate_model(model);
  if (!v.passes()) throw DomainError(describe_violation(v));
  return v;
}

}  // namespace

ValidationVerdict validate_model(const ArmaModel& model, double tol) {
  check_model_numbers(model);
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw InvalidInputError("tol must be a nonnegative finite number");
  }

  ValidationVerdict v;

  const auto ar_lambda = inverse_roots(trim_trailing_zeros(model.phi));
  std::vector<double> neg_theta(model.theta.size());
  std::transform(model.theta.begin(), model.theta.end(), neg_theta.begin(),
                 [](double t) { return -t; });
  const auto ma_lambda = inverse_roots(trim_trailing_zeros(neg_theta));

  v.stationary = spectral_radius(ar_lambda) < 1.0;
  v.invertible = spectral_radius(ma_lambda) < 1.0;
  v.ar_roots = reciprocals(ar_lambda);
  v.ma_roots = reciprocals(ma_lambda);

  v.redundant = false;
  for (const auto& za : v.ar_roots) {
    if (!std::isfinite(za.real()) || !std::isfinite(za.imag())) continue;
    for (const auto& zm : v.ma_roots) {
      if (!std::isfinite(zm.real()) || !std::isfinite(zm.imag())) continue;
      if (std::abs(za - zm) < tol) {
        v.redundant = true;
        break;
      }
    }
    if (v.redundant) break;
  }
  return v;
}

double PsiWeights::head_sum_sq() const {
  double s = 0.0;
  for (double w : weights) s += w * w;
  return s;
}

std::vector<double> psi_recursion(const ArmaModel& model, int n) {
  if (n < 0) throw InvalidInputError("psi term count must be nonnegative");
  const int p = model.p();
  const int q = model.q();
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n) + 1);
  w.push_back(1.0);
  for (int j = 1; j <= n; ++j) {
    double s = (j <= q) ? model.theta[static_cast<std::size_t>(j - 1)] : 0.0;
    const int kmax = std::min(p, j);
    for (int k = 1; k <= kmax; ++k) {
      s += model.phi[static_cast<std::size_t>(k - 1)] *
           w[static_cast<std::size_t>(j - k)];
    }
    w.push_back(s);
  }
  return w;
}

PsiWeights psi_weights(const ArmaModel& model, double rel_tol, int max_n) {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw InvalidInputError("rel_tol must be a positive finite number");
  }
  const int p = model.p();
  const int q = model.q();
  const int n_min = std::max(p, q + 1);
  if (max_n < n_min) {
    throw InvalidInputError("max_n must be at least max(p, q + 1)");
  }

  const ValidationVerdict verdict = validated_or_throw(model);

  // Spectral radius of the AR companion matrix. Weights past max(p, q)
  // satisfy the homogeneous AR recursion, so they decay like rho^j.
  double rho = 0.0;
  for (const auto& z : verdict.ar_roots) {
    const double a = std::abs(z);
    if (a > 0.0 && std::isfinite(a)) rho = std::max(rho, 1.0 / a);
  }

  const int window = std::max(p, 2);
  const double safety = 4.0 * window;
  const double log_rho = rho > 0.0 ? std::log(rho) : -kInf;

  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(std::min(max_n, 4096)) + 1);
  w.push_back(1.0);
  double head = 1.0;

  // Certified relative tail bound after n retained terms: fit the envelope
  // constant C on the last `window` weights and integrate the geometric
  // tail, with a safety factor absorbing oscillation of complex-root pairs.
  auto certified_tail_rel = [&](int n) -> double {
    if (rho == 0.0) {
      // Finite impulse response: every weight past q is exactly zero.
      return n >= q ? 0.0 : kInf;
    }
    double log_c2 = -kInf;
    for (int j = std::max(0, n - window + 1); j <= n; ++j) {
      const double a = std::abs(w[static_cast<std::size_t>(j)]);
      if (a == 0.0) continue;
      log_c2 = std::max(log_c2, 2.0 * (std::log(a) - j * log_rho));
    }
    if (log_c2 == -kInf) return 0.0;  // recent weights identically zero
    const double log_tail = std::log(safety) + log_c2 +
                            2.0 * (n + 1) * log_rho - std::log1p(-rho * rho);
    return std::exp(log_tail) / head;
  };

  int n = 0;
  double tail_rel = kInf;
  while (true) {
    if (n >= n_min) {
      tail_rel = certified_tail_rel(n);
      if (tail_rel <= rel_tol) break;
    }
    if (n == max_n) {
      std::ostringstream os;
      os << "psi truncation did not reach rel_tol " << rel_tol << " within "
         << max_n << " terms (achieved " << tail_rel << ")";
      throw TruncationError(os.str(), tail_rel);
    }
    ++n;
    double s = (n <= q) ? model.theta[static_cast<std::size_t>(n - 1)] : 0.0;
    const int kmax = std::min(p, n);
    for (int k = 1; k <= kmax; ++k) {
      s += model.phi[static_cast<std::size_t>(k - 1)] *
           w[static_cast<std::size_t>(n - k)];
    }
    w.push_back(s);
    head += s * s;
  }

  return PsiWeights{std::move(w), tail_rel};
}

RootDecomposition ar_root_decomposition(const ArmaModel& model,
                                        double separation_tol) {
  if (model.q() != 0) {
    throw InvalidInputError("root decomposition requires a pure AR model");
  }
  validated_or_throw(model);

  const auto lambdas = inverse_roots(trim_trailing_zeros(model.phi));
  const int m = static_cast<int>(lambdas.size());

  RootDecomposition dec;
  if (m == 0) return dec;  // white noise: nothing to decompose

  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      if (std::abs(lambdas[static_cast<std::size_t>(i)] -
                   lambdas[static_cast<std::size_t>(k)]) <= separation_tol) {
        throw UnsupportedCaseError(
            "repeated AR roots: the partial-fraction form needs distinct "
            "roots");
      }
    }
  }

  dec.roots.reserve(static_cast<std::size_t>(m));
  dec.constants.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto li = lambdas[static_cast<std::size_t>(i)];
    std::complex<double> num(1.0, 0.0);
    for (int e = 0; e < m - 1; ++e) num *= li;  // lambda_i^{p-1}
    std::complex<double> den(1.0, 0.0);
    for (int k = 0; k < m; ++k) {
      if (k != i) den *= li - lambdas[static_cast<std::size_t>(k)];
    }
    dec.roots.push_back(1.0 / li);
    dec.constants.push_back(num / den);
  }
  return dec;
}

PsiWeights psi_closed_form_arp(const ArmaModel& model, int n) {
  if (n < 0) throw InvalidInputError("psi term count must be nonnegative");
  const RootDecomposition dec = ar_root_decomposition(model);
  const std::size_t m = dec.roots.size();

  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n) + 1);

  if (m == 0) {
    w.assign(static_cast<std::size_t>(n) + 1, 0.0);
    w[0] = 1.0;
    return PsiWeights{std::move(w), 0.0};
  }

  // psi_j = sum_i c_i lambda_i^j, accumulated with running powers.
  std::vector<std::complex<double>> lambdas(m), acc(dec.constants);
  for (std::size_t i = 0; i < m; ++i) lambdas[i] = 1.0 / dec.roots[i];

  double rho = 0.0;
  double c_abs_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    rho = std::max(rho, std::abs(lambdas[i]));
    c_abs_sum += std::abs(dec.constants[i]);
  }

  for (int j = 0; j <= n; ++j) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) s += acc[i];
    if (std::abs(s.imag()) >
        kImagResidueTol * std::max(1.0, std::abs(s.real()))) {
      throw DomainError("imaginary residue in real weight sequence");
    }
    w.push_back(s.real());
    for (std::size_t i = 0; i < m; ++i) acc[i] *= lambdas[i];
  }

  // |psi_j| <= (sum |c_i|) rho^j gives a rigorous geometric tail bound.
  double head = 0.0;
  for (double x : w) head += x * x;
  const double amp = c_abs_sum * std::pow(rho, n + 1);
  const double tail = amp * amp / (1.0 - rho * rho) / head;
  return PsiWeights{std::move(w), tail};
}

double psi_closed_form_ar2(double phi1, double phi2, int j) {
  if (j < 0) throw InvalidInputError("psi index must be nonnegative");
  if (!std::isfinite(phi1) || !std::isfinite(phi2)) {
    throw InvalidInputError("coefficients must be finite");
  }
  if (!(std::abs(phi2) < 1.0 && phi1 + phi2 < 1.0 && phi2 - phi1 < 1.0)) {
    throw DomainError("AR(2) coefficients outside the stationary triangle");
  }
  if (phi2 == 0.0) {
    throw UnsupportedCaseError(
        "phi2 is zero: the model degenerates to AR(1)");
  }
  const double disc = phi1 * phi1 + 4.0 * phi2;
  if (std::abs(disc) < 1e-12) {
    throw UnsupportedCaseError(
        "vanishing discriminant: repeated AR(2) roots are not supported by "
        "the closed form");
  }

  const std::complex<double> r = std::sqrt(std::complex<double>(disc, 0.0));
  const std::complex<double> l1 = (phi1 + r) * 0.5;
  const std::complex<double> l2 = (phi1 - r) * 0.5;
  std::complex<double> p1(1.0, 0.0), p2(1.0, 0.0);
  for (int e = 0; e <= j; ++e) {
    p1 *= l1;
    p2 *= l2;
  }
  const std::complex<double> psi = (p1 - p2) / (l1 - l2);
  if (std::abs(psi.imag()) >
      kImagResidueTol * std::max(1.0, std::abs(psi.real()))) {
    throw DomainError("imaginary residue in real weight sequence");
  }
  return psi.real();
}

double demand_mean(const ArmaModel& model) {
  check_model_numbers(model);
  double s = 0.0;
  for (double c : model.phi) s += c;
  const double denom = 1.0 - s;
  if (std::abs(denom) < kMeanDenomTol) {
    throw DomainError("1 - sum(phi) is numerically zero: stationary mean "
                      "is undefined");
  }
  return model.mu / denom;
}

double demand_variance(const ArmaModel& model, const PsiWeights& psi) {
  if (psi.weights.empty()) throw InvalidInputError("empty psi series");
  check_model_numbers(model);
  return model.sigma_eps * model.sigma_eps * psi.head_sum_sq() *
         (1.0 + psi.tail_bound);
}

double mmse_forecast(const ArmaModel& model, const PsiWeights& psi,
                     std::span<const double> innovations, int tau) {
  if (tau < 1) throw InvalidInputError("forecast horizon tau must be >= 1");
  if (psi.weights.empty()) throw InvalidInputError("empty psi series");

  // E[d_{t+tau} | F_t] - mu_d = sum_{m>=0} psi_{tau+m} eps_{t-m}: only
  // innovations already observed at t contribute, with weights shifted by
  // the horizon.
  const double mu_d = demand_mean(model);
  const long n = psi.truncation_index();
  const long avail = static_cast<long>(innovations.size());
  const long mmax = std::min(avail - 1, n - tau);
  double acc = 0.0;
  for (long m = 0; m <= mmax; ++m) {
    acc += psi.weights[static_cast<std::size_t>(tau + m)] *
           innovations[static_cast<std::size_t>(avail - 1 - m)];
  }
  return mu_d + acc;
}

}  // namespace bullwhip
