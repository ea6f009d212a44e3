#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bullwhip {

// A stationary ARMA(p, q) demand process
//
//   d_t = mu + phi_1 d_{t-1} + ... + phi_p d_{t-p}
//            + eps_t + theta_1 eps_{t-1} + ... + theta_q eps_{t-q}
//
// with white-noise innovations eps_t of standard deviation sigma_eps.
// Note the sign convention: the moving-average terms are ADDED to the
// innovation, so the MA polynomial is theta(z) = 1 + theta_1 z + ... +
// theta_q z^q and the AR polynomial is phi(z) = 1 - phi_1 z - ... -
// phi_p z^p.
//
// The struct itself is plain data; validate_model() evaluates the
// stationarity, invertibility and shared-root conditions that most
// operations require.
struct ArmaModel {
  double mu = 0.0;              // nonnegative demand intercept
  std::vector<double> phi{};    // autoregressive coefficients, size p
  std::vector<double> theta{};  // moving-average coefficients, size q
  double sigma_eps = 1.0;       // innovation standard deviation, > 0

  int p() const { return static_cast<int>(phi.size()); }
  int q() const { return static_cast<int>(theta.size()); }
};

// Outcome of checking a model against the conditions that make the
// moving-average representation (and everything built on it) valid:
//   * stationary:  all roots of phi(z) strictly outside the unit circle
//   * invertible:  all roots of theta(z) strictly outside the unit circle
//   * redundant:   phi and theta share a root within tolerance, i.e. the
//                  model carries a removable common factor
struct ValidationVerdict {
  bool stationary = false;
  bool invertible = false;
  bool redundant = false;
  std::vector<std::complex<double>> ar_roots;  // roots of phi(z)
  std::vector<std::complex<double>> ma_roots;  // roots of theta(z)

  bool passes() const { return stationary && invertible && !redundant; }
};

inline constexpr double kDefaultRootTol = 1e-8;

// Validates the model. Roots are computed as eigenvalues of the companion
// matrix of the reversed characteristic polynomial. Trailing zero
// coefficients are dropped before root-finding, so the reported degree can
// be lower than phi.size() / theta.size().
//
// Throws InvalidInputError for non-finite coefficients, mu < 0,
// sigma_eps <= 0 or a negative tolerance.
ValidationVerdict validate_model(const ArmaModel& model,
                                 double tol = kDefaultRootTol);

// Leading weights of the moving-average representation
//
//   d_t = mu_d + sum_{j>=0} psi_j eps_{t-j},    psi_0 = 1,
//
// truncated at an index N whose discarded tail is certified small:
// tail_bound is an upper bound on sum_{j>N} psi_j^2 relative to
// sum_{j<=N} psi_j^2, built from a geometric envelope |psi_j| <= C rho^j
// where rho is the spectral radius of the AR companion matrix.
struct PsiWeights {
  std::vector<double> weights;  // psi_0 .. psi_N
  double tail_bound = 0.0;      // certified relative bound on the tail

  int truncation_index() const { return static_cast<int>(weights.size()) - 1; }

  // psi_j, treating indices beyond the truncation as zero.
  double psi(int j) const {
    return (j >= 0 && j < static_cast<int>(weights.size()))
               ? weights[static_cast<std::size_t>(j)]
               : 0.0;
  }

  // sum of squared retained weights
  double head_sum_sq() const;
};

inline constexpr double kDefaultPsiRelTol = 1e-12;
inline constexpr int kDefaultPsiMaxTerms = 100000;

// Computes the weights by the recursion
//
//   psi_j = sum_{k=1..p} phi_k psi_{j-k} + theta_j       (theta_j = 0, j > q)
//
// stopping at the smallest N >= max(p, q + 1) whose certified relative tail
// bound drops to rel_tol or below.
//
// Throws DomainError when the model fails validate_model, and
// TruncationError (carrying the bound that was achieved) when max_n terms
// do not reach rel_tol.
PsiWeights psi_weights(const ArmaModel& model,
                       double rel_tol = kDefaultPsiRelTol,
                       int max_n = kDefaultPsiMaxTerms);

// The same recursion run for a fixed number of terms, with no certification
// or validation. Returns psi_0..psi_n. Intended for diagnostics, printing
// and internal re-expansion; prefer psi_weights() for analysis.
std::vector<double> psi_recursion(const ArmaModel& model, int n);

// Partial-fraction form of a pure AR(p) weight sequence. With distinct
// inverse roots lambda_i = 1/z_i of phi(z),
//
//   psi_j = sum_i c_i lambda_i^j,   c_i = lambda_i^{p-1} / prod_{k!=i}
//                                         (lambda_i - lambda_k),
//
// and the constants sum to one. Repeated roots have no such expansion and
// are rejected.
struct RootDecomposition {
  std::vector<std::complex<double>> roots;      // z_i, moduli > 1
  std::vector<std::complex<double>> constants;  // c_i
};

// Throws InvalidInputError when q > 0, DomainError when the model is not
// stationary, and UnsupportedCaseError when two roots fall within
// separation_tol of each other.
RootDecomposition ar_root_decomposition(const ArmaModel& model,
                                        double separation_tol = kDefaultRootTol);

// Evaluates psi_0..psi_n of a pure AR(p) model through the root
// decomposition instead of the recursion. The two routes agree to
// near machine precision; keeping both makes each testable against
// the other.
PsiWeights psi_closed_form_arp(const ArmaModel& model, int n);

// AR(2) weight in closed form. With lambda_{1,2} = (phi1 +- sqrt(phi1^2 +
// 4 phi2)) / 2 the roots of lambda^2 - phi1 lambda - phi2,
//
//   psi_j = (lambda_1^{j+1} - lambda_2^{j+1}) / (lambda_1 - lambda_2),
//
// evaluated in complex arithmetic when the discriminant is negative.
// Throws DomainError outside the stationary triangle and
// UnsupportedCaseError for phi2 == 0 or a vanishing discriminant.
double psi_closed_form_ar2(double phi1, double phi2, int j);

// Stationary mean mu_d = mu / (1 - sum phi_k). Throws DomainError when the
// denominator is smaller than 1e-12 in magnitude.
double demand_mean(const ArmaModel& model);

// Stationary variance sigma_eps^2 * sum psi_j^2, corrected upward by the
// certified tail bound of the truncation.
double demand_variance(const ArmaModel& model, const PsiWeights& psi);

// Minimum mean squared error forecast of d_{t+tau} given data through t:
//
//   E[d_{t+tau} | F_t] = mu_d + sum_{j>=tau} psi_j eps_{t+tau-j}.
//
// `innovations` holds the realized eps values in series order, the last
// element being eps_t; missing history is treated as zero. tau >= 1.
double mmse_forecast(const ArmaModel& model, const PsiWeights& psi,
                     std::span<const double> innovations, int tau);

}  // namespace bullwhip
