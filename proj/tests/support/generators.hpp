#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bullwhip/arma.hpp"

namespace testsupport {

// Draws random models that are stationary and invertible by construction:
// coefficient lists are expanded from inverse roots placed strictly inside
// the unit disk, then checked once more against the library validator to
// screen out coincidental near-shared roots.
class ModelGen {
 public:
  explicit ModelGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  bool coin(double p = 0.5) {
    return std::bernoulli_distribution(p)(rng_);
  }

  // Coefficients c_1..c_degree of 1 + c_1 z + ... + c_degree z^degree whose
  // inverse roots all have modulus in [lo, hi] (real or conjugate pairs).
  std::vector<double> coeffs_with_roots(int degree, double lo, double hi) {
    std::vector<double> poly{1.0};
    int remaining = degree;
    while (remaining > 0) {
      if (remaining >= 2 && coin()) {
        const double r = uniform(lo, hi);
        const double ang = uniform(0.15, 3.0);
        multiply(poly, {-2.0 * r * std::cos(ang), r * r});
        remaining -= 2;
      } else {
        const double r = uniform(lo, hi) * (coin() ? 1.0 : -1.0);
        multiply(poly, {-r});
        remaining -= 1;
      }
    }
    return {poly.begin() + 1, poly.end()};
  }

  // Random stationary/invertible ARMA with orders up to the given bounds.
  // Inverse-root moduli stay in [0.1, 0.9], keeping truncation cheap.
  bullwhip::ArmaModel model(int max_p, int max_q, bool allow_white_noise) {
    for (;;) {
      int p = uniform_int(0, max_p);
      int q = uniform_int(0, max_q);
      if (!allow_white_noise && p == 0 && q == 0) continue;

      bullwhip::ArmaModel m;
      m.mu = uniform(0.0, 50.0);
      m.sigma_eps = uniform(0.5, 3.0);
      const std::vector<double> ar = coeffs_with_roots(p, 0.1, 0.9);
      for (const double c : ar) m.phi.push_back(-c);
      m.theta = coeffs_with_roots(q, 0.1, 0.9);
      if (bullwhip::validate_model(m).passes()) return m;
    }
  }

 private:
  // poly *= (1 + f_1 z [+ f_2 z^2])
  static void multiply(std::vector<double>& poly,
                       const std::vector<double>& factor) {
    std::vector<double> out(poly.size() + factor.size(), 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      out[i] += poly[i];
      for (std::size_t k = 0; k < factor.size(); ++k) {
        out[i + k + 1] += poly[i] * factor[k];
      }
    }
    poly.swap(out);
  }

  std::mt19937_64 rng_;
};

}  // namespace testsupport
