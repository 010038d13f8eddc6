#pragma once

// Closed-form derivatives of the expected payoff of a one-shot two-player game
// under independent softmax policies. Test-only; shares no code with the
// estimators it checks.

#include <array>
#include <cmath>
#include <vector>

namespace soa::testing {

using Payoff2x2 = std::array<std::array<double, 2>, 2>;  // R[a_i][a_j]

inline double expected_value(const std::vector<double>& p, const std::vector<double>& q,
                             const Payoff2x2& r) {
  double v = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) v += p[a] * q[b] * r[a][b];
  }
  return v;
}

// d p_a / d theta_c for a softmax policy.
inline double softmax_jacobian(const std::vector<double>& p, int a, int c) {
  return p[a] * ((a == c ? 1.0 : 0.0) - p[c]);
}

// dV / d theta_i[c]
inline std::vector<double> grad_wrt_row(const std::vector<double>& p,
                                        const std::vector<double>& q, const Payoff2x2& r) {
  std::vector<double> g(2, 0.0);
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) g[c] += softmax_jacobian(p, a, c) * q[b] * r[a][b];
    }
  }
  return g;
}

// dV / d theta_j[d]
inline std::vector<double> grad_wrt_col(const std::vector<double>& p,
                                        const std::vector<double>& q, const Payoff2x2& r) {
  std::vector<double> g(2, 0.0);
  for (int d = 0; d < 2; ++d) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) g[d] += p[a] * softmax_jacobian(q, b, d) * r[a][b];
    }
  }
  return g;
}

// d^2 V / (d theta_i[c] d theta_j[d]), indexed [c][d].
inline std::array<std::array<double, 2>, 2> cross_derivative(const std::vector<double>& p,
                                                             const std::vector<double>& q,
                                                             const Payoff2x2& r) {
  std::array<std::array<double, 2>, 2> m{};
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          m[c][d] += softmax_jacobian(p, a, c) * softmax_jacobian(q, b, d) * r[a][b];
        }
      }
    }
  }
  return m;
}

inline std::vector<double> softmax2(double h0, double h1) {
  const double m = std::max(h0, h1);
  const double e0 = std::exp(h0 - m);
  const double e1 = std::exp(h1 - m);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

// Running mean and standard error.
struct MeanAccumulator {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double standard_error() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

}  // namespace soa::testing
