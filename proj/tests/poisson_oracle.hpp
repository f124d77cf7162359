// Brute-force oracle for the intensity-limited OOK capacity.
//
// On-off keying observed over a slot of width dt produces Poisson counts at
// mean gamma*dt. The slot mutual information divided by dt converges to the
// continuous-time capacity as dt -> 0; Richardson extrapolation in dt removes
// the leading error terms. The oracle shares no code with the closed forms it
// certifies.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace qcap::testing {

inline std::vector<double> poisson_pmf(double mean, std::size_t n_max) {
  std::vector<double> pmf(n_max + 1);
  pmf[0] = std::exp(-mean);
  for (std::size_t n = 1; n <= n_max; ++n)
    pmf[n] = pmf[n - 1] * mean / static_cast<double>(n);
  return pmf;
}

// Smallest truncation with upper tail below 1e-12 at the "on" mean, capped at
// 200 counts.
inline std::size_t poisson_truncation(double mean) {
  std::vector<double> pmf = poisson_pmf(mean, 200);
  double cumulative = 0.0;
  for (std::size_t n = 0; n <= 200; ++n) {
    cumulative += pmf[n];
    if (1.0 - cumulative < 1e-12) return n;
  }
  return 200;
}

inline double poisson_slot_mi_nats(double g0, double g1, double q, double dt) {
  const std::size_t n_max = poisson_truncation(g1 * dt);
  const std::vector<double> on = poisson_pmf(g1 * dt, n_max);
  const std::vector<double> off = poisson_pmf(g0 * dt, n_max);
  double info = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double marginal = q * on[n] + (1.0 - q) * off[n];
    if (on[n] > 0.0 && marginal > 0.0) info += q * on[n] * std::log(on[n] / marginal);
    if (off[n] > 0.0 && marginal > 0.0)
      info += (1.0 - q) * off[n] * std::log(off[n] / marginal);
  }
  return info;
}

inline double golden_max_arg(const std::function<double(double)>& f, double lo,
                             double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-7) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

struct OokOracleResult {
  double rate_nats_per_s = 0.0;
  double q_on = 0.0;
};

inline OokOracleResult ook_oracle_rate(double g0, double g1, double dt) {
  auto objective = [&](double q) { return poisson_slot_mi_nats(g0, g1, q, dt); };
  const double q = golden_max_arg(objective, 1e-9, 1.0 - 1e-9);
  return {objective(q) / dt, q};
}

inline OokOracleResult brute_force_ook(double g0, double g1) {
  const double h = 0.004 / g1;
  const OokOracleResult r1 = ook_oracle_rate(g0, g1, h);
  const OokOracleResult r2 = ook_oracle_rate(g0, g1, h / 2.0);
  const OokOracleResult r3 = ook_oracle_rate(g0, g1, h / 4.0);
  const double e1 = 2.0 * r2.rate_nats_per_s - r1.rate_nats_per_s;
  const double e2 = 2.0 * r3.rate_nats_per_s - r2.rate_nats_per_s;
  OokOracleResult out;
  out.rate_nats_per_s = (4.0 * e2 - e1) / 3.0;
  out.q_on = 2.0 * r3.q_on - r2.q_on;
  return out;
}

}  // namespace qcap::testing
