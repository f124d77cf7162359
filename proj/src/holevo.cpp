#include "qcap/holevo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qcap {

namespace {

// Piecewise-linear interpolant through the tabulated samples, zero outside.
double interp_density(const std::vector<std::pair<double, double>>& samples, double x) {
  if (x <= samples.front().first || x >= samples.back().first) {
    if (x == samples.front().first) return samples.front().second;
    if (x == samples.back().first) return samples.back().second;
    return 0.0;
  }
  auto it = std::lower_bound(samples.begin(), samples.end(), x,
                             [](const auto& s, double v) { return s.first < v; });
  const auto& [x1, f1] = *it;
  const auto& [x0, f0] = *(it - 1);
  const double t = (x - x0) / (x1 - x0);
  return f0 + t * (f1 - f0);
}

// Composite Simpson with interval doubling until successive estimates agree.
double simpson(const std::function<double(double)>& f, double a, double b,
               double tol = 1e-8) {
  double prev = 0.0;
  for (std::size_t n = 64; n <= (1u << 22); n *= 2) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i)
      sum += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    const double estimate = sum * h / 3.0;
    if (n > 64 && std::abs(estimate - prev) < tol) return estimate;
    prev = estimate;
  }
  throw std::runtime_error("quadrature failed to converge");
}

// Golden-section maximization of a unimodal function on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
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

}  // namespace

NoiseDistribution NoiseDistribution::uniform(double full_width) {
  if (!(full_width >= 0.0))
    throw std::invalid_argument("NoiseDistribution: negative width");
  NoiseDistribution n;
  n.kind = Kind::Uniform;
  n.width = full_width;
  return n;
}

NoiseDistribution NoiseDistribution::gaussian(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("NoiseDistribution: negative sigma");
  NoiseDistribution n;
  n.kind = Kind::Gaussian;
  n.width = sigma;
  return n;
}

NoiseDistribution NoiseDistribution::custom(
    std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 3)
    throw std::invalid_argument("NoiseDistribution: custom density needs >= 3 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].second < 0.0)
      throw std::invalid_argument("NoiseDistribution: negative density value");
    if (i > 0 && samples[i].first <= samples[i - 1].first)
      throw std::invalid_argument("NoiseDistribution: grid not strictly increasing");
  }

  NoiseDistribution n;
  n.kind = Kind::Custom;
  n.density = std::move(samples);

  const double lo = n.density.front().first;
  const double hi = n.density.back().first;
  auto f = [&n](double x) { return interp_density(n.density, x); };
  const double total = simpson(f, lo, hi);
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("NoiseDistribution: density does not integrate to 1");
  const double odd_moment = simpson([&f](double x) { return f(x) * x; }, lo, hi);
  if (std::abs(odd_moment) > 1e-8)
    throw std::invalid_argument("NoiseDistribution: density not symmetric about 0");
  return n;
}

double holevo_chi(const SignalEnsemble& ensemble, LogBase base) {
  const DensityMatrix average = mix(ensemble);
  double chi = von_neumann_entropy(average, base);
  for (std::size_t k = 0; k < ensemble.size(); ++k)
    chi -= ensemble.priors[k] * von_neumann_entropy(ensemble.states[k], base);
  return std::max(chi, 0.0);
}

HolevoResult maximize_holevo(const std::vector<DensityMatrix>& states, LogBase base,
                             double tol) {
  const std::size_t n = states.size();
  if (n < 2 || n > 4)
    throw std::invalid_argument("maximize_holevo: need 2 to 4 states");
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_holevo: tol must be > 0");

  auto chi_at = [&](const std::vector<double>& q) {
    SignalEnsemble e;
    e.priors = q;
    e.states = states;
    return holevo_chi(e, LogBase::Nats);
  };

  std::vector<double> best(n, 1.0 / static_cast<double>(n));
  const double chi_uniform = chi_at(best);
  double best_val = chi_uniform;

  if (n == 2) {
    const double q0 = golden_max([&](double q) { return chi_at({q, 1.0 - q}); }, 0.0,
                                 1.0, 1e-10);
    const double val = chi_at({q0, 1.0 - q0});
    if (val > best_val) {
      best_val = val;
      best = {q0, 1.0 - q0};
    }
  } else {
    // Coarse simplex grid, then pairwise golden-section refinement. chi is
    // concave in the priors so coordinate line searches converge.
    const double step = n == 3 ? 0.01 : 0.05;
    const int divisions = static_cast<int>(std::lround(1.0 / step));
    std::vector<double> q(n, 0.0);
    std::function<void(std::size_t, int)> scan = [&](std::size_t idx, int left) {
      if (idx == n - 1) {
        q[idx] = static_cast<double>(left) * step;
        const double val = chi_at(q);
        if (val > best_val) {
          best_val = val;
          best = q;
        }
        return;
      }
      for (int take = 0; take <= left; ++take) {
        q[idx] = static_cast<double>(take) * step;
        scan(idx + 1, left - take);
      }
    };
    scan(0, divisions);

    for (int round = 0; round < 200; ++round) {
      const double before = best_val;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double mass = best[i] + best[j];
          if (mass <= 0.0) continue;
          auto line = [&](double qi) {
            std::vector<double> probe = best;
            probe[i] = qi;
            probe[j] = mass - qi;
            return chi_at(probe);
          };
          const double qi = golden_max(line, 0.0, mass, 1e-9);
          const double val = line(qi);
          if (val > best_val) {
            best_val = val;
            best[i] = qi;
            best[j] = mass - qi;
          }
        }
      }
      if (best_val - before < tol) break;
    }
  }

  // Pairwise mass transfers preserve the simplex only to roundoff.
  double total = 0.0;
  for (double q : best) total += q;
  for (double& q : best) q /= total;

  HolevoResult result;
  result.capacity = from_nats(best_val, base);
  result.optimal_priors.probs = best;
  result.chi_at_uniform = from_nats(chi_uniform, base);
  return result;
}

double polarization_noise_d(const NoiseDistribution& noise) {
  switch (noise.kind) {
    case NoiseDistribution::Kind::Uniform: {
      const double a = noise.width;
      if (a < 1e-12) return 0.0;
      return 0.5 * (1.0 - std::sin(a) / a);
    }
    case NoiseDistribution::Kind::Gaussian: {
      const double sigma = noise.width;
      return 0.5 * (1.0 - std::exp(-2.0 * sigma * sigma));
    }
    case NoiseDistribution::Kind::Custom: {
      const double lo = noise.density.front().first;
      const double hi = noise.density.back().first;
      return simpson(
          [&noise](double phi) {
            const double s = std::sin(phi);
            return interp_density(noise.density, phi) * s * s;
          },
          lo, hi);
    }
  }
  throw std::invalid_argument("polarization_noise_d: unknown distribution kind");
}

DensityMatrix apply_polarization_noise(double pure_angle, double d) {
  if (!(d >= 0.0 && d <= 0.5))
    throw std::invalid_argument("apply_polarization_noise: d must lie in [0, 1/2]");
  const double half_pi = std::numbers::pi / 2.0;
  CMat m(2);
  if (std::abs(pure_angle) < 1e-12) {
    m(0, 0) = Complex(1.0 - d);
    m(1, 1) = Complex(d);
  } else if (std::abs(pure_angle - half_pi) < 1e-12) {
    m(0, 0) = Complex(d);
    m(1, 1) = Complex(1.0 - d);
  } else {
    throw std::invalid_argument(
        "apply_polarization_noise: only the orthogonal signal pair (angles 0 "
        "and pi/2) is supported");
  }
  return DensityMatrix(std::move(m));
}

NoisyCapacities noisy_orthogonal_capacity(double d, LogBase base) {
  const DensityMatrix rho0 = apply_polarization_noise(0.0, d);
  const DensityMatrix rho1 = apply_polarization_noise(std::numbers::pi / 2.0, d);

  SignalEnsemble ensemble;
  ensemble.priors = {0.5, 0.5};
  ensemble.states = {rho0, rho1};

  NoisyCapacities out;
  out.c_n = holevo_chi(ensemble, base);
  // Shannon side: hard symbol-by-symbol detection induces a BSC with
  // crossover d; its capacity is recomputed from scratch.
  out.c_s = blahut_arimoto(bsc(d), base, 1e-12).capacity;
  return out;
}

double attenuated_holevo(const SignalEnsemble& ensemble, double eps, LogBase base) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("attenuated_holevo: eps outside [0,1]");
  return (1.0 - eps) * holevo_chi(ensemble, base);
}

}  // namespace qcap
