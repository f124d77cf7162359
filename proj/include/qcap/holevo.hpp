// Von Neumann (Holevo) capacity of signal ensembles, prior optimization, and
// the two transmission impairments: attenuation-as-erasure and random
// polarization noise.
#pragma once

#include <vector>

#include "qcap/dmc.hpp"
#include "qcap/qstate.hpp"

namespace qcap {

// Probability density of the polarization deviation angle, symmetric about
// zero. Uniform on [-A/2, A/2], zero-mean Gaussian with deviation sigma, or a
// tabulated custom density (piecewise linear between samples).
struct NoiseDistribution {
  enum class Kind { Uniform, Gaussian, Custom };

  Kind kind = Kind::Uniform;
  double width = 0.0;  // A for uniform, sigma for gaussian
  std::vector<std::pair<double, double>> density;  // (phi, f) samples, custom only

  static NoiseDistribution uniform(double full_width);
  static NoiseDistribution gaussian(double sigma);
  // Validates nonnegativity, unit integral (1e-8) and symmetry by quadrature.
  static NoiseDistribution custom(std::vector<std::pair<double, double>> samples);
};

struct HolevoResult {
  double capacity = 0.0;  // requested base
  InputDistribution optimal_priors;
  double chi_at_uniform = 0.0;
};

// chi = S(mix) - sum_k q_k S(rho_k) at the ensemble's stated priors.
double holevo_chi(const SignalEnsemble& ensemble, LogBase base);

// Maximize chi over the prior simplex. Two states use golden-section search;
// three or four start from a simplex grid and refine with pairwise
// golden-section line searches (chi is concave in the priors).
HolevoResult maximize_holevo(const std::vector<DensityMatrix>& states, LogBase base,
                             double tol = 1e-9);

// d = integral of f(phi) sin^2(phi): (1 - sin(A)/A)/2 for the uniform family,
// (1 - exp(-2 sigma^2))/2 for the Gaussian, adaptive Simpson quadrature for
// custom densities.
double polarization_noise_d(const NoiseDistribution& noise);

// Received mixed state for a basis-aligned signal under symmetric
// polarization noise: diag(1-d, d) for the horizontal signal, diag(d, 1-d)
// for the vertical one. Only the orthogonal-signal case is defined.
DensityMatrix apply_polarization_noise(double pure_angle, double d);

struct NoisyCapacities {
  double c_n = 0.0;
  double c_s = 0.0;
};

// Capacities of the orthogonal-signal polarization-noise channel. c_n comes
// from the entropy route (S(mix) - mean entropy), c_s independently from the
// induced BSC(d); the two agree at 1 - H(d) but c_s is computed, not copied.
NoisyCapacities noisy_orthogonal_capacity(double d, LogBase base);

// Synchronized detection turns photon loss into flagged erasures: capacity
// of the ensemble scales by (1 - eps).
double attenuated_holevo(const SignalEnsemble& ensemble, double eps, LogBase base);

}  // namespace qcap
