// Discrete memoryless channels: mutual information, Shannon capacity via
// Blahut-Arimoto with certified bounds, closed forms, and erasure
// composition.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcap/qstate.hpp"

namespace qcap {

// Row-stochastic transition matrix P(j|k) with alphabet labels. Every entry
// must lie in [0, 1] and every row must sum to 1 within 1e-12.
struct Dmc {
  std::vector<std::vector<double>> p;
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;

  std::size_t num_inputs() const { return p.size(); }
  std::size_t num_outputs() const { return p.empty() ? 0 : p.front().size(); }

  // Throws std::invalid_argument naming the offending row on violation.
  void validate() const;
};

Dmc make_dmc(std::vector<std::vector<double>> p,
             std::vector<std::string> input_labels = {},
             std::vector<std::string> output_labels = {});

// Probability vector over the channel inputs; entries >= 0, sum 1 to 1e-12.
struct InputDistribution {
  std::vector<double> probs;

  void validate() const;
};

struct CapacityResult {
  double capacity = 0.0;  // in the requested base
  InputDistribution optimal_input;
  std::size_t iterations = 0;
  double gap = 0.0;  // final upper bound minus lower bound, requested base
};

// Average mutual information I(X;Y) at a fixed input distribution.
double mutual_information(const InputDistribution& q, const Dmc& ch, LogBase base);

// H(p) = -p log p - (1-p) log(1-p).
double binary_entropy(double p, LogBase base);

// Per-iteration (lower, upper) capacity bounds in nats, for convergence
// diagnostics.
using BaTrace = std::vector<std::pair<double, double>>;

// Alternating-update capacity iteration from a uniform start. Stops once the
// certified bound gap max_k D(P_k || r) - I(Q) drops below tol (in nats);
// on hitting max_iter the best bounds found are returned with gap > tol.
// An optional support mask restricts the optimization to a subset of inputs
// (masked-out symbols get probability exactly 0).
CapacityResult blahut_arimoto(const Dmc& ch, LogBase base, double tol = 1e-9,
                              std::size_t max_iter = 100000,
                              const std::optional<std::vector<bool>>& support =
                                  std::nullopt,
                              BaTrace* trace = nullptr);

// Binary channel that passes input 0 noiselessly and flips input 1 to 0 with
// probability p.
Dmc z_channel(double p);

// Binary symmetric channel with crossover probability p.
Dmc bsc(double p);

// M inputs, M+1 outputs; each symbol erased with probability eps. Capacity
// (1 - eps) log M.
Dmc erasure_channel(std::size_t m_ary, double eps);

// C = log(1 + (1-p) p^{p/(1-p)}) with the matching optimal input; serves as
// an independent oracle for the iterative solver. Requires 0 <= p < 1.
CapacityResult z_channel_capacity_closed_form(double p, LogBase base);

// Appends an erasure column: original entries scale by (1-eps).
Dmc compose_erasure(const Dmc& ch, double eps);

// A = -10 log10(1 - eps) dB, and its inverse.
double attenuation_db(double eps);
double eps_from_attenuation_db(double db);

}  // namespace qcap
