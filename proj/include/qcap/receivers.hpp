// Compiles quantum signal sets and measurement strategies (projective
// filters, optimal binary detection, unambiguous-discrimination POVMs, the
// square-root measurement) into discrete channels, plus Monte Carlo outcome
// sampling.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcap/dmc.hpp"
#include "qcap/qstate.hpp"

namespace qcap {

// Positive-operator-valued measure: PSD elements summing to identity, one
// per classical outcome.
struct Povm {
  std::vector<CMat> elements;
  std::vector<std::string> outcome_labels;

  std::size_t dim() const { return elements.empty() ? 0 : elements.front().dim(); }

  // Checks Hermiticity, positivity (eigenvalues >= -1e-10) and completeness
  // (sum equals identity within 1e-10).
  void validate() const;
};

// Transmitter alphabet of pure states.
struct SignalSet {
  std::vector<Ket> states;
  std::vector<std::string> labels;

  std::size_t size() const { return states.size(); }
};

// Transition probabilities P(j|k) = <s_k| E_j |s_k>.
Dmc measure_channel(const SignalSet& signals, const Povm& povm);

// Projective two-outcome measurement {|chi><chi|, |chi_perp><chi_perp|} at
// the given orientation.
Povm polarization_filter(double angle);

struct BinaryReceiver {
  Povm filter;
  Dmc channel;
  double error_probability = 0.0;
};

// Minimum-error projective measurement for two equiprobable linear
// polarization signals: the basis bisects the signals symmetrically and the
// induced channel is a BSC with p = (1 - sqrt(1 - |<s0|s1>|^2)) / 2.
// Identical signals yield p = 1/2 (capacity 0), not an error.
BinaryReceiver helstrom_binary(const Ket& s0, const Ket& s1);

struct ErasureReceiver {
  Povm povm;
  Dmc channel;
  double erasure_probability = 0.0;
};

// Three-outcome unambiguous discrimination of two signals separated by angle
// beta: never misidentifies, erases with probability cos(beta). Built from
// projectors onto the duals scaled by 1/(1 + cos beta) plus the completing
// element.
//
// Physically this is realized by adjoining an ancilla photon in a known
// state and projecting onto orthogonal vectors of the extended space; only
// the effective POVM on the signal space enters the transition
// probabilities, so that is what is modeled.
ErasureReceiver povm_binary_erasure(const Ket& s0, const Ket& s1);

// Three symmetric polarizations 120 degrees apart; pairwise overlap -1/2.
SignalSet trine_states();

// Subnormalized projectors (2/3)|s_i><s_i| onto the trine signals.
Povm trine_povm_parallel();

// Subnormalized projectors (2/3)|t_i><t_i| with t_i orthogonal to s_i.
Povm trine_povm_orthogonal();

// Tensor-squared signal set |s_i s_i> for photon-pair transmission.
SignalSet pair_signals(const SignalSet& base);

// Square-root measurement E_j = rho^{-1/2} q_j rho_j rho^{-1/2} on the span
// of the signals, completed by the orthogonal-complement projector when the
// span is not the full space. Minimum-error for symmetric pure-state sets.
// Throws if the average state is too ill-conditioned on its support.
Povm square_root_measurement(const SignalSet& signals, const InputDistribution& priors);

// Monte Carlo channel-output counts. Reproducible: the generator (mt19937_64)
// and seed are recorded alongside the counts.
struct OutcomeHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

OutcomeHistogram sample_outcomes(const Dmc& channel, std::size_t input_symbol,
                                 std::uint64_t n, std::uint64_t seed);

}  // namespace qcap
