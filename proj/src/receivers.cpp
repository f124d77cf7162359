#include "qcap/receivers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qcap {

namespace {

constexpr double kPovmTol = 1e-10;

CMat projector(const Ket& psi) {
  CMat m(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

// Polarization angle of a real qubit ket.
double angle_of(const Ket& s) {
  if (s.dim() != 2) throw std::invalid_argument("receivers: expected a qubit signal");
  if (!s.is_real(1e-9))
    throw std::invalid_argument(
        "receivers: signal has complex amplitudes; only linear polarizations "
        "are supported here");
  return std::atan2(s[1].real(), s[0].real());
}

}  // namespace

void Povm::validate() const {
  if (elements.empty()) throw std::invalid_argument("Povm: no elements");
  if (outcome_labels.size() != elements.size())
    throw std::invalid_argument("Povm: label count mismatch");
  const std::size_t d = elements.front().dim();
  CMat sum(d);
  for (const auto& e : elements) {
    if (e.dim() != d) throw std::invalid_argument("Povm: mixed element dimensions");
    if (e.hermiticity_defect() > kPovmTol)
      throw std::invalid_argument("Povm: element is not Hermitian");
    const Spectrum spec = eig_hermitian_raw(e);
    for (double lambda : spec.eigenvalues)
      if (lambda < -kPovmTol)
        throw std::invalid_argument("Povm: element is not positive semidefinite");
    sum += e;
  }
  const CMat defect = sum - CMat::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (std::abs(defect(i, j)) > kPovmTol)
        throw std::invalid_argument("Povm: elements do not sum to identity");
}

Dmc measure_channel(const SignalSet& signals, const Povm& povm) {
  povm.validate();
  if (signals.states.empty())
    throw std::invalid_argument("measure_channel: empty signal set");
  const std::size_t d = povm.dim();

  std::vector<std::vector<double>> p(signals.size(),
                                     std::vector<double>(povm.elements.size()));
  for (std::size_t k = 0; k < signals.size(); ++k) {
    const Ket& s = signals.states[k];
    if (s.dim() != d)
      throw std::invalid_argument("measure_channel: signal/POVM dimension mismatch");
    double row_sum = 0.0;
    for (std::size_t j = 0; j < povm.elements.size(); ++j) {
      const CMat& e = povm.elements[j];
      Complex val(0.0);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          val += std::conj(s[a]) * e(a, b) * s[b];
      double prob = val.real();
      if (prob < 0.0) {
        if (prob < -kPovmTol)
          throw std::invalid_argument("measure_channel: negative outcome probability");
        prob = 0.0;
      }
      p[k][j] = prob;
      row_sum += prob;
    }
    if (std::abs(row_sum - 1.0) > kPovmTol)
      throw std::invalid_argument("measure_channel: outcome probabilities do not sum to 1");
    for (auto& x : p[k]) x /= row_sum;
  }

  std::vector<std::string> in_labels = signals.labels;
  if (in_labels.size() != signals.size()) {
    in_labels.clear();
    for (std::size_t k = 0; k < signals.size(); ++k) in_labels.push_back("s" + std::to_string(k));
  }
  return make_dmc(std::move(p), std::move(in_labels), povm.outcome_labels);
}

Povm polarization_filter(double angle) {
  const Ket pass = ket_from_angle(angle);
  const Ket block = ket_from_angle(angle + std::numbers::pi / 2.0);
  Povm povm;
  povm.elements = {projector(pass), projector(block)};
  povm.outcome_labels = {"0", "1"};
  return povm;
}

BinaryReceiver helstrom_binary(const Ket& s0, const Ket& s1) {
  const double theta0 = angle_of(s0);
  const double theta1 = angle_of(s1);

  // Kets at theta and theta+pi are the same physical state; fold the
  // separation into [0, pi).
  double beta = std::fmod(theta1 - theta0, std::numbers::pi);
  if (beta < 0.0) beta += std::numbers::pi;

  const double p = 0.5 * (1.0 - std::sin(beta));

  // Measurement basis symmetric about the bisector, 45 degrees to each side.
  const double bisector = theta0 + beta / 2.0;
  BinaryReceiver receiver;
  receiver.filter = polarization_filter(bisector - std::numbers::pi / 4.0);
  receiver.error_probability = p;

  SignalSet signals{{s0, s1}, {"s0", "s1"}};
  receiver.channel = measure_channel(signals, receiver.filter);
  return receiver;
}

ErasureReceiver povm_binary_erasure(const Ket& s0, const Ket& s1) {
  const double theta0 = angle_of(s0);
  const double theta1 = angle_of(s1);

  // Effective separation folded into [0, pi/2]: unambiguous discrimination
  // only depends on |<s0|s1>|.
  const double overlap = std::abs(std::cos(theta1 - theta0));
  const double beta = std::acos(std::min(overlap, 1.0));
  if (beta < 1e-12)
    throw std::invalid_argument("povm_binary_erasure: signals are identical");

  const double scale = 1.0 / (1.0 + std::cos(beta));
  const Ket dual0 = ket_from_angle(theta0 + std::numbers::pi / 2.0);
  const Ket dual1 = ket_from_angle(theta1 + std::numbers::pi / 2.0);

  // The element deciding "s0" must annihilate s1, hence it projects onto the
  // dual of s1 (and vice versa).
  CMat decide0 = scale * projector(dual1);
  CMat decide1 = scale * projector(dual0);
  CMat none = CMat::identity(2) - decide0 - decide1;

  ErasureReceiver receiver;
  receiver.povm.elements = {std::move(decide0), std::move(decide1), std::move(none)};
  receiver.povm.outcome_labels = {"s0", "s1", "?"};
  receiver.erasure_probability = std::cos(beta);

  SignalSet signals{{s0, s1}, {"s0", "s1"}};
  receiver.channel = measure_channel(signals, receiver.povm);
  return receiver;
}

SignalSet trine_states() {
  const double third = 2.0 * std::numbers::pi / 3.0;
  SignalSet set;
  set.states = {ket_from_angle(0.0), ket_from_angle(third), ket_from_angle(-third)};
  set.labels = {"s1", "s2", "s3"};
  return set;
}

Povm trine_povm_parallel() {
  const SignalSet trine = trine_states();
  Povm povm;
  for (std::size_t i = 0; i < 3; ++i)
    povm.elements.push_back((2.0 / 3.0) * projector(trine.states[i]));
  povm.outcome_labels = {"1", "2", "3"};
  return povm;
}

Povm trine_povm_orthogonal() {
  const SignalSet trine = trine_states();
  Povm povm;
  for (std::size_t i = 0; i < 3; ++i) {
    const double theta = angle_of(trine.states[i]);
    povm.elements.push_back((2.0 / 3.0) *
                            projector(ket_from_angle(theta + std::numbers::pi / 2.0)));
  }
  povm.outcome_labels = {"1", "2", "3"};
  return povm;
}

SignalSet pair_signals(const SignalSet& base) {
  SignalSet pairs;
  for (std::size_t i = 0; i < base.size(); ++i) {
    pairs.states.push_back(tensor(base.states[i], base.states[i]));
    const std::string label =
        base.labels.size() == base.size() ? base.labels[i] : "s" + std::to_string(i);
    pairs.labels.push_back(label + label);
  }
  return pairs;
}

Povm square_root_measurement(const SignalSet& signals, const InputDistribution& priors) {
  priors.validate();
  if (priors.probs.size() != signals.size())
    throw std::invalid_argument("square_root_measurement: prior/signal count mismatch");
  if (signals.states.empty())
    throw std::invalid_argument("square_root_measurement: empty signal set");
  const std::size_t d = signals.states.front().dim();

  // Two signals that are nearly parallel cannot be told apart and would put
  // a huge weight on the inverse square root; symmetric over-complete sets
  // (pairwise well separated) are fine.
  for (std::size_t i = 0; i < signals.size(); ++i)
    for (std::size_t j = i + 1; j < signals.size(); ++j)
      if (std::abs(inner_product(signals.states[i], signals.states[j])) >
          1.0 - 1e-9)
        throw std::invalid_argument(
            "square_root_measurement: signals nearly dependent, average state "
            "ill-conditioned");

  SignalEnsemble ensemble;
  for (std::size_t k = 0; k < signals.size(); ++k) {
    ensemble.priors.push_back(priors.probs[k]);
    ensemble.states.push_back(density_from_ket(signals.states[k]));
  }
  const DensityMatrix average = mix(ensemble);
  const Spectrum spec = eig_hermitian(average);

  // Inverse square root on the support. Exact complement directions show up
  // at roundoff level and are split off; eigenvalues in the gray zone above
  // roundoff but too small to invert stably mean a hidden near-dependence.
  const double zero_cutoff = 1e-13 * spec.eigenvalues.front();
  const double invertible_cutoff = 1e-9 * spec.eigenvalues.front();
  CMat inv_sqrt(d);
  CMat support_projector(d);
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lambda = spec.eigenvalues[i];
    if (lambda <= zero_cutoff) continue;
    if (lambda < invertible_cutoff)
      throw std::invalid_argument(
          "square_root_measurement: signals nearly dependent, average state "
          "ill-conditioned");
    inv_sqrt += (1.0 / std::sqrt(lambda)) * projector(spec.eigenvectors[i]);
    support_projector += 1.0 * projector(spec.eigenvectors[i]);
  }

  Povm povm;
  for (std::size_t k = 0; k < signals.size(); ++k) {
    CMat e = inv_sqrt.matmul(projector(signals.states[k])).matmul(inv_sqrt);
    e *= priors.probs[k];
    povm.elements.push_back(std::move(e));
    povm.outcome_labels.push_back(std::to_string(k + 1));
  }

  const CMat complement = CMat::identity(d) - support_projector;
  double complement_weight = 0.0;
  for (std::size_t i = 0; i < d; ++i) complement_weight += complement(i, i).real();
  if (complement_weight > kPovmTol) {
    povm.elements.push_back(complement);
    povm.outcome_labels.push_back("null");
  }

  povm.validate();
  return povm;
}

OutcomeHistogram sample_outcomes(const Dmc& channel, std::size_t input_symbol,
                                 std::uint64_t n, std::uint64_t seed) {
  channel.validate();
  if (input_symbol >= channel.num_inputs())
    throw std::invalid_argument("sample_outcomes: input symbol out of range");
  if (n == 0) throw std::invalid_argument("sample_outcomes: need at least one sample");

  const std::vector<double>& row = channel.p[input_symbol];
  std::vector<double> cumulative(row.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    acc += row[j];
    cumulative[j] = acc;
  }
  cumulative.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  OutcomeHistogram hist;
  hist.counts.assign(row.size(), 0);
  hist.samples = n;
  hist.seed = seed;
  hist.generator = "mt19937_64";
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = unit(rng);
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    ++hist.counts[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return hist;
}

}  // namespace qcap
