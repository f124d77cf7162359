#include "qcap/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcap {

namespace {

constexpr double kSumTol = 1e-12;

std::vector<std::string> default_labels(std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(what) + ": probability outside [0,1]");
}

}  // namespace

void Dmc::validate() const {
  if (p.empty() || p.front().empty())
    throw std::invalid_argument("Dmc: empty transition matrix");
  const std::size_t cols = p.front().size();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].size() != cols)
      throw std::invalid_argument("Dmc: ragged transition matrix at row " +
                                  std::to_string(k));
    double sum = 0.0;
    for (double x : p[k]) {
      if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("Dmc: entry outside [0,1] in row " +
                                    std::to_string(k));
      sum += x;
    }
    if (std::abs(sum - 1.0) > kSumTol)
      throw std::invalid_argument("Dmc: row " + std::to_string(k) +
                                  " sums to " + std::to_string(sum));
  }
  if (input_labels.size() != p.size() || output_labels.size() != cols)
    throw std::invalid_argument("Dmc: label count mismatch");
}

Dmc make_dmc(std::vector<std::vector<double>> p,
             std::vector<std::string> input_labels,
             std::vector<std::string> output_labels) {
  Dmc ch;
  ch.p = std::move(p);
  ch.input_labels = input_labels.empty() && !ch.p.empty()
                        ? default_labels(ch.p.size(), "")
                        : std::move(input_labels);
  ch.output_labels = output_labels.empty() && !ch.p.empty()
                         ? default_labels(ch.p.front().size(), "")
                         : std::move(output_labels);
  ch.validate();
  return ch;
}

void InputDistribution::validate() const {
  double sum = 0.0;
  for (double q : probs) {
    if (q < 0.0) throw std::invalid_argument("InputDistribution: negative entry");
    sum += q;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw std::invalid_argument("InputDistribution: entries do not sum to 1");
}

double mutual_information(const InputDistribution& q, const Dmc& ch, LogBase base) {
  ch.validate();
  q.validate();
  if (q.probs.size() != ch.num_inputs())
    throw std::invalid_argument("mutual_information: dimension mismatch");

  const std::size_t nj = ch.num_outputs();
  std::vector<double> marginal(nj, 0.0);
  for (std::size_t k = 0; k < ch.num_inputs(); ++k)
    for (std::size_t j = 0; j < nj; ++j) marginal[j] += q.probs[k] * ch.p[k][j];

  double info = 0.0;
  for (std::size_t k = 0; k < ch.num_inputs(); ++k) {
    if (q.probs[k] == 0.0) continue;
    for (std::size_t j = 0; j < nj; ++j) {
      const double pjk = ch.p[k][j];
      if (pjk == 0.0) continue;
      info += q.probs[k] * pjk * std::log(pjk / marginal[j]);
    }
  }
  return from_nats(std::max(info, 0.0), base);
}

double binary_entropy(double p, LogBase base) {
  check_probability(p, "binary_entropy");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return from_nats(h, base);
}

CapacityResult blahut_arimoto(const Dmc& ch, LogBase base, double tol,
                              std::size_t max_iter,
                              const std::optional<std::vector<bool>>& support,
                              BaTrace* trace) {
  ch.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("blahut_arimoto: tol must be > 0");

  const std::size_t nk = ch.num_inputs();
  const std::size_t nj = ch.num_outputs();

  std::vector<bool> active(nk, true);
  if (support) {
    if (support->size() != nk)
      throw std::invalid_argument("blahut_arimoto: support mask size mismatch");
    active = *support;
  }
  std::size_t n_active = 0;
  for (bool a : active) n_active += a ? 1 : 0;
  if (n_active == 0)
    throw std::invalid_argument("blahut_arimoto: empty input support");

  std::vector<double> q(nk, 0.0);
  for (std::size_t k = 0; k < nk; ++k)
    if (active[k]) q[k] = 1.0 / static_cast<double>(n_active);

  std::vector<double> marginal(nj);
  std::vector<double> div(nk);
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;

  while (iter < max_iter) {
    ++iter;
    std::fill(marginal.begin(), marginal.end(), 0.0);
    for (std::size_t k = 0; k < nk; ++k) {
      if (q[k] == 0.0) continue;
      for (std::size_t j = 0; j < nj; ++j) marginal[j] += q[k] * ch.p[k][j];
    }

    // div[k] = D(P(.|k) || marginal); lower bound I(Q), upper bound max_k.
    lower = 0.0;
    upper = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nk; ++k) {
      if (!active[k]) continue;
      double d = 0.0;
      for (std::size_t j = 0; j < nj; ++j) {
        const double pjk = ch.p[k][j];
        // Floor keeps the divergence finite if an input weight has
        // underflowed and emptied an output column.
        if (pjk > 0.0) d += pjk * std::log(pjk / std::max(marginal[j], 1e-300));
      }
      div[k] = d;
      lower += q[k] * d;
      upper = std::max(upper, d);
    }
    if (trace) trace->emplace_back(lower, upper);
    if (upper - lower <= tol) break;

    double norm = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
      if (!active[k]) continue;
      // Multiplicative update against the current best input keeps the
      // exponentials bounded.
      q[k] *= std::exp(div[k] - upper);
      norm += q[k];
    }
    for (std::size_t k = 0; k < nk; ++k) q[k] /= norm;
  }

  // Snap underflowed weights to exact zero and renormalize.
  double norm = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    if (q[k] < 1e-12) q[k] = 0.0;
    norm += q[k];
  }
  for (auto& x : q) x /= norm;

  CapacityResult result;
  result.capacity = from_nats(std::max(lower, 0.0), base);
  result.optimal_input.probs = std::move(q);
  result.iterations = iter;
  result.gap = from_nats(std::max(upper - lower, 0.0), base);
  return result;
}

Dmc z_channel(double p) {
  check_probability(p, "z_channel");
  return make_dmc({{1.0, 0.0}, {p, 1.0 - p}});
}

Dmc bsc(double p) {
  check_probability(p, "bsc");
  return make_dmc({{1.0 - p, p}, {p, 1.0 - p}});
}

Dmc erasure_channel(std::size_t m_ary, double eps) {
  if (m_ary < 2) throw std::invalid_argument("erasure_channel: need at least 2 inputs");
  check_probability(eps, "erasure_channel");
  std::vector<std::vector<double>> p(m_ary, std::vector<double>(m_ary + 1, 0.0));
  std::vector<std::string> outputs;
  for (std::size_t k = 0; k < m_ary; ++k) {
    p[k][k] = 1.0 - eps;
    p[k][m_ary] = eps;
    outputs.push_back(std::to_string(k));
  }
  outputs.push_back("?");
  return make_dmc(std::move(p), default_labels(m_ary, ""), std::move(outputs));
}

CapacityResult z_channel_capacity_closed_form(double p, LogBase base) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("z_channel_capacity_closed_form: need 0 <= p < 1");

  // s = p^{p/(1-p)}, C = log(1 + (1-p) s). Optimal weight on the noisy input
  // follows from d/dq H2(q(1-p)) = H2(p): q1 = s / (1 + (1-p) s).
  const double s = p == 0.0 ? 1.0 : std::exp(std::log(p) * p / (1.0 - p));
  const double capacity_nats = std::log1p((1.0 - p) * s);
  const double q1 = s / (1.0 + (1.0 - p) * s);

  CapacityResult result;
  result.capacity = from_nats(capacity_nats, base);
  result.optimal_input.probs = {1.0 - q1, q1};
  result.iterations = 0;
  result.gap = 0.0;
  return result;
}

Dmc compose_erasure(const Dmc& ch, double eps) {
  ch.validate();
  check_probability(eps, "compose_erasure");
  Dmc out = ch;
  for (auto& row : out.p) {
    for (auto& x : row) x *= (1.0 - eps);
    row.push_back(eps);
  }
  out.output_labels.push_back("?");
  out.validate();
  return out;
}

double attenuation_db(double eps) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("attenuation_db: need 0 <= eps < 1");
  return -10.0 * std::log10(1.0 - eps);
}

double eps_from_attenuation_db(double db) {
  if (db < 0.0) throw std::invalid_argument("eps_from_attenuation_db: negative dB");
  return 1.0 - std::pow(10.0, -db / 10.0);
}

}  // namespace qcap
