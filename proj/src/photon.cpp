#include "qcap/photon.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qcap {

namespace {

// Boundary between the analytic gamma0 = 0 branch and the general formula;
// the general expression is 0/0-laden as the intensities merge.
bool effectively_equal(double gamma0, double gamma1) {
  return gamma1 - gamma0 <= 1e-12 * gamma1;
}

void append_csv(std::ostream& os, double value, bool last) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  os << buf << (last ? "\n" : ",");
}

}  // namespace

void IntensityPair::validate() const {
  if (!(gamma0 >= 0.0) || !(gamma1 > gamma0))
    throw std::invalid_argument("IntensityPair: need 0 <= gamma0 < gamma1");
}

double ppm_capacity(const PpmConfig& cfg, LogBase base) {
  if (cfg.slots < 2) throw std::invalid_argument("ppm_capacity: need M >= 2");
  if (!(cfg.mean_photons > 0.0))
    throw std::invalid_argument("ppm_capacity: need m > 0");
  const double eps = std::exp(-cfg.mean_photons);
  return (1.0 - eps) * from_nats(std::log(static_cast<double>(cfg.slots)), base);
}

double ook_capacity(const IntensityPair& ip) {
  ip.validate();
  const double g0 = ip.gamma0;
  const double g1 = ip.gamma1;
  if (g0 == 0.0) return g1 / std::numbers::e;
  if (effectively_equal(g0, g1)) return 0.0;

  const double ratio = g1 / g0;
  const double exponent = g1 / (g1 - g0);
  return g0 / std::numbers::e * std::pow(ratio, exponent) -
         g0 * g1 / (g1 - g0) * std::log(ratio);
}

double ook_optimal_q(const IntensityPair& ip) {
  ip.validate();
  const double g0 = ip.gamma0;
  const double g1 = ip.gamma1;
  if (g0 == 0.0) return 1.0 / std::numbers::e;
  if (effectively_equal(g0, g1)) return 0.0;

  const double ratio = g1 / g0;
  const double exponent = g1 / (g1 - g0);
  return g0 / (g1 - g0) * (std::pow(ratio, exponent) / std::numbers::e - 1.0);
}

double capacity_per_photon(const IntensityPair& ip) {
  ip.validate();
  if (ip.gamma0 == 0.0) return 1.0;
  const double q = ook_optimal_q(ip);
  const double gamma_ave = q * (ip.gamma1 - ip.gamma0);
  if (gamma_ave <= 0.0) return 0.0;
  return ook_capacity(ip) / gamma_ave;
}

double cost_per_bit(const IntensityPair& ip) {
  const double cph = capacity_per_photon(ip);
  if (cph <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(2.0) / cph;
}

double divergence(std::span<const double> p, std::span<const double> q, LogBase base) {
  if (p.size() != q.size()) throw std::invalid_argument("divergence: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0)
      throw std::invalid_argument("divergence: absolute continuity violated");
    d += p[i] * std::log(p[i] / q[i]);
  }
  return from_nats(std::max(d, 0.0), base);
}

double capacity_per_unit_cost(const Dmc& channel, const std::vector<double>& costs,
                              LogBase base) {
  channel.validate();
  if (costs.size() != channel.num_inputs())
    throw std::invalid_argument("capacity_per_unit_cost: cost vector size mismatch");

  std::size_t zero_cost = channel.num_inputs();
  for (std::size_t k = 0; k < costs.size(); ++k) {
    if (costs[k] == 0.0) {
      if (zero_cost != channel.num_inputs())
        throw std::invalid_argument("capacity_per_unit_cost: multiple zero-cost inputs");
      zero_cost = k;
    } else if (!(costs[k] > 0.0)) {
      throw std::invalid_argument("capacity_per_unit_cost: negative cost");
    }
  }
  if (zero_cost == channel.num_inputs())
    throw std::invalid_argument("capacity_per_unit_cost: no zero-cost input");

  // Divergence taken from the zero-cost row against each costly row, matching
  // the direction that prices one reliably detected photon at one nat.
  const std::vector<double>& base_row = channel.p[zero_cost];
  double best = 0.0;
  for (std::size_t k = 0; k < channel.num_inputs(); ++k) {
    if (k == zero_cost) continue;
    double d;
    try {
      d = divergence(base_row, channel.p[k], base);
    } catch (const std::invalid_argument&) {
      return std::numeric_limits<double>::infinity();  // disjoint supports
    }
    best = std::max(best, d / costs[k]);
  }
  return best;
}

BandLimitedOok band_limited_ook(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("band_limited_ook: need m > 0");

  BandLimitedOok out;
  out.p = std::exp(-m);

  // q = p^{p/(1-p)} / (1 + p^{p/(1-p)} - p^{1/(1-p)}).
  const double p = out.p;
  const double s = std::exp(std::log(p) * p / (1.0 - p));
  out.q = s / (1.0 + s - std::exp(std::log(p) / (1.0 - p)));

  const double q = out.q;
  const double reach = q * (1.0 - p);  // P(pulse detected)
  out.capacity_nats =
      -reach * std::log(q) + q * p * std::log(p) - (1.0 - reach) * std::log1p(-reach);
  out.nats_per_photon = out.capacity_nats / (q * m);
  return out;
}

std::vector<CostCurvePoint> fig7_curve(const std::vector<double>& gamma1_grid) {
  std::vector<CostCurvePoint> rows;
  rows.reserve(gamma1_grid.size());
  double prev = 1.0;
  for (double g1 : gamma1_grid) {
    if (!(g1 > 1.0))
      throw std::invalid_argument("fig7_curve: gamma1 must exceed gamma0 = 1");
    if (!(g1 > prev) && !rows.empty())
      throw std::invalid_argument("fig7_curve: grid must be strictly increasing");
    prev = g1;
    const IntensityPair ip{1.0, g1};
    CostCurvePoint pt;
    pt.gamma1 = g1;
    pt.capacity_nats_per_s = ook_capacity(ip);
    pt.q_on = ook_optimal_q(ip);
    pt.photons_per_bit = cost_per_bit(ip);
    rows.push_back(pt);
  }
  return rows;
}

std::vector<Fig8Point> fig8_curve(const std::vector<double>& m_grid) {
  std::vector<Fig8Point> rows;
  rows.reserve(m_grid.size());
  double prev = 0.0;
  for (double m : m_grid) {
    if (!(m > 0.0)) throw std::invalid_argument("fig8_curve: m must be positive");
    if (!(m > prev) && !rows.empty())
      throw std::invalid_argument("fig8_curve: grid must be strictly increasing");
    prev = m;
    const BandLimitedOok ook = band_limited_ook(m);
    rows.push_back({m, ook.p, ook.q, ook.capacity_nats, ook.nats_per_photon});
  }
  return rows;
}

void write_fig7_csv(std::ostream& os, const std::vector<CostCurvePoint>& rows) {
  os << "x,capacity_nats,q_on,cost_per_bit\n";
  for (const auto& r : rows) {
    append_csv(os, r.gamma1, false);
    append_csv(os, r.capacity_nats_per_s, false);
    append_csv(os, r.q_on, false);
    append_csv(os, r.photons_per_bit, true);
  }
}

void write_fig8_csv(std::ostream& os, const std::vector<Fig8Point>& rows) {
  os << "m,p,q,capacity_nats,nats_per_photon\n";
  for (const auto& r : rows) {
    append_csv(os, r.m, false);
    append_csv(os, r.p, false);
    append_csv(os, r.q, false);
    append_csv(os, r.capacity_nats, false);
    append_csv(os, r.nats_per_photon, true);
  }
}

}  // namespace qcap
