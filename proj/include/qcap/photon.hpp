// Photon-counting (Poisson) channel analysis: PPM erasure capacity,
// intensity-limited OOK capacity, capacity per unit cost, and band-limited
// OOK efficiency curves.
#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "qcap/dmc.hpp"
#include "qcap/qstate.hpp"

namespace qcap {

// Background ("off"/dark) and peak ("on") optical intensities in photons/s.
// Requires 0 <= gamma0 < gamma1.
struct IntensityPair {
  double gamma0 = 0.0;
  double gamma1 = 0.0;

  void validate() const;
};

// Pulse position modulation: one pulse of mean photon count m placed in one
// of M time slots.
struct PpmConfig {
  std::size_t slots = 2;      // M
  double mean_photons = 0.0;  // m
};

// One sample of the intensity-limited OOK efficiency curve.
struct CostCurvePoint {
  double gamma1 = 0.0;
  double capacity_nats_per_s = 0.0;
  double q_on = 0.0;
  double photons_per_bit = 0.0;  // >= ln 2
};

// One sample of the band-limited OOK efficiency curve.
struct Fig8Point {
  double m = 0.0;
  double p = 0.0;
  double q = 0.0;
  double capacity_nats = 0.0;
  double nats_per_photon = 0.0;
};

// Erasure capacity (1 - e^{-m}) log M per transmission.
double ppm_capacity(const PpmConfig& cfg, LogBase base);

// Channel capacity of intensity-limited on-off keying in nats/s. The
// gamma0 -> 0 branch gives gamma1/e analytically; intensities equal within
// 1e-12 relative map to zero by continuity.
double ook_capacity(const IntensityPair& ip);

// Capacity-achieving probability of the "on" symbol; 1/e in the gamma0 -> 0
// branch.
double ook_optimal_q(const IntensityPair& ip);

// Capacity per mean signal photon, C / (q (gamma1 - gamma0)), in nats/photon.
double capacity_per_photon(const IntensityPair& ip);

// Cost in photons to convey one bit, ln 2 / capacity_per_photon.
double cost_per_bit(const IntensityPair& ip);

// Kullback-Leibler divergence D(p || q). Throws on an absolute-continuity
// violation (q(x) = 0 with p(x) > 0).
double divergence(std::span<const double> p, std::span<const double> q, LogBase base);

// Capacity per unit cost for a channel with exactly one zero-cost input:
// max over costly inputs x of D(P(.|zero-cost) || P(.|x)) / cost[x]. Returns
// +infinity when some divergence is unbounded (disjoint output supports).
double capacity_per_unit_cost(const Dmc& channel, const std::vector<double>& costs,
                              LogBase base);

struct BandLimitedOok {
  double p = 0.0;              // erasure of the on pulse, e^{-m}
  double q = 0.0;              // optimal on probability
  double capacity_nats = 0.0;  // per symbol slot
  double nats_per_photon = 0.0;
};

// Symbol-by-symbol detection of finite-duration OOK pulses: the induced
// Z-channel evaluated at its optimal input.
BandLimitedOok band_limited_ook(double m);

// Efficiency curve at gamma0 = 1 versus gamma1 (grid strictly increasing,
// entries > 1).
std::vector<CostCurvePoint> fig7_curve(const std::vector<double>& gamma1_grid);

// Band-limited OOK curve versus the mean photons per pulse m (grid strictly
// increasing, entries > 0).
std::vector<Fig8Point> fig8_curve(const std::vector<double>& m_grid);

// CSV emission, 12 significant digits.
void write_fig7_csv(std::ostream& os, const std::vector<CostCurvePoint>& rows);
void write_fig8_csv(std::ostream& os, const std::vector<Fig8Point>& rows);

}  // namespace qcap
