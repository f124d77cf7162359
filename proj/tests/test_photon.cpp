#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "poisson_oracle.hpp"
#include "qcap/photon.hpp"

using namespace qcap;
using testing::brute_force_ook;
using testing::OokOracleResult;
using doctest::Approx;

namespace {

constexpr double kE = std::numbers::e;
constexpr double kLn2 = std::numbers::ln2;

}  // namespace

TEST_CASE("PPM capacity factorizes into erasure rate times slot entropy") {
  CHECK(ppm_capacity({2, 40.0}, LogBase::Bits) == Approx(1.0).epsilon(1e-12));
  CHECK(ppm_capacity({1024, 1.0}, LogBase::Bits) ==
        Approx((1.0 - std::exp(-1.0)) * 10.0).epsilon(1e-12));

  // Strictly increasing in both arguments; unbounded in M at fixed m.
  CHECK(ppm_capacity({4096, 1.0}, LogBase::Bits) >
        ppm_capacity({1024, 1.0}, LogBase::Bits));
  CHECK(ppm_capacity({1024, 2.0}, LogBase::Bits) >
        ppm_capacity({1024, 1.0}, LogBase::Bits));

  for (std::size_t m_ary : {2u, 8u, 64u})
    for (double m : {0.1, 1.0, 3.0})
      CHECK(std::abs(ppm_capacity({m_ary, m}, LogBase::Nats) /
                         std::log(static_cast<double>(m_ary)) -
                     (1.0 - std::exp(-m))) <= 1e-12);

  CHECK_THROWS_AS(ppm_capacity({1, 1.0}, LogBase::Bits), std::invalid_argument);
  CHECK_THROWS_AS(ppm_capacity({2, 0.0}, LogBase::Bits), std::invalid_argument);
}

TEST_CASE("OOK capacity: analytic zero-background branch") {
  for (double g1 : {0.1, 1.0, 10.0, 100.0})
    CHECK(ook_capacity({0.0, g1}) == Approx(g1 / kE).epsilon(1e-15));

  // Decreasing-gamma0 sequence converges to the branch value.
  const double g1 = 3.0;
  double prev_err = 1.0;
  for (double g0 : {1e-3, 1e-5, 1e-7}) {
    const double err = std::abs(ook_capacity({g0, g1}) - g1 / kE) / (g1 / kE);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(std::abs(ook_capacity({1e-9 * g1, g1}) - g1 / kE) / (g1 / kE) <= 1e-6);

  // Indistinguishable intensities carry nothing.
  CHECK(ook_capacity({1.0, 1.0 + 1e-13}) == 0.0);
  CHECK_THROWS_AS(ook_capacity({1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(ook_capacity({-0.1, 1.0}), std::invalid_argument);
}

TEST_CASE("OOK capacity matches the brute-force Poisson oracle on a 5x5 grid") {
  for (double g0 : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    for (double g1 : {8.0, 10.0, 20.0, 50.0, 100.0}) {
      const double closed = ook_capacity({g0, g1});
      const OokOracleResult oracle = brute_force_ook(g0, g1);
      CHECK(std::abs(closed - oracle.rate_nats_per_s) / closed <= 1e-6);
    }
  }
}

TEST_CASE("optimal on-probability") {
  CHECK(ook_optimal_q({0.0, 5.0}) == Approx(1.0 / kE).epsilon(1e-15));

  const OokOracleResult oracle = brute_force_ook(1.0, 10.0);
  const double q = ook_optimal_q({1.0, 10.0});
  CHECK(q > 0.0);
  CHECK(q < 1.0);
  CHECK(std::abs(q - oracle.q_on) <= 1e-3);

  // gamma_ave definition used throughout the cost analysis.
  const IntensityPair ip{1.0, 10.0};
  const double gamma_ave = q * (ip.gamma1 - ip.gamma0);
  CHECK(capacity_per_photon(ip) == Approx(ook_capacity(ip) / gamma_ave).epsilon(1e-12));
}

TEST_CASE("capacity per photon and the cost of a bit") {
  for (double g1 : {0.1, 1.0, 10.0, 100.0}) {
    CHECK(std::abs(capacity_per_photon({0.0, g1}) - 1.0) <= 1e-9);
    CHECK(std::abs(from_nats(capacity_per_photon({0.0, g1}), LogBase::Bits) -
                   1.0 / kLn2) <= 1e-9);
  }

  // With background light the cost per bit approaches ln 2 from above.
  const double tail = cost_per_bit({1.0, 1e4});
  CHECK(tail >= kLn2);
  CHECK(std::abs(tail - kLn2) / kLn2 <= 0.01);

  // Vanishing contrast: diverging cost.
  CHECK(cost_per_bit({1.0, 1.0 + 1e-6}) > 1e3);
}

TEST_CASE("divergence basics and the worked evaluations") {
  const std::vector<double> p{0.5, 0.5};
  CHECK(divergence(p, p, LogBase::Bits) == Approx(0.0));

  // Z-channel rows at p = e^{-m}: off-row against on-row costs exactly m nats.
  for (double m : {0.5, 1.0, 2.0}) {
    const Dmc z = z_channel(std::exp(-m));
    CHECK(divergence(z.p[0], z.p[1], LogBase::Nats) == Approx(m).epsilon(1e-12));
  }

  const std::vector<double> quarters{0.25, 0.75};
  const double expected_bits = 0.5 + 0.5 * std::log2(2.0 / 3.0);
  CHECK(divergence(p, quarters, LogBase::Bits) ==
        Approx(expected_bits).epsilon(1e-12));
  CHECK(std::abs(divergence(p, quarters, LogBase::Bits) - 0.2075) <= 5e-5);

  CHECK_THROWS_AS(divergence(p, std::vector<double>{1.0, 0.0}, LogBase::Bits),
                  std::invalid_argument);
  CHECK_THROWS_AS(divergence(p, std::vector<double>{0.5}, LogBase::Bits),
                  std::invalid_argument);
}

TEST_CASE("capacity per unit cost") {
  SUBCASE("photon-counting family is flat at one nat per photon") {
    for (double m : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const Dmc z = z_channel(std::exp(-m));
      const double c = capacity_per_unit_cost(z, {0.0, m}, LogBase::Nats);
      CHECK(std::abs(c - 1.0) <= 1e-9);
    }
  }
  SUBCASE("identical rows carry nothing at any cost") {
    const Dmc flat = make_dmc({{0.4, 0.6}, {0.4, 0.6}});
    CHECK(capacity_per_unit_cost(flat, {0.0, 3.0}, LogBase::Nats) == Approx(0.0));
  }
  SUBCASE("disjoint supports report unbounded") {
    const Dmc ident = make_dmc({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(std::isinf(capacity_per_unit_cost(ident, {0.0, 1.0}, LogBase::Nats)));
  }
  SUBCASE("cost vector validation") {
    const Dmc z = z_channel(0.5);
    CHECK_THROWS_AS(capacity_per_unit_cost(z, {1.0, 2.0}, LogBase::Nats),
                    std::invalid_argument);
    CHECK_THROWS_AS(capacity_per_unit_cost(z, {0.0, 0.0}, LogBase::Nats),
                    std::invalid_argument);
    CHECK_THROWS_AS(capacity_per_unit_cost(z, {0.0, -1.0}, LogBase::Nats),
                    std::invalid_argument);
    CHECK_THROWS_AS(capacity_per_unit_cost(z, {0.0}, LogBase::Nats),
                    std::invalid_argument);
  }
}

TEST_CASE("band-limited OOK evaluated at its optimal input") {
  SUBCASE("erasure probability and efficiency anchors") {
    const BandLimitedOok tiny = band_limited_ook(0.01);
    CHECK(std::abs(tiny.nats_per_photon - 1.0) <= 0.01);

    const BandLimitedOok one = band_limited_ook(1.0);
    CHECK(one.p == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(band_limited_ook(0.0), std::invalid_argument);
  }
  SUBCASE("the closed-form input matches the iterative optimum") {
    for (double m : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const BandLimitedOok ook = band_limited_ook(m);
      const CapacityResult ba = blahut_arimoto(z_channel(ook.p), LogBase::Nats, 1e-12);
      CHECK(std::abs(ook.q - ba.optimal_input.probs[1]) <= 1e-6);
      CHECK(std::abs(ook.capacity_nats - ba.capacity) <= 1e-9);
    }
  }
  SUBCASE("efficiency decreases with pulse energy, bounded by one nat") {
    double prev = 2.0;
    for (double m : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double cph = band_limited_ook(m).nats_per_photon;
      CHECK(cph < prev);
      CHECK(cph <= 1.0 + 1e-9);
      prev = cph;
    }
  }
}

TEST_CASE("curve tabulation") {
  SUBCASE("intensity-limited curve ends near the ln 2 floor") {
    const std::vector<double> grid{2.0, 10.0, 100.0, 1000.0, 10000.0};
    const std::vector<CostCurvePoint> rows = fig7_curve(grid);
    REQUIRE(rows.size() == grid.size());
    CHECK(std::abs(rows.back().photons_per_bit - kLn2) / kLn2 <= 0.01);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].photons_per_bit < rows[i - 1].photons_per_bit);
    for (const auto& r : rows) CHECK(r.photons_per_bit >= kLn2 - 1e-9);
  }
  SUBCASE("band-limited curve starts near one nat per photon") {
    const std::vector<double> grid{0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
    const std::vector<Fig8Point> rows = fig8_curve(grid);
    CHECK(std::abs(rows.front().nats_per_photon - 1.0) <= 0.01);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].nats_per_photon < rows[i - 1].nats_per_photon);
  }
  SUBCASE("degenerate one-point grid") {
    CHECK(fig7_curve({5.0}).size() == 1);
    CHECK(fig8_curve({1.0}).size() == 1);
  }
  SUBCASE("domain violations") {
    CHECK_THROWS_AS(fig7_curve({0.5, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fig7_curve({10.0, 5.0}), std::invalid_argument);
    CHECK_THROWS_AS(fig8_curve({-1.0}), std::invalid_argument);
  }
  SUBCASE("CSV schemas") {
    std::ostringstream fig7;
    write_fig7_csv(fig7, fig7_curve({2.0, 4.0}));
    CHECK(fig7.str().rfind("x,capacity_nats,q_on,cost_per_bit\n", 0) == 0);

    std::ostringstream fig8;
    write_fig8_csv(fig8, fig8_curve({0.5, 1.0}));
    CHECK(fig8.str().rfind("m,p,q,capacity_nats,nats_per_photon\n", 0) == 0);
    // Header plus one line per point.
    std::size_t lines = 0;
    for (char c : fig8.str())
      if (c == '\n') ++lines;
    CHECK(lines == 3);
  }
}
