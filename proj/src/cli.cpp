#include "qcap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcap/dmc.hpp"
#include "qcap/holevo.hpp"
#include "qcap/json_io.hpp"
#include "qcap/photon.hpp"
#include "qcap/receivers.hpp"

namespace qcap::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

double deg2rad(double deg) { return deg * kPi / 180.0; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return json::parse(in);
}

const char* base_unit(LogBase base) { return base == LogBase::Bits ? "bit" : "nat"; }

void print_channel(std::ostream& os, const Dmc& ch) {
  os << "channel P(j|k):\n";
  for (std::size_t k = 0; k < ch.num_inputs(); ++k) {
    os << "  " << ch.input_labels[k] << " ->";
    for (std::size_t j = 0; j < ch.num_outputs(); ++j)
      os << " " << ch.output_labels[j] << ":" << fixed4(ch.p[k][j]);
    os << "\n";
  }
}

void print_report(std::ostream& os, const RunReport& report, bool json_mode) {
  if (json_mode) {
    os << report.to_json().dump(2) << "\n";
    return;
  }
  for (const auto& row : report.results)
    os << row.name << " = " << fixed4(row.value)
       << (row.unit.empty() ? "" : " " + row.unit) << "\n";
}

}  // namespace

double Comparison::abs_delta() const { return std::abs(computed - paper); }

bool Comparison::pass() const { return abs_delta() <= tolerance; }

json RunReport::to_json() const {
  json j;
  j["scenario"] = scenario;
  j["inputs"] = inputs;
  j["results"] = json::array();
  for (const auto& row : results)
    j["results"].push_back({{"name", row.name}, {"value", row.value}, {"unit", row.unit}});
  if (!comparisons.empty()) {
    j["comparisons"] = json::array();
    for (const auto& c : comparisons)
      j["comparisons"].push_back({{"name", c.name},
                                  {"computed", c.computed},
                                  {"paper", c.paper},
                                  {"tolerance", c.tolerance},
                                  {"unit", c.unit},
                                  {"abs_delta", c.abs_delta()},
                                  {"pass", c.pass()}});
  }
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["tool_version"] = tool_version;
  return j;
}

RunReport RunReport::from_json(const json& j) {
  if (!j.is_object()) throw ParseError("RunReport: expected an object");
  RunReport report;
  report.scenario = j.at("scenario").get<std::string>();
  report.inputs = j.at("inputs");
  for (const auto& row : j.at("results"))
    report.results.push_back({row.at("name").get<std::string>(),
                              row.at("value").get<double>(),
                              row.at("unit").get<std::string>()});
  if (j.contains("comparisons")) {
    for (const auto& c : j["comparisons"])
      report.comparisons.push_back({c.at("name").get<std::string>(),
                                    c.at("computed").get<double>(),
                                    c.at("paper").get<double>(),
                                    c.at("tolerance").get<double>(),
                                    c.at("unit").get<std::string>()});
  }
  if (j.contains("seed") && !j.at("seed").is_null())
    report.seed = j.at("seed").get<std::uint64_t>();
  report.tool_version = j.at("tool_version").get<std::string>();
  return report;
}

std::vector<Comparison> reproduce_comparisons() {
  std::vector<Comparison> rows;
  const LogBase bits = LogBase::Bits;

  // Horizontal filter on the {0, 45 degree} pair: Z-channel.
  {
    SignalSet signals{{ket_from_angle(0.0), ket_from_angle(kPi / 4.0)}, {"s0", "s1"}};
    const Dmc ch = measure_channel(signals, polarization_filter(0.0));
    const CapacityResult cap = blahut_arimoto(ch, bits);
    rows.push_back({"fig1_z_channel", cap.capacity, 0.32, 0.005, "bit"});
    rows.push_back({"fig1_q0", cap.optimal_input.probs[0], 0.60, 0.005, "prob"});
  }

  // Minimum-error filter on the same pair: BSC.
  {
    const BinaryReceiver rec =
        helstrom_binary(ket_from_angle(0.0), ket_from_angle(kPi / 4.0));
    rows.push_back({"fig2_bsc_p", rec.error_probability, 0.146, 0.001, "prob"});
    const CapacityResult cap = blahut_arimoto(rec.channel, bits);
    rows.push_back({"fig2_capacity", cap.capacity, 0.40, 0.005, "bit"});
  }

  // Unambiguous-discrimination POVM on the same pair: erasure channel.
  {
    const ErasureReceiver rec =
        povm_binary_erasure(ket_from_angle(0.0), ket_from_angle(kPi / 4.0));
    rows.push_back(
        {"fig3_erasure_eps", rec.erasure_probability, 1.0 / std::sqrt(2.0), 1e-9, "prob"});
    const CapacityResult cap = blahut_arimoto(rec.channel, bits);
    rows.push_back({"fig3_capacity", cap.capacity, 0.293, 0.005, "bit"});
  }

  // Holevo quantity of the 45-degree pure pair.
  {
    SignalEnsemble e;
    e.priors = {0.5, 0.5};
    e.states = {density_from_ket(ket_from_angle(0.0)),
                density_from_ket(ket_from_angle(kPi / 4.0))};
    rows.push_back({"sec32_cn_45deg", holevo_chi(e, bits), 0.60, 0.005, "bit"});
  }

  // Ternary signaling.
  {
    const SignalSet trine = trine_states();
    const Dmc parallel = measure_channel(trine, trine_povm_parallel());
    rows.push_back({"fig4_parallel_capacity", blahut_arimoto(parallel, bits).capacity,
                    0.33, 0.005, "bit"});
    const Dmc orthogonal = measure_channel(trine, trine_povm_orthogonal());
    rows.push_back({"fig4_orthogonal_capacity",
                    blahut_arimoto(orthogonal, bits).capacity, 0.585, 0.005, "bit"});

    std::vector<DensityMatrix> states;
    for (const auto& s : trine.states) states.push_back(density_from_ket(s));
    rows.push_back(
        {"fig4_trine_cn", maximize_holevo(states, bits).capacity, 1.0, 1e-6, "bit"});

    const BinaryReceiver sub = helstrom_binary(trine.states[1], trine.states[2]);
    rows.push_back({"sec33_binary_p", sub.error_probability, 0.067, 0.001, "prob"});
    rows.push_back({"sec33_binary_capacity", blahut_arimoto(sub.channel, bits).capacity,
                    0.65, 0.005, "bit"});
  }

  // Photon-pair transmission with the square-root measurement.
  {
    const SignalSet pairs = pair_signals(trine_states());
    InputDistribution uniform{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    const Dmc ch = measure_channel(pairs, square_root_measurement(pairs, uniform));
    rows.push_back({"fig5_diagonal", ch.p[0][0], 0.97, 0.005, "prob"});
    rows.push_back({"fig5_offdiagonal", ch.p[0][1], 0.015, 0.005, "prob"});
    const CapacityResult cap = blahut_arimoto(ch, bits);
    rows.push_back({"fig5_pair_CS", cap.capacity, 1.37, 0.01, "bit"});
    rows.push_back({"fig5_CS_per_photon", cap.capacity / 2.0, 0.68, 0.005, "bit/photon"});

    std::vector<DensityMatrix> states;
    for (const auto& s : pairs.states) states.push_back(density_from_ket(s));
    const HolevoResult holevo = maximize_holevo(states, bits);
    rows.push_back({"fig5_pair_CN_total", holevo.capacity, 1.50, 0.005, "bit"});
    rows.push_back({"fig5_pair_CN", holevo.capacity / 2.0, 0.75, 0.005, "bit/photon"});
  }

  // Attenuation as flagged erasure.
  {
    const BinaryReceiver rec =
        helstrom_binary(ket_from_angle(0.0), ket_from_angle(kPi / 4.0));
    const Dmc eroded = compose_erasure(rec.channel, 0.1);
    rows.push_back({"sec351_bsc_erasure", blahut_arimoto(eroded, bits).capacity, 0.36,
                    0.005, "bit"});
    rows.push_back({"sec351_attenuation_db", attenuation_db(0.1), 0.46, 0.005, "dB"});

    SignalEnsemble orthogonal;
    orthogonal.priors = {0.5, 0.5};
    orthogonal.states = {density_from_ket(ket_from_angle(0.0)),
                         density_from_ket(ket_from_angle(kPi / 2.0))};
    const double eps = eps_from_attenuation_db(1.0);
    rows.push_back({"sec351_orthogonal_1db", attenuated_holevo(orthogonal, eps, bits),
                    0.79, 0.005, "bit"});
  }

  // Polarization noise with orthogonal signals.
  {
    const NoisyCapacities caps = noisy_orthogonal_capacity(0.1, bits);
    rows.push_back({"sec352_noise_cn", caps.c_n, 0.53, 0.005, "bit"});
    rows.push_back({"sec352_cn_cs_gap", std::abs(caps.c_n - caps.c_s), 0.0, 1e-9, "bit"});
  }

  // Ideal photon counting: 1 nat per photon. Report the worst-deviating
  // point of the intensity grid.
  {
    double worst_cph = 1.0;
    for (double g1 : {0.1, 1.0, 10.0, 100.0}) {
      const double cph = capacity_per_photon({0.0, g1});
      if (std::abs(cph - 1.0) > std::abs(worst_cph - 1.0)) worst_cph = cph;
    }
    rows.push_back({"eq45_cph_nat", worst_cph, 1.0, 1e-9, "nat/photon"});
    rows.push_back({"eq45_cph_bit", from_nats(worst_cph, bits), 1.0 / kLn2, 1e-9,
                    "bit/photon"});
  }

  // Intensity-limited OOK efficiency approaches the ln 2 floor.
  {
    const double tail = cost_per_bit({1.0, 1e4});
    rows.push_back({"fig7_cost_bit_tail", tail, kLn2, 0.01 * kLn2, "photon/bit"});
  }

  // Band-limited OOK anchor points.
  {
    rows.push_back(
        {"fig8_cph_at_0p01", band_limited_ook(0.01).nats_per_photon, 1.0, 0.01,
         "nat/photon"});
    double worst = 0.0;
    for (double m : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const BandLimitedOok ook = band_limited_ook(m);
      const CapacityResult ba = blahut_arimoto(z_channel(ook.p), LogBase::Nats, 1e-12);
      worst = std::max(worst, std::abs(ook.q - ba.optimal_input.probs[1]));
    }
    rows.push_back({"eq52_q_ba_gap", worst, 0.0, 1e-6, "prob"});
  }

  return rows;
}

int render_reproduce(const std::vector<Comparison>& rows, bool json_mode,
                     std::ostream& os) {
  bool all_pass = true;
  for (const auto& row : rows) all_pass = all_pass && row.pass();

  if (json_mode) {
    RunReport report;
    report.scenario = "reproduce";
    for (const auto& row : rows)
      report.results.push_back({row.name, row.computed, row.unit});
    report.comparisons = rows;
    os << report.to_json().dump(2) << "\n";
  } else {
    os << "scenario                    computed    paper       |delta|    result\n";
    for (const auto& row : rows) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-27s %-11.4f %-11.4f %-10.2e %s\n",
                    row.name.c_str(), row.computed, row.paper, row.abs_delta(),
                    row.pass() ? "pass" : "FAIL");
      os << line;
    }
    if (!all_pass) {
      os << "failures:";
      for (const auto& row : rows)
        if (!row.pass()) os << " " << row.name;
      os << "\n";
    }
  }
  return all_pass ? kExitOk : kExitTolerance;
}

int cmd_reproduce(bool json_mode, std::ostream& os) {
  return render_reproduce(reproduce_comparisons(), json_mode, os);
}

int cmd_dmc_capacity(const std::string& path, LogBase base, bool json_mode,
                     std::ostream& os) {
  Dmc ch;
  try {
    ch = dmc_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }

  CapacityResult cap;
  try {
    ch.validate();
    cap = blahut_arimoto(ch, base);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  RunReport report;
  report.scenario = "dmc_capacity";
  report.inputs = {{"file", path}, {"base", base_unit(base)}};
  report.results.push_back({"capacity", cap.capacity, base_unit(base)});
  for (std::size_t k = 0; k < cap.optimal_input.probs.size(); ++k)
    report.results.push_back(
        {"Q*(" + ch.input_labels[k] + ")", cap.optimal_input.probs[k], "prob"});

  if (!json_mode) print_channel(os, ch);
  print_report(os, report, json_mode);
  return kExitOk;
}

int cmd_holevo(const std::string& path, LogBase base, bool json_mode,
               std::ostream& os) {
  SignalEnsemble ensemble;
  try {
    ensemble = ensemble_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    // Well-formed file, numerically invalid state (bad norm, trace, ...).
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  RunReport report;
  report.scenario = "holevo";
  report.inputs = {{"file", path}, {"base", base_unit(base)}};
  try {
    const HolevoResult result = maximize_holevo(ensemble.states, base);
    report.results.push_back({"capacity", result.capacity, base_unit(base)});
    report.results.push_back({"chi_at_uniform", result.chi_at_uniform, base_unit(base)});
    for (std::size_t k = 0; k < result.optimal_priors.probs.size(); ++k)
      report.results.push_back(
          {"q*(" + std::to_string(k) + ")", result.optimal_priors.probs[k], "prob"});
    InputDistribution file_priors{ensemble.priors};
    file_priors.validate();
    report.results.push_back({"chi_at_file_priors", holevo_chi(ensemble, base),
                              base_unit(base)});
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  print_report(os, report, json_mode);
  return kExitOk;
}

int cmd_receiver(const ReceiverOptions& opt, LogBase base, bool json_mode,
                 std::ostream& os) {
  Dmc ch;
  RunReport report;
  report.scenario = "receiver_" + opt.kind;
  report.inputs = {{"kind", opt.kind},
                   {"s0_deg", opt.s0_deg},
                   {"s1_deg", opt.s1_deg},
                   {"angle_deg", opt.angle_deg},
                   {"samples", opt.samples},
                   {"base", base_unit(base)}};

  try {
    if (opt.kind == "filter") {
      SignalSet signals{{ket_from_angle(deg2rad(opt.s0_deg)),
                         ket_from_angle(deg2rad(opt.s1_deg))},
                        {"s0", "s1"}};
      ch = measure_channel(signals, polarization_filter(deg2rad(opt.angle_deg)));
    } else if (opt.kind == "helstrom") {
      const BinaryReceiver rec = helstrom_binary(ket_from_angle(deg2rad(opt.s0_deg)),
                                                 ket_from_angle(deg2rad(opt.s1_deg)));
      ch = rec.channel;
      report.results.push_back({"error_probability", rec.error_probability, "prob"});
    } else if (opt.kind == "erasure") {
      const ErasureReceiver rec = povm_binary_erasure(
          ket_from_angle(deg2rad(opt.s0_deg)), ket_from_angle(deg2rad(opt.s1_deg)));
      ch = rec.channel;
      report.results.push_back({"erasure_probability", rec.erasure_probability, "prob"});
    } else if (opt.kind == "trine-parallel") {
      ch = measure_channel(trine_states(), trine_povm_parallel());
    } else if (opt.kind == "trine-orthogonal") {
      ch = measure_channel(trine_states(), trine_povm_orthogonal());
    } else if (opt.kind == "pair-srm") {
      const SignalSet pairs = pair_signals(trine_states());
      InputDistribution uniform{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      ch = measure_channel(pairs, square_root_measurement(pairs, uniform));
    } else {
      std::cerr << "validation error: unknown receiver kind: " << opt.kind << "\n";
      return kExitValidation;
    }

    const CapacityResult cap = blahut_arimoto(ch, base);
    report.results.push_back({"capacity", cap.capacity, base_unit(base)});

    if (opt.samples > 0) {
      report.seed = opt.seed;
      report.inputs["generator"] = "mt19937_64";
      for (std::size_t k = 0; k < ch.num_inputs(); ++k) {
        const OutcomeHistogram hist = sample_outcomes(ch, k, opt.samples, opt.seed + k);
        for (std::size_t j = 0; j < hist.counts.size(); ++j)
          report.results.push_back(
              {"freq(" + ch.output_labels[j] + "|" + ch.input_labels[k] + ")",
               static_cast<double>(hist.counts[j]) / static_cast<double>(hist.samples),
               "freq"});
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    if (!out) {
      std::cerr << "validation error: cannot open output file: " << opt.out_path
                << "\n";
      return kExitValidation;
    }
    out << dmc_to_json(ch).dump(2) << "\n";
  }

  if (!json_mode) print_channel(os, ch);
  print_report(os, report, json_mode);
  return kExitOk;
}

int cmd_curve(const CurveOptions& opt, std::ostream& os) {
  std::vector<double> grid;
  if (opt.points < 1) {
    std::cerr << "validation error: need at least one grid point\n";
    return kExitValidation;
  }
  if (opt.points == 1) {
    grid.push_back(opt.from);
  } else {
    if (!(opt.to > opt.from)) {
      std::cerr << "validation error: need --to > --from\n";
      return kExitValidation;
    }
    for (std::size_t i = 0; i < opt.points; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(opt.points - 1);
      grid.push_back(opt.log_spacing
                         ? opt.from * std::pow(opt.to / opt.from, t)
                         : opt.from + t * (opt.to - opt.from));
    }
  }

  std::ostringstream csv;
  try {
    if (opt.kind == "fig7") {
      write_fig7_csv(csv, fig7_curve(grid));
    } else if (opt.kind == "fig8") {
      write_fig8_csv(csv, fig8_curve(grid));
    } else {
      std::cerr << "validation error: unknown curve kind: " << opt.kind << "\n";
      return kExitValidation;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::ofstream out(opt.out_path);
  if (!out) {
    std::cerr << "validation error: cannot open output file: " << opt.out_path << "\n";
    return kExitValidation;
  }
  out << csv.str();
  os << "wrote " << grid.size() << " points to " << opt.out_path << "\n";
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Shannon and von Neumann channel capacities for quantum-state "
               "signaling and photon-counting channels"};
  app.require_subcommand(1);

  bool json_mode = false;
  std::string base_name = "bits";
  auto add_common = [&](CLI::App* sub, bool with_base = true) {
    sub->add_flag("--json", json_mode, "emit a JSON run report");
    if (with_base)
      sub->add_option("--base", base_name, "information unit")
          ->check(CLI::IsMember({"bits", "nats"}));
  };

  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "recompute the reference capacities and compare");
  add_common(reproduce, false);

  std::string dmc_path;
  CLI::App* dmc_cmd = app.add_subcommand("dmc", "capacity of a channel file");
  dmc_cmd->add_option("file", dmc_path, "channel JSON")->required();
  add_common(dmc_cmd);

  std::string holevo_path;
  CLI::App* holevo_cmd =
      app.add_subcommand("holevo", "Holevo capacity of an ensemble file");
  holevo_cmd->add_option("file", holevo_path, "ensemble JSON")->required();
  add_common(holevo_cmd);

  ReceiverOptions receiver_opt;
  CLI::App* receiver_cmd =
      app.add_subcommand("receiver", "build a receiver channel and its capacity");
  receiver_cmd
      ->add_option("kind", receiver_opt.kind,
                   "filter | helstrom | erasure | trine-parallel | "
                   "trine-orthogonal | pair-srm")
      ->required();
  receiver_cmd->add_option("--s0", receiver_opt.s0_deg, "first signal angle, degrees");
  receiver_cmd->add_option("--s1", receiver_opt.s1_deg, "second signal angle, degrees");
  receiver_cmd->add_option("--angle", receiver_opt.angle_deg,
                           "filter orientation, degrees");
  receiver_cmd->add_option("--samples", receiver_opt.samples,
                           "Monte Carlo samples per input");
  receiver_cmd->add_option("--seed", receiver_opt.seed, "sampling seed");
  receiver_cmd->add_option("--out", receiver_opt.out_path,
                           "write the derived channel as Dmc JSON");
  add_common(receiver_cmd);

  CurveOptions curve_opt;
  CLI::App* curve_cmd = app.add_subcommand("curve", "tabulate an efficiency curve");
  curve_cmd->add_option("kind", curve_opt.kind, "fig7 | fig8")->required();
  curve_cmd->add_option("--from", curve_opt.from, "grid start")->required();
  curve_cmd->add_option("--to", curve_opt.to, "grid end")->required();
  curve_cmd->add_option("--points", curve_opt.points, "grid size")->required();
  curve_cmd->add_flag("--log", curve_opt.log_spacing, "logarithmic spacing");
  curve_cmd->add_option("--out", curve_opt.out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const LogBase base = base_name == "nats" ? LogBase::Nats : LogBase::Bits;
  if (reproduce->parsed()) return cmd_reproduce(json_mode, std::cout);
  if (dmc_cmd->parsed()) return cmd_dmc_capacity(dmc_path, base, json_mode, std::cout);
  if (holevo_cmd->parsed()) return cmd_holevo(holevo_path, base, json_mode, std::cout);
  if (receiver_cmd->parsed())
    return cmd_receiver(receiver_opt, base, json_mode, std::cout);
  if (curve_cmd->parsed()) return cmd_curve(curve_opt, std::cout);
  return kExitOk;
}

}  // namespace qcap::cli
