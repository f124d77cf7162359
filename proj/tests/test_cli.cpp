#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcap/cli.hpp"
#include "qcap/json_io.hpp"

using namespace qcap;
using namespace qcap::cli;
using nlohmann::json;
using doctest::Approx;

namespace {

namespace fs = std::filesystem;

fs::path write_temp(const std::string& name, const std::string& contents) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << contents;
  return path;
}

// Minimal structural validator for the draft-07 subset used by the shipped
// schema: type / required / properties / items.
bool matches_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool validate_schema(const json& schema, const json& value) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(value, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || matches_type(value, alt.get<std::string>());
    }
    if (!ok) return false;
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"])
      if (!value.contains(key.get<std::string>())) return false;
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key) && !validate_schema(sub, value[key])) return false;
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& item : value)
      if (!validate_schema(schema["items"], item)) return false;
  }
  return true;
}

const Comparison* find_row(const std::vector<Comparison>& rows,
                           const std::string& name) {
  for (const auto& row : rows)
    if (row.name == name) return &row;
  return nullptr;
}

struct CerrCapture {
  std::ostringstream captured;
  std::streambuf* saved;
  CerrCapture() : saved(std::cerr.rdbuf(captured.rdbuf())) {}
  ~CerrCapture() { std::cerr.rdbuf(saved); }
};

}  // namespace

TEST_CASE("run reports round-trip losslessly through JSON") {
  RunReport report;
  report.scenario = "receiver_helstrom";
  report.inputs = {{"kind", "helstrom"}, {"s0_deg", 0.0}, {"s1_deg", 45.0}};
  report.results = {{"capacity", 0.3990828, "bit"}, {"error_probability", 0.1464466, "prob"}};
  report.seed = 42;

  const RunReport parsed = RunReport::from_json(report.to_json());
  CHECK(parsed == report);

  // Optional fields absent.
  RunReport bare;
  bare.scenario = "dmc_capacity";
  bare.results = {{"capacity", 1.0, "bit"}};
  CHECK(RunReport::from_json(bare.to_json()) == bare);

  // Comparisons survive the trip too.
  RunReport with_comparisons;
  with_comparisons.scenario = "reproduce";
  with_comparisons.comparisons = {{"fig1_z_channel", 0.3219, 0.32, 0.005, "bit"}};
  CHECK(RunReport::from_json(with_comparisons.to_json()) == with_comparisons);
}

TEST_CASE("every reference scenario passes at its stated tolerance") {
  const std::vector<Comparison> rows = reproduce_comparisons();
  CHECK(rows.size() >= 20);
  for (const auto& row : rows) {
    CAPTURE(row.name);
    CHECK(row.pass());
  }

  const Comparison* z = find_row(rows, "fig1_z_channel");
  REQUIRE(z != nullptr);
  CHECK(z->paper == 0.32);
  CHECK(z->computed == Approx(0.3219).epsilon(1e-3));

  const Comparison* pair_cn = find_row(rows, "fig5_pair_CN");
  REQUIRE(pair_cn != nullptr);
  CHECK(pair_cn->paper == 0.75);
  CHECK(pair_cn->computed == Approx(0.75).epsilon(1e-6));
}

TEST_CASE("reproduce prints one row per scenario and exits zero") {
  std::ostringstream out;
  CHECK(cmd_reproduce(false, out) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("fig1_z_channel") != std::string::npos);
  CHECK(text.find("fig5_pair_CN") != std::string::npos);
  CHECK(text.find("pass") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("a failing comparison maps to the tolerance exit code") {
  std::vector<Comparison> rows = {{"good_row", 0.32, 0.32, 0.005, "bit"},
                                  {"bad_row", 0.50, 0.32, 0.005, "bit"}};
  std::ostringstream out;
  CHECK(render_reproduce(rows, false, out) == kExitTolerance);
  CHECK(out.str().find("FAIL") != std::string::npos);
  CHECK(out.str().find("failures: bad_row") != std::string::npos);

  rows.pop_back();
  std::ostringstream ok;
  CHECK(render_reproduce(rows, false, ok) == kExitOk);
}

TEST_CASE("reproduce --json validates against the shipped schema") {
  std::ostringstream out;
  CHECK(cmd_reproduce(true, out) == kExitOk);
  const json report = json::parse(out.str());

  std::ifstream schema_file(std::string(QCAP_DOCS_DIR) + "/reproduce.schema.json");
  REQUIRE(schema_file.good());
  const json schema = json::parse(schema_file);
  CHECK(validate_schema(schema, report));

  // Deterministic: a second run is byte-identical.
  std::ostringstream again;
  cmd_reproduce(true, again);
  CHECK(out.str() == again.str());
}

TEST_CASE("dmc subcommand computes capacity from a channel file") {
  const json z = {{"inputs", {"0", "1"}},
                  {"outputs", {"0", "1"}},
                  {"P", {{1.0, 0.0}, {0.5, 0.5}}}};
  const fs::path path = write_temp("qcap_test_z.json", z.dump());

  std::ostringstream out;
  CHECK(cmd_dmc_capacity(path.string(), LogBase::Bits, true, out) == kExitOk);
  const json report = json::parse(out.str());
  CHECK(report["results"][0]["name"] == "capacity");
  CHECK(report["results"][0]["value"].get<double>() == Approx(0.3219).epsilon(1e-3));
  CHECK(report["results"][1]["value"].get<double>() == Approx(0.6).epsilon(1e-4));
  CHECK(report["results"][2]["value"].get<double>() == Approx(0.4).epsilon(1e-4));

  const json ident = {{"inputs", {"0", "1"}},
                      {"outputs", {"0", "1"}},
                      {"P", {{1.0, 0.0}, {0.0, 1.0}}}};
  const fs::path ident_path = write_temp("qcap_test_ident.json", ident.dump());
  std::ostringstream out2;
  CHECK(cmd_dmc_capacity(ident_path.string(), LogBase::Bits, true, out2) == kExitOk);
  CHECK(json::parse(out2.str())["results"][0]["value"].get<double>() ==
        Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dmc subcommand distinguishes parse from validation failures") {
  CerrCapture capture;

  const fs::path garbage = write_temp("qcap_test_garbage.json", "not json at all {");
  std::ostringstream out;
  CHECK(cmd_dmc_capacity(garbage.string(), LogBase::Bits, false, out) == kExitParse);

  const fs::path missing = fs::temp_directory_path() / "qcap_no_such_file.json";
  CHECK(cmd_dmc_capacity(missing.string(), LogBase::Bits, false, out) == kExitParse);

  const json wrong_shape = {{"inputs", {"0"}}, {"P", {{1.0}}}};
  const fs::path shape_path = write_temp("qcap_test_shape.json", wrong_shape.dump());
  CHECK(cmd_dmc_capacity(shape_path.string(), LogBase::Bits, false, out) == kExitParse);

  const json short_row = {{"inputs", {"0", "1"}},
                          {"outputs", {"0", "1"}},
                          {"P", {{1.0, 0.0}, {0.45, 0.45}}}};
  const fs::path row_path = write_temp("qcap_test_row.json", short_row.dump());
  CHECK(cmd_dmc_capacity(row_path.string(), LogBase::Bits, false, out) ==
        kExitValidation);
  CHECK(capture.captured.str().find("row 1") != std::string::npos);
}

TEST_CASE("holevo subcommand on the 45-degree pure pair") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const json ensemble = {
      {"priors", {0.5, 0.5}},
      {"kets", {{{1.0, 0.0}, {0.0, 0.0}}, {{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}}}}};
  const fs::path path = write_temp("qcap_test_ensemble.json", ensemble.dump());

  std::ostringstream out;
  CHECK(cmd_holevo(path.string(), LogBase::Bits, true, out) == kExitOk);
  const json report = json::parse(out.str());
  CHECK(report["results"][0]["name"] == "capacity");
  CHECK(std::abs(report["results"][0]["value"].get<double>() - 0.60) <= 0.005);

  CerrCapture capture;
  const json bad = {{"priors", {0.5, 0.5}}};
  const fs::path bad_path = write_temp("qcap_test_bad_ensemble.json", bad.dump());
  CHECK(cmd_holevo(bad_path.string(), LogBase::Bits, false, out) == kExitParse);

  const json unnormalized = {{"priors", {0.9, 0.2}},
                             {"kets", {{{1.0, 0.0}, {0.0, 0.0}},
                                       {{0.0, 0.0}, {1.0, 0.0}}}}};
  const fs::path un_path = write_temp("qcap_test_unnorm.json", unnormalized.dump());
  CHECK(cmd_holevo(un_path.string(), LogBase::Bits, false, out) == kExitValidation);

  // Well-formed JSON holding a state that fails normalization.
  const json bad_ket = {{"priors", {0.5, 0.5}},
                        {"kets", {{{1.0, 0.0}, {1.0, 0.0}},
                                  {{0.0, 0.0}, {1.0, 0.0}}}}};
  const fs::path bad_ket_path = write_temp("qcap_test_badket.json", bad_ket.dump());
  CHECK(cmd_holevo(bad_ket_path.string(), LogBase::Bits, false, out) ==
        kExitValidation);
}

TEST_CASE("receiver subcommand builds the named constructions") {
  std::ostringstream out;
  CHECK(cmd_receiver({.kind = "trine-orthogonal"}, LogBase::Bits, true, out) ==
        kExitOk);
  const json report = json::parse(out.str());
  bool saw_capacity = false;
  for (const auto& row : report["results"]) {
    if (row["name"] == "capacity") {
      saw_capacity = true;
      CHECK(std::abs(row["value"].get<double>() - 0.58) <= 0.005);
    }
  }
  CHECK(saw_capacity);

  std::ostringstream helstrom_out;
  CHECK(cmd_receiver({.kind = "helstrom", .samples = 100000, .seed = 9},
                     LogBase::Bits, true, helstrom_out) == kExitOk);
  const json helstrom = json::parse(helstrom_out.str());
  CHECK(helstrom["seed"].get<std::uint64_t>() == 9);
  // Sampled frequencies appear as result rows and track the channel.
  bool saw_freq = false;
  for (const auto& row : helstrom["results"]) {
    const std::string name = row["name"].get<std::string>();
    if (name.rfind("freq(", 0) == 0) saw_freq = true;
  }
  CHECK(saw_freq);

  CerrCapture capture;
  std::ostringstream err_out;
  CHECK(cmd_receiver({.kind = "warp-drive"}, LogBase::Bits, false, err_out) ==
        kExitValidation);
}

TEST_CASE("curve subcommand writes the CSV schemas") {
  const fs::path out_path = fs::temp_directory_path() / "qcap_test_fig8.csv";
  std::ostringstream out;
  CurveOptions opt;
  opt.kind = "fig8";
  opt.from = 0.01;
  opt.to = 5.0;
  opt.points = 20;
  opt.log_spacing = true;
  opt.out_path = out_path.string();
  CHECK(cmd_curve(opt, out) == kExitOk);

  std::ifstream csv(out_path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "m,p,q,capacity_nats,nats_per_photon");
  std::string first_row;
  std::getline(csv, first_row);
  const double cph = std::stod(first_row.substr(first_row.rfind(',') + 1));
  CHECK(std::abs(cph - 1.0) <= 0.01);

  CerrCapture capture;
  CurveOptions bad = opt;
  bad.kind = "fig9";
  CHECK(cmd_curve(bad, out) == kExitValidation);
  CurveOptions domain = opt;
  domain.kind = "fig7";
  domain.from = 0.5;  // below the background intensity
  CHECK(cmd_curve(domain, out) == kExitValidation);
}

TEST_CASE("quantum objects round-trip through their JSON forms") {
  SignalSet trine = trine_states();
  const SignalSet trine2 = signal_set_from_json(signal_set_to_json(trine));
  REQUIRE(trine2.size() == trine.size());
  CHECK(trine2.labels == trine.labels);
  for (std::size_t k = 0; k < trine.size(); ++k)
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(trine2.states[k][i] == trine.states[k][i]);

  const Povm povm = trine_povm_orthogonal();
  const Povm povm2 = povm_from_json(povm_to_json(povm));
  REQUIRE(povm2.elements.size() == povm.elements.size());
  CHECK(povm2.outcome_labels == povm.outcome_labels);
  for (std::size_t e = 0; e < povm.elements.size(); ++e)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(povm2.elements[e](i, j) == povm.elements[e](i, j));
  CHECK_NOTHROW(povm2.validate());

  SignalEnsemble ensemble;
  ensemble.priors = {0.25, 0.75};
  ensemble.states = {density_from_ket(ket_from_angle(0.2)),
                     density_from_ket(ket_from_angle(1.1))};
  const SignalEnsemble ensemble2 = ensemble_from_json(ensemble_to_json(ensemble));
  CHECK(ensemble2.priors == ensemble.priors);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(ensemble2.states[k](i, j) == ensemble.states[k](i, j));
}

TEST_CASE("receiver --out emits a channel file the dmc command accepts") {
  const fs::path path = fs::temp_directory_path() / "qcap_test_channel.json";
  std::ostringstream out;
  ReceiverOptions opt;
  opt.kind = "trine-orthogonal";
  opt.out_path = path.string();
  CHECK(cmd_receiver(opt, LogBase::Bits, false, out) == kExitOk);

  std::ostringstream dmc_out;
  CHECK(cmd_dmc_capacity(path.string(), LogBase::Bits, true, dmc_out) == kExitOk);
  const json report = json::parse(dmc_out.str());
  CHECK(std::abs(report["results"][0]["value"].get<double>() - 0.585) <= 0.005);
}

TEST_CASE("argument parsing dispatches subcommands") {
  const fs::path out_path = fs::temp_directory_path() / "qcap_test_fig7.csv";
  const std::string out_str = out_path.string();
  {
    const char* argv[] = {"qcap",       "curve",  "fig7",    "--from", "2",
                          "--to",       "100",    "--points", "5",     "--log",
                          "--out",      out_str.c_str()};
    CHECK(run(12, argv) == kExitOk);
    std::ifstream csv(out_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,capacity_nats,q_on,cost_per_bit");
  }
  {
    const char* argv[] = {"qcap", "definitely-not-a-command"};
    CHECK(run(2, argv) != kExitOk);
  }
}
