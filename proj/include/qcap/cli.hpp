// Command-line surface: reproduce the reference results table, compute
// capacities for user-supplied channels and ensembles, build receiver
// channels, and emit curve CSVs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcap/qstate.hpp"

namespace qcap::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;

struct ResultRow {
  std::string name;
  double value = 0.0;
  std::string unit;

  bool operator==(const ResultRow&) const = default;
};

// One reference comparison of the reproduce table.
struct Comparison {
  std::string name;
  double computed = 0.0;
  double paper = 0.0;
  double tolerance = 0.0;
  std::string unit;

  double abs_delta() const;
  bool pass() const;

  bool operator==(const Comparison&) const = default;
};

// Machine-readable record of one command invocation. Serialization
// round-trips losslessly.
struct RunReport {
  std::string scenario;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<ResultRow> results;
  std::vector<Comparison> comparisons;  // reproduce only
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);

  bool operator==(const RunReport&) const = default;
};

// Every reference scenario, computed fresh.
std::vector<Comparison> reproduce_comparisons();

// Renders a comparison table (text or JSON report) and maps any failing row
// to kExitTolerance.
int render_reproduce(const std::vector<Comparison>& rows, bool json_mode,
                     std::ostream& os);

struct ReceiverOptions {
  std::string kind;          // filter | helstrom | erasure | trine-parallel |
                             // trine-orthogonal | pair-srm
  double s0_deg = 0.0;       // signal polarizations, degrees
  double s1_deg = 45.0;
  double angle_deg = 0.0;    // filter orientation for kind = filter
  std::uint64_t samples = 0; // 0 = no sampling
  std::uint64_t seed = 1;
  std::string out_path;      // optional: write the derived channel as Dmc JSON
};

struct CurveOptions {
  std::string kind;  // fig7 | fig8
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 0;
  bool log_spacing = false;
  std::string out_path;
};

int cmd_reproduce(bool json_mode, std::ostream& os);
int cmd_dmc_capacity(const std::string& path, LogBase base, bool json_mode,
                     std::ostream& os);
int cmd_holevo(const std::string& path, LogBase base, bool json_mode,
               std::ostream& os);
int cmd_receiver(const ReceiverOptions& opt, LogBase base, bool json_mode,
                 std::ostream& os);
int cmd_curve(const CurveOptions& opt, std::ostream& os);

// Full argument parsing and dispatch; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace qcap::cli
