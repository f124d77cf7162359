// JSON serialization for CLI round-tripping. Complex entries travel as
// [re, im] pairs.
#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qcap/dmc.hpp"
#include "qcap/qstate.hpp"
#include "qcap/receivers.hpp"

namespace qcap {

// A document that does not match the expected schema shape. Distinct from
// std::invalid_argument so callers can separate malformed files from
// numerically invalid ones.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Dmc: {"inputs": [...], "outputs": [...], "P": [[...], ...]}
nlohmann::json dmc_to_json(const Dmc& ch);
Dmc dmc_from_json(const nlohmann::json& j);

// SignalSet: {"labels": [...], "states": [[[re, im], ...], ...]}
nlohmann::json signal_set_to_json(const SignalSet& set);
SignalSet signal_set_from_json(const nlohmann::json& j);

// Povm: {"labels": [...], "elements": [[[[re, im], ...], ...], ...]}
nlohmann::json povm_to_json(const Povm& povm);
Povm povm_from_json(const nlohmann::json& j);

// Ensemble: {"priors": [...], "kets": [...]} for pure states, or
// {"priors": [...], "densities": [...]} for general states.
nlohmann::json ensemble_to_json(const SignalEnsemble& ensemble);
SignalEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace qcap
