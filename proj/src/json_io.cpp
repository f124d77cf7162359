#include "qcap/json_io.hpp"

#include <stdexcept>

namespace qcap {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("json: complex entry must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json cmat_to_json(const CMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat cmat_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("json: matrix must be a non-empty array of rows");
  const std::size_t dim = j.size();
  CMat m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim)
      throw ParseError("json: matrix must be square");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

std::vector<std::string> labels_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("json: ") + what +
                                                 " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string())
      throw ParseError(std::string("json: ") + what +
                                  " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

nlohmann::json dmc_to_json(const Dmc& ch) {
  return json{{"inputs", ch.input_labels}, {"outputs", ch.output_labels}, {"P", ch.p}};
}

Dmc dmc_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("inputs") || !j.contains("outputs") ||
      !j.contains("P"))
    throw ParseError("json: Dmc needs \"inputs\", \"outputs\" and \"P\"");
  Dmc ch;
  ch.input_labels = labels_from_json(j["inputs"], "inputs");
  ch.output_labels = labels_from_json(j["outputs"], "outputs");
  const json& p = j["P"];
  if (!p.is_array()) throw ParseError("json: \"P\" must be a matrix");
  for (const auto& row : p) {
    if (!row.is_array()) throw ParseError("json: \"P\" must be a matrix");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw ParseError("json: \"P\" must be numeric");
      r.push_back(x.get<double>());
    }
    ch.p.push_back(std::move(r));
  }
  return ch;  // numeric validation is the caller's step
}

nlohmann::json signal_set_to_json(const SignalSet& set) {
  json states = json::array();
  for (const auto& s : set.states) {
    json amps = json::array();
    for (const auto& a : s.amplitudes()) amps.push_back(complex_to_json(a));
    states.push_back(std::move(amps));
  }
  return json{{"labels", set.labels}, {"states", std::move(states)}};
}

SignalSet signal_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("states"))
    throw ParseError("json: SignalSet needs \"states\"");
  SignalSet set;
  for (const auto& amps : j["states"]) {
    if (!amps.is_array()) throw ParseError("json: state must be an array");
    std::vector<Complex> v;
    for (const auto& a : amps) v.push_back(complex_from_json(a));
    set.states.push_back(Ket(std::move(v)));
  }
  if (j.contains("labels")) set.labels = labels_from_json(j["labels"], "labels");
  return set;
}

nlohmann::json povm_to_json(const Povm& povm) {
  json elements = json::array();
  for (const auto& e : povm.elements) elements.push_back(cmat_to_json(e));
  return json{{"labels", povm.outcome_labels}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("elements"))
    throw ParseError("json: Povm needs \"elements\"");
  Povm povm;
  for (const auto& e : j["elements"]) povm.elements.push_back(cmat_from_json(e));
  if (j.contains("labels"))
    povm.outcome_labels = labels_from_json(j["labels"], "labels");
  else
    for (std::size_t i = 0; i < povm.elements.size(); ++i)
      povm.outcome_labels.push_back(std::to_string(i));
  return povm;
}

nlohmann::json ensemble_to_json(const SignalEnsemble& ensemble) {
  json densities = json::array();
  for (const auto& rho : ensemble.states) densities.push_back(cmat_to_json(rho.mat()));
  return json{{"priors", ensemble.priors}, {"densities", std::move(densities)}};
}

SignalEnsemble ensemble_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("priors"))
    throw ParseError("json: ensemble needs \"priors\"");
  const bool has_kets = j.contains("kets");
  const bool has_densities = j.contains("densities");
  if (has_kets == has_densities)
    throw ParseError("json: ensemble needs exactly one of \"kets\" or \"densities\"");

  SignalEnsemble ensemble;
  for (const auto& q : j["priors"]) {
    if (!q.is_number()) throw ParseError("json: priors must be numeric");
    ensemble.priors.push_back(q.get<double>());
  }
  if (has_kets) {
    for (const auto& amps : j["kets"]) {
      if (!amps.is_array()) throw ParseError("json: ket must be an array");
      std::vector<Complex> v;
      for (const auto& a : amps) v.push_back(complex_from_json(a));
      ensemble.states.push_back(density_from_ket(Ket(std::move(v))));
    }
  } else {
    for (const auto& m : j["densities"])
      ensemble.states.push_back(DensityMatrix(cmat_from_json(m)));
  }
  if (ensemble.states.size() != ensemble.priors.size())
    throw ParseError("json: ensemble priors/states count mismatch");
  return ensemble;
}

}  // namespace qcap
