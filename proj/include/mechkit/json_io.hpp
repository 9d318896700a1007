#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mechkit/amd_lp.hpp"
#include "mechkit/fixtures.hpp"
#include "mechkit/replica_surrogate.hpp"
#include "mechkit/transform.hpp"

namespace mechkit::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceSchema = "mechkit/instance/v1";
inline constexpr const char* kMechanismSchema = "mechkit/mechanism/v1";
inline constexpr const char* kInterimSchema = "mechkit/interim/v1";

// Tolerance for converting JSON floating-point literals to rationals.
inline constexpr double kFloatTolerance = 1e-9;

// ---- reading -------------------------------------------------------------

inline Scalar scalar_at(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  if (j.is_number_unsigned()) return Scalar::parse(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number_float()) return Scalar::from_double(j.get<double>(), kFloatTolerance);
  throw InputError(path + ": expected a number or a rational string");
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + "." + key + ": missing field");
  return *it;
}

inline const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  return j;
}

inline std::vector<std::string> strings_at(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  std::size_t k = 0;
  for (const auto& e : array_at(j, path)) {
    if (!e.is_string()) throw InputError(path + "[" + std::to_string(k) + "]: expected a string");
    out.push_back(e.get<std::string>());
    ++k;
  }
  return out;
}

inline Vec vec_at(const Json& j, const std::string& path) {
  Vec out;
  std::size_t k = 0;
  for (const auto& e : array_at(j, path)) {
    out.push_back(scalar_at(e, path + "[" + std::to_string(k++) + "]"));
  }
  return out;
}

inline Matrix matrix_at(const Json& j, const std::string& path) {
  Matrix out;
  std::size_t k = 0;
  for (const auto& e : array_at(j, path)) out.push_back(vec_at(e, path + "[" + std::to_string(k++) + "]"));
  return out;
}

inline void check_schema(const Json& j, const char* expected, const std::string& path) {
  auto it = j.find("schema");
  if (it == j.end()) return;  // optional
  if (!it->is_string() || it->get<std::string>() != expected) {
    throw InputError(path + ".schema: expected \"" + std::string(expected) + "\"");
  }
}

inline Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what + ": malformed JSON: " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline Instance instance_from_json(const Json& j) {
  const std::string at = "instance";
  if (!j.is_object()) throw InputError(at + ": expected an object");
  check_schema(j, kInstanceSchema, at);
  Instance inst;
  inst.agents = strings_at(field(j, "agents", at), at + ".agents");
  const Json& ts = array_at(field(j, "typeSpaces", at), at + ".typeSpaces");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    inst.type_spaces.push_back(strings_at(ts[i], at + ".typeSpaces[" + std::to_string(i) + "]"));
  }
  inst.distributions = matrix_at(field(j, "distributions", at), at + ".distributions");
  inst.outcomes = strings_at(field(j, "outcomes", at), at + ".outcomes");
  const Json& vals = array_at(field(j, "valuations", at), at + ".valuations");
  for (std::size_t i = 0; i < vals.size(); ++i) {
    inst.valuations.push_back(matrix_at(vals[i], at + ".valuations[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("outcomeCoordinates"); it != j.end() && !it->is_null()) {
    std::vector<std::vector<std::size_t>> coords;
    std::size_t o = 0;
    for (const auto& tuple : array_at(*it, at + ".outcomeCoordinates")) {
      std::vector<std::size_t> t;
      for (const auto& c : array_at(tuple, at + ".outcomeCoordinates[" + std::to_string(o) + "]")) {
        if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0)) {
          throw InputError(at + ".outcomeCoordinates[" + std::to_string(o) +
                           "]: expected nonnegative integers");
        }
        t.push_back(c.get<std::size_t>());
      }
      coords.push_back(std::move(t));
      ++o;
    }
    inst.outcome_coordinates = std::move(coords);
  }
  validate(inst);
  return inst;
}

inline Mechanism mechanism_from_json(const Json& j, const Instance& inst) {
  const std::string at = "mechanism";
  if (!j.is_object()) throw InputError(at + ": expected an object");
  check_schema(j, kMechanismSchema, at);
  if (auto it = j.find("profileOrder"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != "row-major") {
      throw InputError(at + ".profileOrder: only \"row-major\" is supported");
    }
  }
  Mechanism mech;
  mech.allocation = matrix_at(field(j, "allocation", at), at + ".allocation");
  mech.payment = matrix_at(field(j, "payments", at), at + ".payments");
  validate(inst, mech);
  return mech;
}

inline std::vector<InducedMechanism> interim_from_json(const Json& j, const Instance& inst) {
  const std::string at = "interim";
  check_schema(j, kInterimSchema, at);
  std::vector<InducedMechanism> out;
  const Json& list = array_at(field(j, "induced", at), at + ".induced");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string p = at + ".induced[" + std::to_string(k) + "]";
    const Json& agent = field(list[k], "agent", p);
    if (!agent.is_string()) throw InputError(p + ".agent: expected an agent id");
    InducedMechanism m;
    m.agent = agent_index(inst, agent.get<std::string>());
    m.allocation = matrix_at(field(list[k], "allocation", p), p + ".allocation");
    m.payment = vec_at(field(list[k], "payments", p), p + ".payments");
    validate(inst, m);
    out.push_back(std::move(m));
  }
  return out;
}

// ---- writing -------------------------------------------------------------

inline Json to_json(const Scalar& s) { return s.str(); }

inline Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(to_json(row));
  return a;
}

inline Json to_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Json to_json(const Instance& inst) {
  Json j;
  j["schema"] = kInstanceSchema;
  j["agents"] = inst.agents;
  j["typeSpaces"] = inst.type_spaces;
  j["distributions"] = Json::array();
  for (const auto& d : inst.distributions) j["distributions"].push_back(to_json(d));
  j["outcomes"] = inst.outcomes;
  j["valuations"] = Json::array();
  for (const auto& v : inst.valuations) j["valuations"].push_back(to_json(v));
  if (inst.outcome_coordinates) j["outcomeCoordinates"] = *inst.outcome_coordinates;
  return j;
}

inline Json to_json(const Mechanism& mech) {
  Json j;
  j["schema"] = kMechanismSchema;
  j["profileOrder"] = "row-major";
  j["allocation"] = to_json(mech.allocation);
  j["payments"] = to_json(mech.payment);
  return j;
}

inline Json to_json(const Instance& inst, const std::vector<InducedMechanism>& induced) {
  Json j;
  j["schema"] = kInterimSchema;
  j["induced"] = Json::array();
  for (const auto& m : induced) {
    Json e;
    e["agent"] = inst.agents[m.agent];
    e["allocation"] = to_json(m.allocation);
    e["payments"] = to_json(m.payment);
    j["induced"].push_back(std::move(e));
  }
  return j;
}

inline Json to_json(const AnalysisReport& r) {
  Json j;
  j["epsBIC"] = to_json(r.eps_bic);
  j["epsEEIC"] = to_json(r.eps_eeic);
  j["epsEEICPerAgent"] = to_json(r.eps_eeic_per_agent);
  j["epsEIIC"] = to_json(r.eps_eiic);
  j["epsEIICPerAgent"] = to_json(r.eps_eiic_per_agent);
  j["welfare"] = to_json(r.welfare);
  j["revenue"] = to_json(r.revenue);
  j["interimIR"] = r.interim_ir;
  j["expostIR"] = r.expost_ir ? Json(*r.expost_ir) : Json(nullptr);
  j["perAgentMenuSize"] = to_json(r.menu_sizes);
  return j;
}

inline Json to_json(const TransformStep& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["agent"] = s.agent;
  if (s.kind == StepKind::kPaymentReduce) {
    j["source"] = s.source;
    j["ancestors"] = to_json(s.ancestor_set);
    j["delta"] = to_json(s.delta);
    j["epsBar"] = to_json(s.eps_bar);
    j["epsT"] = s.eps_t ? to_json(*s.eps_t) : Json(nullptr);
  } else {
    j["cycle"] = to_json(s.cycle);
  }
  j["weightBefore"] = to_json(s.weight_before);
  j["weightAfter"] = to_json(s.weight_after);
  j["positiveEdgesBefore"] = s.positive_edges_before;
  j["positiveEdgesAfter"] = s.positive_edges_after;
  return j;
}

inline Json to_json(const TransformReport& r) {
  Json j;
  j["flavor"] = r.flavor == Flavor::kBic ? "bic" : "eeic";
  j["before"] = to_json(r.before);
  j["after"] = to_json(r.after);
  j["epsilon"] = to_json(r.epsilon);
  j["revenueLoss"] = to_json(r.revenue_loss);
  j["revenueLossBound"] = to_json(r.revenue_loss_bound);
  j["allocationSignatureBefore"] = to_json(r.signature_before);
  j["allocationSignatureAfter"] = to_json(r.signature_after);
  Json c;
  c["bic"] = r.certificates.bic;
  c["welfarePreserved"] = r.certificates.welfare_preserved;
  c["irPreserved"] = r.certificates.ir_preserved;
  c["allocationInvariant"] = r.certificates.allocation_invariant;
  c["revenueLossWithinBound"] = r.certificates.revenue_loss_within_bound;
  j["certificates"] = c;
  j["steps"] = Json::array();
  for (const auto& s : r.steps) j["steps"].push_back(to_json(s));
  return j;
}

inline Json to_json(const Estimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["stderr"] = e.stderr_;
  return j;
}

inline Json to_json(const RSReport& r) {
  Json j;
  j["method"] = r.method;
  j["eta"] = to_json(r.config.eta);
  j["mode"] = r.config.mode == RSMode::kFullTypeSet ? "fullTypeSet" : "sampled";
  j["welfareBefore"] = to_json(r.welfare_before);
  j["revenueBefore"] = to_json(r.revenue_before);
  if (r.config.mode == RSMode::kFullTypeSet) {
    j["welfare"] = to_json(*r.welfare);
    j["revenue"] = to_json(*r.revenue);
    j["epsBIC"] = to_json(*r.eps_bic);
    j["agents"] = Json::array();
    for (const auto& a : r.agents) {
      Json aj;
      aj["agent"] = a.agent;
      aj["types"] = Json::array();
      for (const auto& t : a.types) {
        Json tj;
        tj["surrogate"] = t.surrogate ? Json(*t.surrogate) : Json(nullptr);
        tj["value"] = to_json(t.value);
        tj["payment"] = to_json(t.payment);
        tj["vcgPrice"] = to_json(t.vcg_price);
        aj["types"].push_back(std::move(tj));
      }
      j["agents"].push_back(std::move(aj));
    }
  } else {
    j["r"] = r.config.r;
    j["seed"] = r.config.seed;
    j["trials"] = r.trials;
    j["welfare"] = to_json(*r.welfare_estimate);
    j["revenue"] = to_json(*r.revenue_estimate);
  }
  return j;
}

inline Json to_json(const AMDReport& r) {
  Json j;
  j["lambda"] = to_json(r.lambda);
  j["ic"] = to_string(r.ic);
  j["status"] = to_string(r.status);
  j["coarseTypeSpaces"] = r.coarse.type_spaces;
  j["coarseOptimum"] = to_json(r.coarse_optimum);
  j["lifted"] = to_json(r.lifted_analysis);
  j["muLifted"] = to_json(r.mu_lifted);
  j["muFinal"] = to_json(r.mu_final);
  j["slack"] = to_json(r.slack);
  j["transform"] = to_json(r.transform);
  return j;
}

inline Json to_json(const ExpectedQuantity& q) {
  Json j;
  j["name"] = q.name;
  j["relation"] = q.relation;
  j["value"] = to_json(q.value);
  j["basis"] = q.basis;
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mechkit::io
