#include "gq/serialize.hpp"

#include <fstream>
#include <stdexcept>

#include "gq/errors.hpp"

namespace gq {

AttributeSchema schema_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("attributes") || !j["attributes"].is_array()) {
    throw SchemaError("schema must be an object with an \"attributes\" array");
  }
  std::vector<Attribute> attrs;
  for (const auto& a : j["attributes"]) {
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string() || !a.contains("values") ||
        !a["values"].is_array()) {
      throw SchemaError("each attribute needs a string \"name\" and a \"values\" array");
    }
    Attribute out{a["name"].get<std::string>(), {}};
    for (const auto& v : a["values"]) {
      if (!v.is_string()) throw SchemaError("attribute values must be strings");
      out.values.push_back(v.get<std::string>());
    }
    attrs.push_back(std::move(out));
  }
  return AttributeSchema(std::move(attrs));
}

Json to_json(const AttributeSchema& s) {
  Json attrs = Json::array();
  for (const auto& a : s.attributes()) attrs.push_back({{"name", a.name}, {"values", a.values}});
  return {{"attributes", attrs}};
}

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

}  // namespace

AttributeSchema load_schema(const std::string& path) { return schema_from_json(read_json(path)); }

Json to_json(const FailproneDescriptor& d) {
  Json partial = Json::object();
  for (const auto& [a, xs] : d.partial) partial[std::to_string(a)] = xs;
  return {{"belief", d.belief}, {"full", d.full}, {"partial", partial}};
}

FailproneDescriptor descriptor_from_json(const Json& j) {
  try {
    FailproneDescriptor d;
    d.belief = j.at("belief").get<int>();
    d.full = j.at("full").get<std::vector<int>>();
    std::sort(d.full.begin(), d.full.end());
    for (const auto& [key, xs] : j.at("partial").items()) {
      auto ids = xs.get<std::vector<ProcessId>>();
      std::sort(ids.begin(), ids.end());
      d.partial.emplace(std::stoi(key), std::move(ids));
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidDescriptor(std::string("malformed descriptor: ") + e.what());
  }
}

Json to_json(const ProcessSet& s) { return s.members(); }

Json to_json(const GridParams& g) {
  return {{"belief", g.belief},       {"k", g.k},
          {"f", g.f},                 {"p", g.p},
          {"alpha", g.alpha},         {"epsilon", to_string(g.epsilon)},
          {"delta", to_string(g.delta)}, {"failprone_size", g.failprone_size()}};
}

Json to_json(const ResilienceVerdict& v) {
  Json out = {{"property", to_string(v.property)},
              {"method", to_string(v.method)},
              {"holds", v.holds},
              {"configurations", v.configurations.str()}};
  out["slack"] = v.slack ? Json(*v.slack) : Json(nullptr);
  if (v.witness) {
    Json w = Json::object();
    if (!v.witness->failprone.empty()) {
      w["failprone"] = Json::array();
      for (const auto& d : v.witness->failprone) w["failprone"].push_back(to_json(d));
    }
    if (!v.witness->faults.empty()) {
      w["faults"] = Json::array();
      for (const auto& s : v.witness->faults) w["faults"].push_back(to_json(s));
    }
    if (v.witness->joint_fault) w["joint_fault"] = to_json(*v.witness->joint_fault);
    if (!v.witness->quorums.empty()) {
      w["quorums"] = Json::array();
      for (const auto& q : v.witness->quorums) w["quorums"].push_back(to_json(q));
    }
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const BoundBreakdown& b) {
  Json terms = Json::array();
  for (const auto& t : b.slack_terms) terms.push_back(to_string(t));
  return {{"n", b.n},
          {"full_union", b.full_union},
          {"partial_union", b.partial_union},
          {"residual", b.residual},
          {"total", b.total},
          {"slack_terms", terms},
          {"slack_sum", to_string(b.slack_sum())},
          {"below_n", b.below_n()}};
}

Json to_json(const AlphaSearchResult& r) {
  Json out = {{"k", r.k},
              {"belief", r.belief},
              {"default_alpha", r.default_alpha},
              {"max_alpha", r.max_alpha},
              {"cap", r.cap},
              {"method", r.mode == SearchMode::Exhaustive ? "EXHAUSTIVE" : "ADVERSARIAL"},
              {"verdict", r.mode == SearchMode::Exhaustive ? "feasible" : "no violation found"},
              {"increase_percent", to_double(r.increase_percent)},
              {"candidates_checked", r.candidates_checked}};
  out["partner"] = r.partner ? Json(*r.partner) : Json("all");
  return out;
}

Scenario scenario_from_json(const Json& j) {
  try {
    Scenario s;
    s.schema = schema_from_json(j.at("schema"));
    const auto ks = s.schema.cardinalities();
    const std::int64_t n = universe_size(ks);
    int fallback = 0;
    const Json beliefs = j.value("beliefs", Json::object());
    if (beliefs.contains("default")) fallback = beliefs["default"].get<int>();
    s.beliefs.assign(static_cast<std::size_t>(n), fallback);
    for (const auto& [key, b] : beliefs.items()) {
      if (key == "default") continue;
      const long long pid = std::stoll(key);
      if (pid < 0 || pid >= n) throw std::invalid_argument("belief for unknown process " + key);
      s.beliefs[static_cast<std::size_t>(pid)] = b.get<int>();
    }
    s.faults = j.value("faults", std::vector<ProcessId>{});
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json(path)); }

Json to_json(const ProcessVerdict& v) {
  Json out = {{"process", v.process},
              {"belief", v.belief},
              {"status", to_string(v.status)},
              {"availability_ok", v.availability_ok}};
  if (v.covering) out["covering"] = to_json(*v.covering);
  return out;
}

Json to_json(const SafetyReport& r) {
  Json out = {{"i", r.i},
              {"j", r.j},
              {"joint_fault", r.joint_fault},
              {"violation_found", r.violation_found},
              {"informational", !r.joint_fault},
              {"full_choices_examined", r.full_choices_examined}};
  if (r.qi && r.qj) {
    out["quorums"] = {to_json(*r.qi), to_json(*r.qj)};
    out["failprone"] = {to_json(*r.fi), to_json(*r.fj)};
  }
  return out;
}

}  // namespace gq
