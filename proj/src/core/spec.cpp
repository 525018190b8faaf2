#include "augkit/core/spec.hpp"

#include <cmath>

#include <json.hpp>

#include "augkit/core/metadata.hpp"
#include "augkit/errors.hpp"

namespace augkit {

namespace {

using nlohmann::ordered_json;

Value value_from_json(const ordered_json& j, const std::string& where) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::vector<double> list;
    for (const auto& e : j) {
      if (!e.is_number())
        throw ValidationError(where + ": list parameters must be numeric");
      list.push_back(e.get<double>());
    }
    return list;
  }
  throw ValidationError(where + ": unsupported parameter value type");
}

ordered_json value_to_json(const Value& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  return std::get<std::vector<double>>(v);
}

PipelineChild child_from_json(const ordered_json& j);

Pipeline pipeline_from_json_array(const ordered_json& arr) {
  Pipeline p;
  for (const auto& e : arr) p.children.push_back(child_from_json(e));
  return p;
}

PipelineChild child_from_json(const ordered_json& j) {
  if (!j.is_object())
    throw ValidationError("pipeline entries must be JSON objects");
  if (!j.contains("op") || !j.at("op").is_string())
    throw ValidationError("pipeline entry is missing its \"op\" name");
  const std::string op = j.at("op").get<std::string>();
  if (op == "compose") {
    if (!j.contains("children") || !j.at("children").is_array())
      throw ValidationError("compose entry needs a \"children\" array");
    return pipeline_from_json_array(j.at("children"));
  }
  TransformSpec spec;
  spec.name = op;
  if (j.contains("params")) {
    if (!j.at("params").is_object())
      throw ValidationError(op + ": \"params\" must be an object");
    for (const auto& [key, value] : j.at("params").items())
      spec.params[key] = value_from_json(value, op);
  }
  if (j.contains("p")) {
    if (!j.at("p").is_number())
      throw ValidationError(op + ": \"p\" must be a number");
    spec.p = j.at("p").get<double>();
    if (spec.p < 0.0 || spec.p > 1.0)
      throw ValidationError(op + ": \"p\" must be in [0, 1]");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "op" && key != "params" && key != "p")
      throw ValidationError(op + ": unknown pipeline key '" + key + "'");
  }
  return spec;
}

ordered_json child_to_json(const PipelineChild& child) {
  if (std::holds_alternative<Pipeline>(child)) {
    ordered_json j;
    j["op"] = "compose";
    j["children"] = ordered_json::array();
    for (const auto& c : std::get<Pipeline>(child).children)
      j["children"].push_back(child_to_json(c));
    return j;
  }
  const auto& spec = std::get<TransformSpec>(child);
  ordered_json j;
  j["op"] = spec.name;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : spec.params)
    params[key] = value_to_json(value);
  j["params"] = params;
  j["p"] = spec.p;
  return j;
}

ordered_json shape_to_json(const Shape& s) {
  ordered_json j;
  j["kind"] = s.kind;
  for (const auto& [key, value] : s.dims) {
    double integral;
    if (std::modf(value, &integral) == 0.0 &&
        std::abs(value) < 9.0e15) {
      j[key] = static_cast<std::int64_t>(value);
    } else {
      j[key] = value;
    }
  }
  return j;
}

ordered_json meta_entry_to_json(const TransformMetadata& m) {
  ordered_json j;
  j["name"] = m.name;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : m.params)
    params[key] = value_to_json(value);
  j["params"] = params;
  j["intensity"] = m.intensity;
  j["applied"] = m.applied;
  j["src_shape"] = shape_to_json(m.src_shape);
  j["dst_shape"] = shape_to_json(m.dst_shape);
  if (!m.children.empty()) {
    j["children"] = ordered_json::array();
    for (const auto& c : m.children) j["children"].push_back(meta_entry_to_json(c));
  }
  return j;
}

}  // namespace

Pipeline parse_pipeline_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("pipeline config is not valid JSON: ") +
                          e.what());
  }
  if (j.is_object()) {
    ordered_json arr = ordered_json::array();
    arr.push_back(j);
    return pipeline_from_json_array(arr);
  }
  if (!j.is_array())
    throw ValidationError("pipeline config must be a JSON array");
  return pipeline_from_json_array(j);
}

std::string pipeline_to_json(const Pipeline& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : p.children) arr.push_back(child_to_json(c));
  return arr.dump(2);
}

std::string metadata_to_json(const std::vector<TransformMetadata>& meta) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : meta) arr.push_back(meta_entry_to_json(m));
  return arr.dump(2);
}

std::vector<TransformMetadata>& pending_child_metadata() {
  thread_local std::vector<TransformMetadata> pending;
  return pending;
}

}  // namespace augkit
