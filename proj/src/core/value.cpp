#include "augkit/core/value.hpp"

#include <algorithm>

#include <cmath>
#include <sstream>

#include "augkit/core/rng.hpp"

namespace augkit {

namespace {

const char* type_name(ParamType t) {
  switch (t) {
    case ParamType::Bool: return "bool";
    case ParamType::Int: return "int";
    case ParamType::Float: return "float";
    case ParamType::String: return "string";
    case ParamType::FloatList: return "float list";
  }
  return "?";
}

[[noreturn]] void fail(const std::string& op, const std::string& param,
                       const std::string& why) {
  throw ValidationError(op + ": parameter '" + param + "' " + why);
}

Value coerce(const ParamDef& def, const Value& v, const std::string& op) {
  // "random" listed in one_of is a literal choice, not the draw marker.
  const bool marker_is_literal =
      std::count(def.one_of.begin(), def.one_of.end(), "random") > 0;
  if (is_random_marker(v) && !marker_is_literal) {
    if (!def.randomizable) fail(op, def.name, "does not accept \"random\"");
    return v;
  }
  switch (def.type) {
    case ParamType::Bool:
      if (std::holds_alternative<bool>(v)) return v;
      fail(op, def.name, "must be a bool");
    case ParamType::Int:
      if (std::holds_alternative<std::int64_t>(v)) return v;
      if (std::holds_alternative<double>(v)) {
        double d = std::get<double>(v);
        if (d == std::floor(d)) return static_cast<std::int64_t>(d);
      }
      fail(op, def.name, "must be an integer");
    case ParamType::Float:
      if (std::holds_alternative<double>(v)) return v;
      if (std::holds_alternative<std::int64_t>(v))
        return static_cast<double>(std::get<std::int64_t>(v));
      fail(op, def.name, "must be a number");
    case ParamType::String:
      if (std::holds_alternative<std::string>(v)) return v;
      fail(op, def.name, "must be a string");
    case ParamType::FloatList:
      if (std::holds_alternative<std::vector<double>>(v)) return v;
      fail(op, def.name, "must be a list of numbers");
  }
  fail(op, def.name, "has unsupported type");
}

void check_range(const ParamDef& def, const Value& v, const std::string& op) {
  if (is_random_marker(v)) return;
  double d;
  if (std::holds_alternative<double>(v)) {
    d = std::get<double>(v);
  } else if (std::holds_alternative<std::int64_t>(v)) {
    d = static_cast<double>(std::get<std::int64_t>(v));
  } else if (std::holds_alternative<std::string>(v)) {
    if (!def.one_of.empty()) {
      const auto& s = std::get<std::string>(v);
      for (const auto& allowed : def.one_of)
        if (s == allowed) return;
      fail(op, def.name, "must be one of the documented choices, got '" + s + "'");
    }
    return;
  } else {
    return;
  }
  if (!std::isfinite(d)) fail(op, def.name, "must be finite");
  if (def.min && d < *def.min)
    fail(op, def.name, "is below its minimum " + std::to_string(*def.min));
  if (def.max && d > *def.max)
    fail(op, def.name, "is above its maximum " + std::to_string(*def.max));
}

}  // namespace

bool is_random_marker(const Value& v) {
  return std::holds_alternative<std::string>(v) &&
         std::get<std::string>(v) == "random";
}

void resolve_random_float(Params& params, const std::string& name, double lo,
                          double hi, Rng& rng) {
  auto it = params.find(name);
  if (it != params.end() && is_random_marker(it->second))
    it->second = rng.uniform(lo, hi);
}

Params ParamSchema::validate(const Params& in, const std::string& op) const {
  for (const auto& [key, value] : in) {
    bool known = false;
    for (const auto& def : defs_)
      if (def.name == key) { known = true; break; }
    if (!known)
      throw ValidationError(op + ": unknown parameter '" + key + "'");
  }
  Params out;
  for (const auto& def : defs_) {
    auto it = in.find(def.name);
    if (it == in.end()) {
      if (def.required)
        throw ValidationError(op + ": missing required parameter '" +
                              def.name + "'");
      out[def.name] = def.def;
      continue;
    }
    Value v = coerce(def, it->second, op);
    check_range(def, v, op);
    out[def.name] = std::move(v);
  }
  return out;
}

double get_float(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ValidationError("missing parameter '" + name + "'");
  if (std::holds_alternative<double>(it->second))
    return std::get<double>(it->second);
  if (std::holds_alternative<std::int64_t>(it->second))
    return static_cast<double>(std::get<std::int64_t>(it->second));
  if (is_random_marker(it->second))
    throw ValidationError("parameter '" + name +
                          "' is an unresolved random draw");
  throw ValidationError("parameter '" + name + "' is not a number");
}

std::int64_t get_int(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ValidationError("missing parameter '" + name + "'");
  if (std::holds_alternative<std::int64_t>(it->second))
    return std::get<std::int64_t>(it->second);
  if (std::holds_alternative<double>(it->second)) {
    double d = std::get<double>(it->second);
    if (d == std::floor(d)) return static_cast<std::int64_t>(d);
  }
  if (is_random_marker(it->second))
    throw ValidationError("parameter '" + name +
                          "' is an unresolved random draw");
  throw ValidationError("parameter '" + name + "' is not an integer");
}

bool get_bool(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ValidationError("missing parameter '" + name + "'");
  if (std::holds_alternative<bool>(it->second))
    return std::get<bool>(it->second);
  throw ValidationError("parameter '" + name + "' is not a bool");
}

const std::string& get_string(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ValidationError("missing parameter '" + name + "'");
  if (std::holds_alternative<std::string>(it->second))
    return std::get<std::string>(it->second);
  throw ValidationError("parameter '" + name + "' is not a string");
}

const std::vector<double>& get_list(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ValidationError("missing parameter '" + name + "'");
  if (std::holds_alternative<std::vector<double>>(it->second))
    return std::get<std::vector<double>>(it->second);
  throw ValidationError("parameter '" + name + "' is not a list");
}

std::vector<double> get_color(const Params& p, const std::string& name) {
  const auto& list = get_list(p, name);
  if (list.size() != 3 && list.size() != 4)
    throw ValidationError("parameter '" + name +
                          "' must be [r,g,b] or [r,g,b,a]");
  for (double v : list)
    if (v < 0.0 || v > 255.0)
      throw ValidationError("parameter '" + name +
                            "' components must be in 0..255");
  return list;
}

std::string value_to_string(const Value& v) {
  std::ostringstream os;
  if (std::holds_alternative<bool>(v)) {
    os << (std::get<bool>(v) ? "true" : "false");
  } else if (std::holds_alternative<std::int64_t>(v)) {
    os << std::get<std::int64_t>(v);
  } else if (std::holds_alternative<double>(v)) {
    os << std::get<double>(v);
  } else if (std::holds_alternative<std::string>(v)) {
    os << std::get<std::string>(v);
  } else {
    os << "[";
    const auto& list = std::get<std::vector<double>>(v);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) os << ",";
      os << list[i];
    }
    os << "]";
  }
  return os.str();
}

}  // namespace augkit
