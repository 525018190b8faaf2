#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "augkit/errors.hpp"

namespace augkit {

// One transform parameter: scalar, string, or list of numbers.
using Value =
    std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

// Parameter maps are kept sorted by name so serialized output is stable.
using Params = std::map<std::string, Value>;

enum class ParamType { Bool, Int, Float, String, FloatList };

struct ParamDef {
  std::string name;
  ParamType type = ParamType::Float;
  bool required = false;
  Value def{};
  std::optional<double> min{};
  std::optional<double> max{};
  std::vector<std::string> one_of{};
  // Accepts the string "random"; resolve() replaces it with a concrete draw.
  bool randomizable = false;
};

class ParamSchema {
 public:
  ParamSchema() = default;
  ParamSchema(std::initializer_list<ParamDef> defs) : defs_(defs) {}

  // Rejects unknown names, missing required params, type and range
  // violations; fills defaults and coerces int -> float. Returns the
  // fully-populated map.
  Params validate(const Params& in, const std::string& op_name) const;

  const std::vector<ParamDef>& defs() const { return defs_; }

 private:
  std::vector<ParamDef> defs_;
};

bool is_random_marker(const Value& v);

class Rng;

// Replaces a "random" marker with a uniform draw from [lo, hi]. Callers
// resolve params in schema order so the draw sequence is stable.
void resolve_random_float(Params& params, const std::string& name, double lo,
                          double hi, Rng& rng);

// Typed accessors over validated params. Throw ValidationError on a type
// mismatch (including a still-unresolved "random" marker).
double get_float(const Params& p, const std::string& name);
std::int64_t get_int(const Params& p, const std::string& name);
bool get_bool(const Params& p, const std::string& name);
const std::string& get_string(const Params& p, const std::string& name);
const std::vector<double>& get_list(const Params& p, const std::string& name);

// [r, g, b] or [r, g, b, a] in 0..255.
std::vector<double> get_color(const Params& p, const std::string& name);

std::string value_to_string(const Value& v);

}  // namespace augkit
