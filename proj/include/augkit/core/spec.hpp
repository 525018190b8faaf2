#pragma once

#include <string>
#include <variant>
#include <vector>

#include "augkit/core/value.hpp"

namespace augkit {

// Declarative form of one transform application.
struct TransformSpec {
  std::string name;
  Params params;
  double p = 1.0;
};

struct Pipeline;
using PipelineChild = std::variant<TransformSpec, Pipeline>;

// Ordered children; a child may itself be a nested pipeline.
struct Pipeline {
  std::vector<PipelineChild> children;
};

// Parses the JSON config format:
//   [ {"op": "rotate", "params": {"degrees": 15}, "p": 0.5},
//     {"op": "compose", "children": [ ... ]} ]
// A single object is accepted as a one-element pipeline.
Pipeline parse_pipeline_json(const std::string& json_text);

std::string pipeline_to_json(const Pipeline& p);

}  // namespace augkit
