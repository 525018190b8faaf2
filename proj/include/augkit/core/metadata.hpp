#pragma once

#include <string>
#include <utility>
#include <vector>

#include "augkit/core/value.hpp"

namespace augkit {

// Dimension descriptor of one datum. kind is "image", "audio", "text" or
// "video"; dims are named sizes in a stable order (e.g. width/height/channels
// for images).
struct Shape {
  std::string kind;
  std::vector<std::pair<std::string, double>> dims;

  bool operator==(const Shape&) const = default;
};

// Record of one transform application.
struct TransformMetadata {
  std::string name;
  Params params;          // concrete values, post random draw
  double intensity = 0.0; // in [0, 100]
  bool applied = false;
  Shape src_shape;
  Shape dst_shape;
  // Populated for nested pipelines and for video ops that run an embedded
  // audio pipeline.
  std::vector<TransformMetadata> children;
};

std::string metadata_to_json(const std::vector<TransformMetadata>& meta);

// Hand-off slot for transforms that run an embedded pipeline (such as a
// video op augmenting its audio track). The op pushes the inner records
// here after its inner compose() returns, and apply_with_probability moves
// them into the surrounding record's children. Thread local.
std::vector<TransformMetadata>& pending_child_metadata();

}  // namespace augkit
