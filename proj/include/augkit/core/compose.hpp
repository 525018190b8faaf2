#pragma once

#include <utility>

#include "augkit/core/metadata.hpp"
#include "augkit/core/registry.hpp"
#include "augkit/core/spec.hpp"

namespace augkit {

// Rng stream layout, fixed so results are schedule independent:
//   compose child i        -> rng.derive(i)
//   probability coin       -> child_rng.derive(0), first draw
//   parameter resolution   -> child_rng.derive(1)
//   transform application  -> child_rng.derive(2)
// The coin is drawn whether or not the transform ends up applied, and
// each child's streams depend only on (seed, child index), so editing one
// child never perturbs a sibling's randomness.

template <class Datum>
void validate_pipeline(const Pipeline& pipeline) {
  const auto& reg = Registry<Datum>::instance();
  for (const auto& child : pipeline.children) {
    if (std::holds_alternative<Pipeline>(child)) {
      validate_pipeline<Datum>(std::get<Pipeline>(child));
      continue;
    }
    const auto& spec = std::get<TransformSpec>(child);
    if (spec.p < 0.0 || spec.p > 1.0)
      throw ValidationError(spec.name + ": p must be in [0, 1]");
    const auto& entry = reg.at(spec.name);
    entry.schema.validate(spec.params, spec.name);
  }
}

template <class Datum>
std::pair<Datum, TransformMetadata> apply_with_probability(
    const TransformSpec& spec, const Datum& input, Rng rng) {
  const auto& entry = Registry<Datum>::instance().at(spec.name);
  if (spec.p < 0.0 || spec.p > 1.0)
    throw ValidationError(spec.name + ": p must be in [0, 1]");
  Params validated = entry.schema.validate(spec.params, spec.name);

  Rng coin_rng = rng.derive(0);
  const double coin = coin_rng.uniform();

  TransformMetadata meta;
  meta.name = spec.name;
  meta.src_shape = shape_of(input);

  if (coin >= spec.p) {
    meta.params = std::move(validated);
    meta.applied = false;
    meta.intensity = 0.0;
    meta.dst_shape = meta.src_shape;
    return {input, std::move(meta)};
  }

  Rng resolve_rng = rng.derive(1);
  Params resolved = entry.resolve ? entry.resolve(validated, resolve_rng)
                                  : std::move(validated);
  Rng apply_rng = rng.derive(2);
  pending_child_metadata().clear();
  Datum out = entry.apply(input, resolved, apply_rng);
  // Inner applications (an embedded audio pipeline, say) also pass through
  // here and clear the slot, so ops must push only after their inner
  // compose() has returned.
  meta.children.swap(pending_child_metadata());
  pending_child_metadata().clear();

  meta.applied = true;
  meta.intensity = entry.intensity ? entry.intensity(resolved) : 100.0;
  meta.params = std::move(resolved);
  meta.dst_shape = shape_of(out);
  return {std::move(out), std::move(meta)};
}

template <class Datum>
std::pair<Datum, std::vector<TransformMetadata>> compose(
    const Pipeline& pipeline, const Datum& input, Rng rng) {
  validate_pipeline<Datum>(pipeline);

  Datum current = input;
  std::vector<TransformMetadata> meta;
  meta.reserve(pipeline.children.size());

  for (std::size_t i = 0; i < pipeline.children.size(); ++i) {
    Rng child_rng = rng.derive(i);
    const auto& child = pipeline.children[i];
    if (std::holds_alternative<Pipeline>(child)) {
      auto [out, child_meta] =
          compose<Datum>(std::get<Pipeline>(child), current, child_rng);
      TransformMetadata m;
      m.name = "compose";
      m.src_shape = shape_of(current);
      m.dst_shape = shape_of(out);
      for (const auto& c : child_meta) {
        m.applied = m.applied || c.applied;
        m.intensity = std::max(m.intensity, c.intensity);
      }
      m.children = std::move(child_meta);
      meta.push_back(std::move(m));
      current = std::move(out);
    } else {
      auto [out, m] = apply_with_probability<Datum>(
          std::get<TransformSpec>(child), current, child_rng);
      meta.push_back(std::move(m));
      current = std::move(out);
    }
  }
  return {std::move(current), std::move(meta)};
}

// Intensity of a descriptor whose params are already concrete. Throws when a
// needed param is still the "random" marker.
template <class Datum>
double intensity(const TransformSpec& spec) {
  const auto& entry = Registry<Datum>::instance().at(spec.name);
  Params validated = entry.schema.validate(spec.params, spec.name);
  return entry.intensity ? entry.intensity(validated) : 100.0;
}

}  // namespace augkit
