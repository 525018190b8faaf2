#pragma once

#include <functional>

#include "augkit/core/compose.hpp"
#include "augkit/image/raster.hpp"

namespace augkit::image {

// The image transform registry; registers the full catalog on first use.
Registry<Raster>& image_registry();

// Named callbacks usable through the apply_lambda transform. "identity" is
// predefined.
void register_image_lambda(const std::string& name,
                           std::function<Raster(const Raster&)> fn);

Raster apply(const TransformSpec& spec, const Raster& img, std::uint64_t seed);

std::pair<Raster, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const Raster& img, std::uint64_t seed);

}  // namespace augkit::image
