#pragma once

#include "augkit/core/registry.hpp"
#include "augkit/image/raster.hpp"

namespace augkit::image {

void register_geometry_ops(Registry<Raster>& reg);
void register_color_ops(Registry<Raster>& reg);
void register_overlay_ops(Registry<Raster>& reg);

std::function<Raster(const Raster&)> find_image_lambda(const std::string& name);

}  // namespace augkit::image
