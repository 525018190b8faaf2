#include "augkit/image/catalog.hpp"

#include <map>
#include <mutex>

#include "catalog_parts.hpp"

namespace augkit::image {

namespace {

std::mutex& lambda_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::function<Raster(const Raster&)>>& lambda_map() {
  static std::map<std::string, std::function<Raster(const Raster&)>> fns{
      {"identity", [](const Raster& img) { return img; }}};
  return fns;
}

}  // namespace

void register_image_lambda(const std::string& name,
                           std::function<Raster(const Raster&)> fn) {
  if (!fn) throw ValidationError("apply_lambda callback must not be empty");
  std::lock_guard<std::mutex> lock(lambda_mutex());
  lambda_map()[name] = std::move(fn);
}

std::function<Raster(const Raster&)> find_image_lambda(const std::string& name) {
  std::lock_guard<std::mutex> lock(lambda_mutex());
  auto it = lambda_map().find(name);
  if (it == lambda_map().end())
    throw ValidationError("apply_lambda: unknown callback '" + name + "'");
  return it->second;
}

Registry<Raster>& image_registry() {
  static const bool registered = [] {
    Registry<Raster>& r = Registry<Raster>::instance();
    register_geometry_ops(r);
    register_color_ops(r);
    register_overlay_ops(r);
    return true;
  }();
  (void)registered;
  return Registry<Raster>::instance();
}

Raster apply(const TransformSpec& spec, const Raster& img, std::uint64_t seed) {
  image_registry();
  image_registry();
  return apply_with_probability<Raster>(spec, img, Rng(seed)).first;
}

std::pair<Raster, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const Raster& img, std::uint64_t seed) {
  image_registry();
  image_registry();
  return compose<Raster>(pipeline, img, Rng(seed));
}

}  // namespace augkit::image
