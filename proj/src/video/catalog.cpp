#include "augkit/video/catalog.hpp"

#include <map>
#include <mutex>

#include "augkit/image/catalog.hpp"
#include "catalog_parts.hpp"

namespace augkit::video {

namespace {

std::mutex lambda_mutex;

std::map<std::string, std::function<VideoClip(const VideoClip&)>>&
lambda_map() {
  static std::map<std::string, std::function<VideoClip(const VideoClip&)>> m{
      {"identity", [](const VideoClip& clip) { return clip; }}};
  return m;
}

}  // namespace

void register_video_lambda(const std::string& name,
                           std::function<VideoClip(const VideoClip&)> fn) {
  if (!fn) throw ValidationError("lambda callback must not be null");
  std::lock_guard lock(lambda_mutex);
  lambda_map()[name] = std::move(fn);
}

std::function<VideoClip(const VideoClip&)> find_video_lambda(
    const std::string& name) {
  std::lock_guard lock(lambda_mutex);
  const auto it = lambda_map().find(name);
  if (it == lambda_map().end())
    throw ValidationError("unknown lambda '" + name + "'");
  return it->second;
}

Registry<VideoClip>& video_registry() {
  static const bool registered = [] {
    auto& r = Registry<VideoClip>::instance();
    register_temporal_ops(r);
    register_mix_ops(r);
    register_frame_ops(r);
    return true;
  }();
  (void)registered;
  return Registry<VideoClip>::instance();
}

VideoClip per_frame(const TransformSpec& spec, const VideoClip& clip,
                    std::uint64_t seed) {
  const auto& entry = image::image_registry().at(spec.name);
  Params validated = entry.schema.validate(spec.params, spec.name);
  Rng rng(seed);
  Rng resolve_rng = rng.derive(1);
  const Params resolved = entry.resolve
                              ? entry.resolve(validated, resolve_rng)
                              : std::move(validated);
  Rng apply_rng = rng.derive(2);
  VideoClip out = clip;
  for (std::size_t i = 0; i < clip.frames.size(); ++i) {
    Rng frame_rng = apply_rng.derive(i);
    out.frames[i] = entry.apply(clip.frames[i], resolved, frame_rng);
  }
  reconcile_audio(out);
  out.check();
  return out;
}

VideoClip apply(const TransformSpec& spec, const VideoClip& clip,
                std::uint64_t seed) {
  Rng rng(seed);
  video_registry();
  return apply_with_probability<VideoClip>(spec, clip, rng).first;
}

std::pair<VideoClip, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const VideoClip& clip, std::uint64_t seed) {
  Rng rng(seed);
  video_registry();
  return compose<VideoClip>(pipeline, clip, rng);
}

}  // namespace augkit::video
