#pragma once

#include <functional>

#include "augkit/core/compose.hpp"
#include "augkit/video/clip.hpp"

namespace augkit::video {

// The video transform registry; registers the full catalog on first use.
Registry<VideoClip>& video_registry();

// Named callbacks usable through the apply_lambda transform. "identity" is
// predefined.
void register_video_lambda(const std::string& name,
                           std::function<VideoClip(const VideoClip&)> fn);

// Runs one image transform on every frame. Parameters are resolved once and
// reused for all frames, so position-style draws match across the clip;
// field-style randomness (noise samples) is redrawn per frame from a
// derived stream. spec.p is ignored here.
VideoClip per_frame(const TransformSpec& spec, const VideoClip& clip,
                    std::uint64_t seed);

VideoClip apply(const TransformSpec& spec, const VideoClip& clip,
                std::uint64_t seed);

std::pair<VideoClip, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const VideoClip& clip, std::uint64_t seed);

}  // namespace augkit::video
