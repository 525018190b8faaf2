#pragma once

#include "augkit/core/registry.hpp"
#include "augkit/video/clip.hpp"

namespace augkit::video {

void register_temporal_ops(Registry<VideoClip>& reg);
void register_mix_ops(Registry<VideoClip>& reg);
void register_frame_ops(Registry<VideoClip>& reg);

std::function<VideoClip(const VideoClip&)> find_video_lambda(
    const std::string& name);

// Secondary clip for two-clip ops; "" means the bundled background clip.
VideoClip load_secondary(const std::string& path);

// Resizes every frame to the given dims and converts channel count; fps and
// audio pass through.
VideoClip conform_frames(const VideoClip& clip, int width, int height,
                         int channels);

// The clip's audio, or silence of the clip's duration at `rate`.
audio::AudioBuffer audio_or_silence(const VideoClip& clip, int rate,
                                    int channels);

}  // namespace augkit::video
