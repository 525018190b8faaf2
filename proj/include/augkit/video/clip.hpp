#pragma once

#include <optional>
#include <vector>

#include "augkit/audio/buffer.hpp"
#include "augkit/image/raster.hpp"

namespace augkit::video {

// In-memory clip: an ordered frame list at a constant rate, plus an
// optional audio track. Small clips only; nothing here streams.
struct VideoClip {
  std::vector<image::Raster> frames;
  double fps = 30.0;
  std::optional<audio::AudioBuffer> audio;

  double seconds() const {
    return static_cast<double>(frames.size()) / fps;
  }

  int width() const { return frames.empty() ? 0 : frames[0].width; }
  int height() const { return frames.empty() ? 0 : frames[0].height; }
  int channels() const { return frames.empty() ? 0 : frames[0].channels; }

  // At least one frame, finite fps > 0, uniform frame dims/channels, and
  // when audio is present its duration within one frame period of the
  // video's.
  void check() const;

  bool operator==(const VideoClip&) const = default;
};

// Truncates or silence-pads the audio track to exactly the video duration.
// Every op that touches either stream's length runs this before returning.
void reconcile_audio(VideoClip& clip);

// Moving-gradient test generator used by tests and benchmarks; audio is a
// 220 Hz sine when requested.
VideoClip test_pattern_clip(int width, int height, int frame_count,
                            double fps, bool with_audio);

Shape shape_of(const VideoClip& clip);

}  // namespace augkit::video
