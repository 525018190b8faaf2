#include "augkit/video/clip.hpp"

#include <cmath>

namespace augkit::video {

void VideoClip::check() const {
  if (frames.empty())
    throw ValidationError("clip needs at least one frame");
  if (!std::isfinite(fps) || fps <= 0.0)
    throw ValidationError("clip fps must be finite and positive");
  frames[0].check();
  for (std::size_t i = 1; i < frames.size(); ++i) {
    frames[i].check();
    if (frames[i].width != frames[0].width ||
        frames[i].height != frames[0].height ||
        frames[i].channels != frames[0].channels)
      throw ValidationError("clip frames must share dimensions and channels");
  }
  if (audio) {
    audio->check();
    if (std::abs(audio->seconds() - seconds()) > 1.0 / fps + 1e-9)
      throw ValidationError(
          "audio and video durations differ by more than one frame");
  }
}

void reconcile_audio(VideoClip& clip) {
  if (!clip.audio) return;
  const auto target = static_cast<std::size_t>(
      std::llround(clip.seconds() * clip.audio->sample_rate));
  for (auto& ch : clip.audio->samples) ch.resize(target, 0.0f);
}

VideoClip test_pattern_clip(int width, int height, int frame_count,
                            double fps, bool with_audio) {
  VideoClip clip;
  clip.fps = fps;
  clip.frames.reserve(frame_count);
  for (int i = 0; i < frame_count; ++i) {
    image::Raster f(width, height, 3);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        f.at(x, y, 0) = static_cast<std::uint8_t>((x * 5 + i * 7) & 0xFF);
        f.at(x, y, 1) = static_cast<std::uint8_t>((y * 3 + i * 11) & 0xFF);
        f.at(x, y, 2) = static_cast<std::uint8_t>((x + y + i * 2) & 0xFF);
      }
    clip.frames.push_back(std::move(f));
  }
  if (with_audio)
    clip.audio = audio::sine_wave(220.0, frame_count / fps, 44100, 0.3, 1);
  clip.check();
  return clip;
}

Shape shape_of(const VideoClip& clip) {
  return {"video",
          {{"frames", static_cast<double>(clip.frames.size())},
           {"width", static_cast<double>(clip.width())},
           {"height", static_cast<double>(clip.height())},
           {"channels", static_cast<double>(clip.channels())},
           {"fps", clip.fps},
           {"audio_frames",
            clip.audio ? static_cast<double>(clip.audio->frames()) : 0.0}}};
}

}  // namespace augkit::video
