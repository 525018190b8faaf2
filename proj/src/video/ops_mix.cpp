#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>

#include "augkit/assets.hpp"
#include "augkit/audio/dsp.hpp"
#include "augkit/audio/wav.hpp"
#include "augkit/core/compose.hpp"
#include "augkit/core/spec.hpp"
#include "augkit/image/raster.hpp"
#include "augkit/video/clip_io.hpp"
#include "catalog_parts.hpp"

namespace augkit::video {

namespace {

using image::Raster;

std::string bundled_background_dir() {
  namespace fs = std::filesystem;
  const auto dir =
      fs::path(AssetStore::instance().root()) / "video" / "background";
  if (!fs::is_directory(dir))
    throw AssetError("bundled background clip missing: " + dir.string());
  return dir.string();
}

}  // namespace

VideoClip load_secondary(const std::string& path) {
  static std::mutex mu;
  static std::map<std::string, VideoClip> cache;
  const std::string key = path.empty() ? bundled_background_dir() : path;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, load_clip_auto(key)).first;
  return it->second;
}

VideoClip conform_frames(const VideoClip& clip, int width, int height,
                         int channels) {
  VideoClip out = clip;
  for (auto& f : out.frames)
    f = image::to_channels(image::resize_bilinear(f, width, height), channels);
  return out;
}

audio::AudioBuffer audio_or_silence(const VideoClip& clip, int rate,
                                    int channels) {
  if (!clip.audio) {
    const auto frames =
        static_cast<std::size_t>(std::llround(clip.seconds() * rate));
    return audio::AudioBuffer(channels, frames, rate);
  }
  audio::AudioBuffer buf = *clip.audio;
  if (channels == 1 && buf.channels() > 1) buf = audio::to_mono_buffer(buf);
  while (buf.channels() < channels) buf.samples.push_back(buf.samples[0]);
  buf.samples.resize(channels);
  if (buf.sample_rate != rate) {
    const double step = static_cast<double>(buf.sample_rate) / rate;
    const auto out_len = static_cast<std::size_t>(
        std::llround(buf.frames() / static_cast<double>(buf.sample_rate) *
                     rate));
    for (auto& ch : buf.samples) ch = audio::resample_sinc(ch, step, out_len);
    buf.sample_rate = rate;
  }
  return buf;
}

namespace {

void require_same_dims(const VideoClip& a, const VideoClip& b,
                       const std::string& op) {
  if (a.width() != b.width() || a.height() != b.height() ||
      a.channels() != b.channels())
    throw ValidationError(op + ": clip dimensions must match");
}

// Appends src's audio (or silence) cut to exactly `seconds`, so a source
// whose frames get reinterpreted at the output rate stays aligned.
void append_fitted(audio::AudioBuffer& dst, const VideoClip& src,
                   double seconds) {
  audio::AudioBuffer part =
      audio_or_silence(src, dst.sample_rate, dst.channels());
  const auto want =
      static_cast<std::size_t>(std::llround(seconds * dst.sample_rate));
  for (int c = 0; c < dst.channels(); ++c) {
    part.samples[c].resize(want, 0.0f);
    dst.samples[c].insert(dst.samples[c].end(), part.samples[c].begin(),
                          part.samples[c].end());
  }
}

VideoClip op_concat(const VideoClip& clip, const Params& p) {
  const VideoClip second = load_secondary(get_string(p, "second_path"));
  require_same_dims(clip, second, "concat");
  VideoClip out;
  out.fps = clip.fps;
  out.frames = clip.frames;
  out.frames.insert(out.frames.end(), second.frames.begin(),
                    second.frames.end());
  if (clip.audio || second.audio) {
    const audio::AudioBuffer& lead =
        clip.audio ? *clip.audio : *second.audio;
    audio::AudioBuffer joined(lead.channels(), 0, lead.sample_rate);
    append_fitted(joined, clip, clip.frames.size() / out.fps);
    append_fitted(joined, second, second.frames.size() / out.fps);
    out.audio = std::move(joined);
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_stack(const VideoClip& clip, const Params& p, bool horizontal) {
  const VideoClip second = load_secondary(get_string(p, "second_path"));
  if (horizontal && clip.height() != second.height())
    throw ValidationError("hstack: clip heights must match");
  if (!horizontal && clip.width() != second.width())
    throw ValidationError("vstack: clip widths must match");

  VideoClip out;
  out.fps = clip.fps;
  out.audio = clip.audio;
  const std::size_t count =
      std::min(clip.frames.size(), second.frames.size());
  const int ch = clip.channels();
  for (std::size_t i = 0; i < count; ++i) {
    const Raster& a = clip.frames[i];
    const Raster b = image::to_channels(second.frames[i], ch);
    Raster joined(horizontal ? a.width + b.width : a.width,
                  horizontal ? a.height : a.height + b.height, ch);
    for (int y = 0; y < a.height; ++y)
      for (int x = 0; x < a.width; ++x)
        for (int c = 0; c < ch; ++c) joined.at(x, y, c) = a.at(x, y, c);
    const int x_off = horizontal ? a.width : 0;
    const int y_off = horizontal ? 0 : a.height;
    for (int y = 0; y < b.height; ++y)
      for (int x = 0; x < b.width; ++x)
        for (int c = 0; c < ch; ++c)
          joined.at(x + x_off, y + y_off, c) = b.at(x, y, c);
    out.frames.push_back(std::move(joined));
  }
  if (out.frames.empty())
    throw ValidationError("stack: no overlapping frames");
  reconcile_audio(out);
  return out;
}

// Fit `src` dims into (max_w, max_h) scaled to size_factor * max_h height.
std::pair<int, int> overlay_dims(int src_w, int src_h, int max_w, int max_h,
                                 double size_factor) {
  const double scale = size_factor * max_h / src_h;
  int w = std::max(1, static_cast<int>(std::lround(src_w * scale)));
  int h = std::max(1, static_cast<int>(std::lround(src_h * scale)));
  if (w > max_w) {
    h = std::max(1, h * max_w / w);
    w = max_w;
  }
  if (h > max_h) {
    w = std::max(1, w * max_h / h);
    h = max_h;
  }
  return {w, h};
}

VideoClip op_overlay(const VideoClip& clip, const Params& p) {
  const VideoClip ov = load_secondary(get_string(p, "overlay_path"));
  const double size = get_float(p, "overlay_size");
  const double opacity = get_float(p, "opacity");
  const auto [ow, oh] = overlay_dims(ov.width(), ov.height(), clip.width(),
                                     clip.height(), size);
  const int x = static_cast<int>(
      std::lround(get_float(p, "x_pos") * (clip.width() - ow)));
  const int y = static_cast<int>(
      std::lround(get_float(p, "y_pos") * (clip.height() - oh)));

  VideoClip out = clip;
  const std::size_t count = std::min(clip.frames.size(), ov.frames.size());
  for (std::size_t i = 0; i < count; ++i)
    image::composite_over(out.frames[i],
                          image::resize_bilinear(ov.frames[i], ow, oh), x, y,
                          opacity);
  return out;
}

VideoClip op_blend(const VideoClip& clip, const Params& p) {
  const double alpha = get_float(p, "alpha");
  const VideoClip second =
      conform_frames(load_secondary(get_string(p, "second_path")),
                     clip.width(), clip.height(), clip.channels());
  VideoClip out = clip;
  const std::size_t m = second.frames.size();
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    const Raster& b = second.frames[i % m];
    auto& f = out.frames[i];
    for (std::size_t k = 0; k < f.pixels.size(); ++k)
      f.pixels[k] = static_cast<std::uint8_t>(
          std::lround((1.0 - alpha) * f.pixels[k] + alpha * b.pixels[k]));
  }
  return out;
}

VideoClip op_onto_background_video(const VideoClip& clip, const Params& p) {
  const VideoClip bg = load_secondary(get_string(p, "background_path"));
  const double size = get_float(p, "overlay_size");
  const auto [ow, oh] = overlay_dims(clip.width(), clip.height(), bg.width(),
                                     bg.height(), size);
  const int x = static_cast<int>(
      std::lround(get_float(p, "x_pos") * (bg.width() - ow)));
  const int y = static_cast<int>(
      std::lround(get_float(p, "y_pos") * (bg.height() - oh)));

  VideoClip out;
  out.fps = bg.fps;
  out.audio = clip.audio;
  out.frames.reserve(bg.frames.size());
  const int ch = bg.channels();
  const auto n = clip.frames.size();
  for (std::size_t i = 0; i < bg.frames.size(); ++i) {
    Raster f = bg.frames[i];
    // The foreground holds its last frame if the background runs longer.
    const Raster& src = clip.frames[std::min(i, n - 1)];
    image::composite_over(f, image::to_channels(
                                 image::resize_bilinear(src, ow, oh), ch),
                          x, y);
    out.frames.push_back(std::move(f));
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_insert_in_background(const VideoClip& clip, const Params& p) {
  const VideoClip bg =
      conform_frames(load_secondary(get_string(p, "background_path")),
                     clip.width(), clip.height(), clip.channels());
  const auto bg_n = bg.frames.size();
  const auto k = std::min<std::size_t>(
      std::llround(get_float(p, "offset_factor") * bg_n), bg_n);

  VideoClip out;
  out.fps = clip.fps;
  out.frames.assign(bg.frames.begin(), bg.frames.begin() + k);
  out.frames.insert(out.frames.end(), clip.frames.begin(), clip.frames.end());
  out.frames.insert(out.frames.end(), bg.frames.begin() + k, bg.frames.end());
  // Background frames are reinterpreted at the input rate, so its own audio
  // cannot stay aligned; the inserted segment keeps the input track and the
  // surrounding segments are silent.
  if (clip.audio) {
    const int rate = clip.audio->sample_rate;
    const auto head =
        static_cast<std::size_t>(std::llround(k / clip.fps * rate));
    audio::AudioBuffer buf(clip.audio->channels(), head, rate);
    for (int c = 0; c < buf.channels(); ++c)
      buf.samples[c].insert(buf.samples[c].end(),
                            clip.audio->samples[c].begin(),
                            clip.audio->samples[c].end());
    out.audio = std::move(buf);
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_replace_with_background(const VideoClip& clip, const Params& p) {
  const VideoClip bg =
      conform_frames(load_secondary(get_string(p, "background_path")),
                     clip.width(), clip.height(), clip.channels());
  const double offset = get_float(p, "offset_factor");
  const double duration = get_float(p, "duration_factor");
  const auto n = clip.frames.size();
  const auto f0 = std::min<std::size_t>(std::llround(offset * n), n);
  const auto f1 =
      std::min<std::size_t>(std::llround((offset + duration) * n), n);
  VideoClip out = clip;
  for (std::size_t i = f0; i < f1; ++i)
    out.frames[i] = bg.frames[(i - f0) % bg.frames.size()];
  return out;
}

VideoClip op_augment_audio(const VideoClip& clip, const Params& p, Rng& rng) {
  if (!clip.audio)
    throw ValidationError("augment_audio: clip has no audio track");
  const Pipeline pipeline =
      parse_pipeline_json(get_string(p, "pipeline_json"));
  auto [buf, meta] = compose<audio::AudioBuffer>(pipeline, *clip.audio, rng);
  VideoClip out = clip;
  out.audio = std::move(buf);
  reconcile_audio(out);
  for (auto& m : meta) pending_child_metadata().push_back(std::move(m));
  return out;
}

VideoClip op_audio_swap(const VideoClip& clip, const Params& p) {
  std::string path = get_string(p, "audio_path");
  if (path.empty())
    path = AssetStore::instance().file("audio/background_noise.wav");
  const audio::AudioBuffer src = audio::load_wav(path);
  const auto start = std::min<std::size_t>(
      std::llround(get_float(p, "offset_factor") * src.frames()),
      src.frames());
  audio::AudioBuffer cut(src.channels(), src.frames() - start,
                         src.sample_rate);
  for (int c = 0; c < cut.channels(); ++c)
    std::copy(src.samples[c].begin() + start, src.samples[c].end(),
              cut.samples[c].begin());
  VideoClip out = clip;
  out.audio = std::move(cut);
  reconcile_audio(out);
  return out;
}

Params resolve_overlay_pos(const Params& p, Rng& rng) {
  Params out = p;
  resolve_random_float(out, "overlay_size", 0.05, 0.6, rng);
  resolve_random_float(out, "x_pos", 0.0, 1.0, rng);
  resolve_random_float(out, "y_pos", 0.0, 1.0, rng);
  return out;
}

const ParamDef kSecondPath{"second_path", ParamType::String, false,
                           std::string()};
const ParamDef kBackgroundPath{"background_path", ParamType::String, false,
                               std::string()};

}  // namespace

void register_mix_ops(Registry<VideoClip>& reg) {
  reg.add({
      .name = "concat",
      .schema = {kSecondPath},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_concat(clip, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "hstack",
      .schema = {kSecondPath},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_stack(clip, p, true);
      },
      // Half of the output canvas is foreign content.
      .intensity = [](const Params&) { return 50.0; },
  });
  reg.add({
      .name = "vstack",
      .schema = {kSecondPath},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_stack(clip, p, false);
      },
      .intensity = [](const Params&) { return 50.0; },
  });
  reg.add({
      .name = "overlay",
      .schema = {{"overlay_path", ParamType::String, false, std::string()},
                 {"overlay_size", ParamType::Float, false, 0.3, 0.0, 1.0, {},
                  true},
                 {"x_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true},
                 {"y_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true},
                 {"opacity", ParamType::Float, false, 1.0, 0.0, 1.0}},
      .resolve = resolve_overlay_pos,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_overlay(clip, p);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "overlay_size") * 100.0;
      },
  });
  reg.add({
      .name = "blend_videos",
      .schema = {kSecondPath,
                 {"alpha", ParamType::Float, false, 0.5, 0.0, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "alpha", 0.1, 0.9, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_blend(clip, p);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "alpha") * 100.0;
      },
  });
  reg.add({
      .name = "overlay_onto_background_video",
      .schema = {kBackgroundPath,
                 {"overlay_size", ParamType::Float, false, 0.3, 0.0, 1.0, {},
                  true},
                 {"x_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true},
                 {"y_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true}},
      .resolve = resolve_overlay_pos,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_onto_background_video(clip, p);
      },
      // How much of the canvas the background claims.
      .intensity = [](const Params& p) {
        return (1.0 - get_float(p, "overlay_size")) * 100.0;
      },
  });
  reg.add({
      .name = "insert_in_background",
      .schema = {kBackgroundPath,
                 {"offset_factor", ParamType::Float, false, 0.5, 0.0, 1.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_insert_in_background(clip, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "replace_with_background",
      .schema = {kBackgroundPath,
                 {"offset_factor", ParamType::Float, false, 0.0, 0.0, 1.0, {},
                  true},
                 {"duration_factor", ParamType::Float, false, 0.5, 0.0, 1.0,
                  {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 0.5, rng);
        resolve_random_float(out, "duration_factor", 0.25, 0.5, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_replace_with_background(clip, p);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "duration_factor") * 100.0;
      },
  });
  reg.add({
      .name = "augment_audio",
      .schema = {{"pipeline_json", ParamType::String, true}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng& rng) {
        return op_augment_audio(clip, p, rng);
      },
      // Strength lives in the embedded pipeline, not these params.
      .intensity = nullptr,
  });
  reg.add({
      .name = "audio_swap",
      .schema = {{"audio_path", ParamType::String, false, std::string()},
                 {"offset_factor", ParamType::Float, false, 0.0, 0.0, 1.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 0.5, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_audio_swap(clip, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "remove_audio",
      .schema = {},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params&, Rng&) {
        VideoClip out = clip;
        out.audio.reset();
        return out;
      },
      .intensity = nullptr,
  });
}

}  // namespace augkit::video
