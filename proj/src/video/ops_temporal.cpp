#include <cmath>

#include "augkit/audio/catalog.hpp"
#include "augkit/image/raster.hpp"
#include "catalog_parts.hpp"

namespace augkit::video {

namespace {

std::size_t to_frame(double seconds, double fps, std::size_t max) {
  const long long f = std::llround(seconds * fps);
  if (f <= 0) return 0;
  return std::min<std::size_t>(f, max);
}

// Frames [f0, f1) plus the matching audio interval.
VideoClip cut_time(const VideoClip& clip, std::size_t f0, std::size_t f1) {
  VideoClip out;
  out.fps = clip.fps;
  out.frames.assign(clip.frames.begin() + f0, clip.frames.begin() + f1);
  if (clip.audio) {
    const int rate = clip.audio->sample_rate;
    const auto n = clip.audio->frames();
    const auto a0 = std::min<std::size_t>(
        std::llround(f0 / clip.fps * rate), n);
    const auto a1 = std::min<std::size_t>(
        std::llround(f1 / clip.fps * rate), n);
    audio::AudioBuffer cut(clip.audio->channels(), a1 - a0, rate);
    for (int c = 0; c < cut.channels(); ++c)
      std::copy(clip.audio->samples[c].begin() + a0,
                clip.audio->samples[c].begin() + a1,
                cut.samples[c].begin());
    out.audio = std::move(cut);
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_time_crop(const VideoClip& clip, const Params& p) {
  const double offset = get_float(p, "offset_factor");
  const double duration = get_float(p, "duration_factor");
  if (offset + duration > 1.0 + 1e-9)
    throw ValidationError("time_crop: offset plus duration exceeds 1");
  const auto n = clip.frames.size();
  const auto f0 = std::min<std::size_t>(std::llround(offset * n), n);
  const auto f1 =
      std::min<std::size_t>(std::llround((offset + duration) * n), n);
  if (f1 <= f0)
    throw ValidationError("time_crop: window rounds to zero frames");
  return cut_time(clip, f0, f1);
}

VideoClip op_trim(const VideoClip& clip, const Params& p) {
  const double start = get_float(p, "start");
  const double end = get_float(p, "end");
  if (end >= 0.0 && end <= start)
    throw ValidationError("trim: end must be after start");
  const auto n = clip.frames.size();
  const auto f0 = to_frame(start, clip.fps, n);
  const auto f1 = end < 0.0 ? n : to_frame(end, clip.fps, n);
  if (f1 <= f0)
    throw ValidationError("trim: window rounds to zero frames");
  return cut_time(clip, f0, f1);
}

VideoClip op_loop(const VideoClip& clip, const Params& p) {
  const auto loops = static_cast<std::size_t>(get_int(p, "num_loops"));
  VideoClip out;
  out.fps = clip.fps;
  out.frames.reserve(clip.frames.size() * (loops + 1));
  if (clip.audio)
    out.audio = audio::AudioBuffer(clip.audio->channels(), 0,
                                   clip.audio->sample_rate);
  for (std::size_t k = 0; k <= loops; ++k) {
    out.frames.insert(out.frames.end(), clip.frames.begin(),
                      clip.frames.end());
    if (clip.audio)
      for (int c = 0; c < clip.audio->channels(); ++c)
        out.audio->samples[c].insert(out.audio->samples[c].end(),
                                     clip.audio->samples[c].begin(),
                                     clip.audio->samples[c].end());
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_shift(const VideoClip& clip, const Params& p) {
  const double offset = get_float(p, "offset_factor");
  const auto n = clip.frames.size();
  const auto k = std::min<std::size_t>(std::llround(offset * n), n);
  if (k == 0) return clip;
  const image::Raster fill = image::filled(
      clip.width(), clip.height(), clip.channels(),
      image::color_from_list(get_color(p, "color")));
  VideoClip out;
  out.fps = clip.fps;
  out.frames.assign(k, fill);
  out.frames.insert(out.frames.end(), clip.frames.begin(),
                    clip.frames.end() - k);
  if (clip.audio) {
    const auto an = clip.audio->frames();
    const auto ak = std::min<std::size_t>(
        std::llround(k / clip.fps * clip.audio->sample_rate), an);
    audio::AudioBuffer shifted(clip.audio->channels(), an,
                               clip.audio->sample_rate);
    for (int c = 0; c < shifted.channels(); ++c)
      std::copy(clip.audio->samples[c].begin(),
                clip.audio->samples[c].end() - ak,
                shifted.samples[c].begin() + ak);
    out.audio = std::move(shifted);
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_time_decimate(const VideoClip& clip, const Params& p) {
  const double on = get_float(p, "on_seconds");
  const double off = get_float(p, "off_seconds");
  const auto keep = std::llround(on * clip.fps);
  const auto period = std::llround((on + off) * clip.fps);
  if (keep < 1)
    throw ValidationError("time_decimate: on window is shorter than a frame");
  VideoClip out;
  out.fps = clip.fps;
  for (std::size_t i = 0; i < clip.frames.size(); ++i)
    if (static_cast<long long>(i) % period < keep)
      out.frames.push_back(clip.frames[i]);
  if (clip.audio) {
    const int rate = clip.audio->sample_rate;
    const auto a_keep = std::llround(on * rate);
    const auto a_period = std::llround((on + off) * rate);
    audio::AudioBuffer cut(clip.audio->channels(), 0, rate);
    for (std::size_t j = 0; j < clip.audio->frames(); ++j)
      if (static_cast<long long>(j) % a_period < a_keep)
        for (int c = 0; c < cut.channels(); ++c)
          cut.samples[c].push_back(clip.audio->samples[c][j]);
    out.audio = std::move(cut);
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_speed(const VideoClip& clip, const Params& p, Rng& rng) {
  const double factor = get_float(p, "factor");
  const auto n = clip.frames.size();
  const auto m = std::max<std::size_t>(1, std::llround(n / factor));
  VideoClip out;
  out.fps = clip.fps;
  out.frames.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    out.frames.push_back(
        clip.frames[std::min<std::size_t>(std::llround(i * factor), n - 1)]);
  if (clip.audio)
    out.audio = audio::audio_registry().at("speed").apply(
        *clip.audio, {{"factor", factor}}, rng);
  reconcile_audio(out);
  return out;
}

VideoClip op_fps(const VideoClip& clip, const Params& p) {
  const double new_fps = get_float(p, "fps");
  const auto n = clip.frames.size();
  const auto m =
      std::max<std::size_t>(1, std::llround(n * new_fps / clip.fps));
  VideoClip out;
  out.fps = new_fps;
  out.audio = clip.audio;
  out.frames.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = static_cast<std::size_t>(
        std::floor(i * clip.fps / new_fps + 1e-9));
    out.frames.push_back(clip.frames[std::min(src, n - 1)]);
  }
  reconcile_audio(out);
  return out;
}

VideoClip op_color_frames(const VideoClip& clip, const Params& p) {
  const double offset = get_float(p, "offset_factor");
  const double duration = get_float(p, "duration_factor");
  const auto n = clip.frames.size();
  const auto f0 = std::min<std::size_t>(std::llround(offset * n), n);
  const auto f1 =
      std::min<std::size_t>(std::llround((offset + duration) * n), n);
  const image::Raster fill = image::filled(
      clip.width(), clip.height(), clip.channels(),
      image::color_from_list(get_color(p, "color")));
  VideoClip out = clip;
  for (std::size_t i = f0; i < f1; ++i) out.frames[i] = fill;
  return out;
}

double log2_saturated(double factor) {
  return std::min(std::abs(std::log2(factor)), 2.0) / 2.0 * 100.0;
}

const std::vector<double> kBlack{0, 0, 0};

}  // namespace

void register_temporal_ops(Registry<VideoClip>& reg) {
  reg.add({
      .name = "time_crop",
      .schema = {{"offset_factor", ParamType::Float, false, 0.0, 0.0, 1.0, {},
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
        return op_time_crop(clip, p);
      },
      .intensity = [](const Params& p) {
        return (1.0 - get_float(p, "duration_factor")) * 100.0;
      },
  });
  reg.add({
      .name = "trim",
      .schema = {{"start", ParamType::Float, false, 0.0, 0.0},
                 {"end", ParamType::Float, false, -1.0, -1.0}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_trim(clip, p);
      },
      // Parameters alone cannot tell how much of the clip the window drops.
      .intensity = [](const Params& p) {
        return get_float(p, "start") == 0.0 && get_float(p, "end") < 0.0
                   ? 0.0
                   : 100.0;
      },
  });
  reg.add({
      .name = "loop",
      .schema = {{"num_loops", ParamType::Int, false, std::int64_t{1}, 0.0,
                  100.0}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_loop(clip, p);
      },
      .intensity = [](const Params& p) {
        const double n = static_cast<double>(get_int(p, "num_loops"));
        return n / (n + 1.0) * 100.0;
      },
  });
  reg.add({
      .name = "shift",
      .schema = {{"offset_factor", ParamType::Float, false, 0.25, 0.0, 1.0,
                  {}, true},
                 {"color", ParamType::FloatList, false, kBlack}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 0.5, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_shift(clip, p);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "offset_factor") * 100.0;
      },
  });
  reg.add({
      .name = "time_decimate",
      .schema = {{"on_seconds", ParamType::Float, false, 1.0, 1e-6},
                 {"off_seconds", ParamType::Float, false, 1.0, 0.0}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_time_decimate(clip, p);
      },
      .intensity = [](const Params& p) {
        const double on = get_float(p, "on_seconds");
        const double off = get_float(p, "off_seconds");
        return off / (on + off) * 100.0;
      },
  });
  reg.add({
      .name = "change_video_speed",
      .schema = {{"factor", ParamType::Float, false, 2.0, 0.1, 10.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.5, 2.0, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng& rng) {
        return op_speed(clip, p, rng);
      },
      .intensity = [](const Params& p) {
        return log2_saturated(get_float(p, "factor"));
      },
  });
  reg.add({
      .name = "fps",
      .schema = {{"fps", ParamType::Float, false, 15.0, 1.0, 240.0}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_fps(clip, p);
      },
      // The source rate is not in the params, so the rate change is unknown.
      .intensity = nullptr,
  });
  reg.add({
      .name = "replace_with_color_frames",
      .schema = {{"offset_factor", ParamType::Float, false, 0.0, 0.0, 1.0, {},
                  true},
                 {"duration_factor", ParamType::Float, false, 0.5, 0.0, 1.0,
                  {}, true},
                 {"color", ParamType::FloatList, false, kBlack}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 0.5, rng);
        resolve_random_float(out, "duration_factor", 0.25, 0.5, rng);
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return op_color_frames(clip, p);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "duration_factor") * 100.0;
      },
  });
}

}  // namespace augkit::video
