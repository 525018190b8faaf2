#include <cmath>

#include "augkit/image/catalog.hpp"
#include "augkit/image/geometry.hpp"
#include "catalog_parts.hpp"

namespace augkit::video {

namespace {

using image::Raster;
using image::Rgba;

// Registers an image transform as a whole-clip op. Schema, parameter
// resolution and intensity are shared with the image entry, so one draw
// covers the clip and every frame sees identical params; only apply-time
// randomness (noise fields) differs per frame, via derived streams.
void add_frame_delegate(Registry<VideoClip>& reg, const std::string& name,
                        const std::string& image_name) {
  const auto& img = image::image_registry().at(image_name);
  reg.add({
      .name = name,
      .schema = img.schema,
      .resolve = img.resolve,
      .apply = [image_name](const VideoClip& clip, const Params& p,
                            Rng& rng) {
        const auto& entry = image::image_registry().at(image_name);
        VideoClip out = clip;
        for (std::size_t i = 0; i < clip.frames.size(); ++i) {
          Rng frame_rng = rng.derive(i);
          out.frames[i] = entry.apply(clip.frames[i], p, frame_rng);
        }
        reconcile_audio(out);
        return out;
      },
      .intensity = img.intensity,
  });
}

void blend_pixel(Raster& f, int x, int y, Rgba c, double opacity) {
  if (x < 0 || y < 0 || x >= f.width || y >= f.height) return;
  Rgba d = image::pixel(f, x, y);
  d.r = static_cast<std::uint8_t>(std::lround(c.r * opacity + d.r * (1.0 - opacity)));
  d.g = static_cast<std::uint8_t>(std::lround(c.g * opacity + d.g * (1.0 - opacity)));
  d.b = static_cast<std::uint8_t>(std::lround(c.b * opacity + d.b * (1.0 - opacity)));
  image::put_pixel(f, x, y, d);
}

Rgba random_color(Rng& rng) {
  return {static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
          static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
          static_cast<std::uint8_t>(rng.uniform_int(0, 255)), 255};
}

VideoClip op_perspective_shake(const VideoClip& clip, const Params& p,
                               Rng& rng) {
  const double shake = get_float(p, "shake_sigma");
  const Rgba fill = image::color_from_list(get_color(p, "fill"));
  const std::vector<double> base = get_list(p, "corner_offsets");
  if (base.size() != 8)
    throw ValidationError(
        "perspective_transform_and_shake: corner_offsets needs 8 values");

  const double w = clip.width() - 1.0, h = clip.height() - 1.0;
  const std::array<double, 8> corners{0, 0, w, 0, w, h, 0, h};

  VideoClip out = clip;
  for (std::size_t i = 0; i < clip.frames.size(); ++i) {
    Rng frame_rng = rng.derive(i);
    for (int attempt = 0;; ++attempt) {
      std::array<double, 8> moved;
      for (int j = 0; j < 8; ++j)
        moved[j] = corners[j] + base[j] + frame_rng.gaussian(0.0, shake);
      try {
        const image::Mat3 fwd = image::solve_homography(corners, moved);
        out.frames[i] = image::warp_perspective(
            clip.frames[i], image::invert3(fwd), clip.frames[i].width,
            clip.frames[i].height, fill);
        break;
      } catch (const ValidationError&) {
        if (attempt >= 8)
          throw ValidationError(
              "perspective_transform_and_shake: degenerate corners after "
              "8 redraws");
      }
    }
  }
  return out;
}

// Shapes drift along straight paths so consecutive frames stay coherent;
// all shape state is drawn once per clip.
VideoClip op_overlay_shapes(const VideoClip& clip, const Params& p,
                            Rng& rng) {
  const auto count = get_int(p, "num_shapes");
  const double opacity = get_float(p, "opacity");
  struct Blob {
    bool circle;
    Rgba color;
    double size, x, y, vx, vy;
  };
  const double min_dim = std::min(clip.width(), clip.height());
  std::vector<Blob> shapes;
  for (std::int64_t s = 0; s < count; ++s) {
    Blob sh;
    sh.circle = rng.choice(2) == 1;
    sh.color = random_color(rng);
    sh.size = (0.1 + 0.2 * rng.uniform()) * min_dim;
    sh.x = rng.uniform() * clip.width();
    sh.y = rng.uniform() * clip.height();
    sh.vx = (rng.uniform() - 0.5) * 4.0;
    sh.vy = (rng.uniform() - 0.5) * 4.0;
    shapes.push_back(sh);
  }

  VideoClip out = clip;
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    for (const Blob& sh : shapes) {
      const double cx = sh.x + sh.vx * i, cy = sh.y + sh.vy * i;
      const double half = sh.size / 2.0;
      for (int y = static_cast<int>(cy - half); y <= cy + half; ++y)
        for (int x = static_cast<int>(cx - half); x <= cx + half; ++x) {
          if (sh.circle &&
              (x - cx) * (x - cx) + (y - cy) * (y - cy) > half * half)
            continue;
          blend_pixel(out.frames[i], x, y, sh.color, opacity);
        }
    }
  }
  return out;
}

// Dot positions are redrawn per frame, which is the point: they flicker.
VideoClip op_overlay_dots(const VideoClip& clip, const Params& p, Rng& rng) {
  const auto count = get_int(p, "num_dots");
  const double opacity = get_float(p, "opacity");
  VideoClip out = clip;
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    Rng frame_rng = rng.derive(i);
    for (std::int64_t d = 0; d < count; ++d) {
      const int x = static_cast<int>(frame_rng.choice(clip.width()));
      const int y = static_cast<int>(frame_rng.choice(clip.height()));
      const Rgba c = random_color(frame_rng);
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx)
          blend_pixel(out.frames[i], x + dx, y + dy, c, opacity);
    }
  }
  return out;
}

const std::vector<double> kWhite{255, 255, 255};

}  // namespace

void register_frame_ops(Registry<VideoClip>& reg) {
  add_frame_delegate(reg, "resize", "resize");
  add_frame_delegate(reg, "scale", "scale");
  add_frame_delegate(reg, "crop", "crop");
  add_frame_delegate(reg, "pad", "pad");
  add_frame_delegate(reg, "rotate", "rotate");
  add_frame_delegate(reg, "hflip", "hflip");
  add_frame_delegate(reg, "vflip", "vflip");
  add_frame_delegate(reg, "change_aspect_ratio", "change_aspect_ratio");
  add_frame_delegate(reg, "brightness", "brightness");
  add_frame_delegate(reg, "contrast", "contrast");
  add_frame_delegate(reg, "grayscale", "grayscale");
  add_frame_delegate(reg, "color_jitter", "color_jitter");
  add_frame_delegate(reg, "blur", "blur");
  add_frame_delegate(reg, "pixelization", "pixelization");
  add_frame_delegate(reg, "encoding_quality", "encoding_quality");
  add_frame_delegate(reg, "add_noise", "random_noise");
  add_frame_delegate(reg, "meme_format", "meme_format");
  add_frame_delegate(reg, "overlay_text", "overlay_text");
  add_frame_delegate(reg, "overlay_emoji", "overlay_emoji");
  add_frame_delegate(reg, "overlay_onto_screenshot", "overlay_onto_screenshot");

  reg.add({
      .name = "perspective_transform_and_shake",
      .schema = {{"sigma", ParamType::Float, false, 30.0, 0.0, 10000.0, {},
                  true},
                 {"shake_sigma", ParamType::Float, false, 5.0, 0.0, 10000.0},
                 {"fill", ParamType::FloatList, false, kWhite},
                 {"corner_offsets", ParamType::FloatList, false,
                  std::vector<double>{}}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "sigma", 0.0, 100.0, rng);
        // The base homography is drawn once; shake jitters it per frame.
        if (get_list(out, "corner_offsets").empty()) {
          const double sigma = get_float(out, "sigma");
          std::vector<double> offsets(8);
          for (auto& o : offsets) o = rng.gaussian(0.0, sigma);
          out["corner_offsets"] = std::move(offsets);
        }
        return out;
      },
      .apply = [](const VideoClip& clip, const Params& p, Rng& rng) {
        return op_perspective_shake(clip, p, rng);
      },
      .intensity = [](const Params& p) {
        return std::min(get_float(p, "sigma"), 100.0);
      },
  });
  reg.add({
      .name = "overlay_shapes",
      .schema = {{"num_shapes", ParamType::Int, false, std::int64_t{3}, 1.0,
                  100.0},
                 {"opacity", ParamType::Float, false, 0.7, 0.0, 1.0}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng& rng) {
        return op_overlay_shapes(clip, p, rng);
      },
      .intensity = [](const Params& p) {
        return std::min<double>(get_int(p, "num_shapes"), 10.0) * 10.0;
      },
  });
  reg.add({
      .name = "overlay_dots",
      .schema = {{"num_dots", ParamType::Int, false, std::int64_t{100}, 1.0,
                  100000.0},
                 {"opacity", ParamType::Float, false, 1.0, 0.0, 1.0}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng& rng) {
        return op_overlay_dots(clip, p, rng);
      },
      .intensity = [](const Params& p) {
        return std::min(get_int(p, "num_dots") / 1000.0, 1.0) * 100.0;
      },
  });
  reg.add({
      .name = "apply_lambda",
      .schema = {{"name", ParamType::String, false, std::string("identity")}},
      .resolve = nullptr,
      .apply = [](const VideoClip& clip, const Params& p, Rng&) {
        return find_video_lambda(get_string(p, "name"))(clip);
      },
      .intensity = [](const Params& p) {
        return get_string(p, "name") == "identity" ? 0.0 : 100.0;
      },
  });
}

}  // namespace augkit::video
