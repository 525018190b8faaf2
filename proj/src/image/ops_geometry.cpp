#include <algorithm>
#include <cmath>

#include "augkit/image/geometry.hpp"
#include "catalog_parts.hpp"

namespace augkit::image {

namespace {

int round_dim(double v) {
  return std::max(1, static_cast<int>(std::lround(v)));
}

Raster op_crop(const Raster& img, const Params& p) {
  const double x1 = get_float(p, "x1"), y1 = get_float(p, "y1");
  const double x2 = get_float(p, "x2"), y2 = get_float(p, "y2");
  if (x2 <= x1 || y2 <= y1)
    throw ValidationError("crop: x2/y2 must exceed x1/y1");
  const int left = std::clamp(static_cast<int>(std::lround(x1 * img.width)), 0,
                              img.width - 1);
  const int top = std::clamp(static_cast<int>(std::lround(y1 * img.height)), 0,
                             img.height - 1);
  const int right = std::clamp(static_cast<int>(std::lround(x2 * img.width)),
                               left + 1, img.width);
  const int bottom = std::clamp(static_cast<int>(std::lround(y2 * img.height)),
                                top + 1, img.height);
  Raster out(right - left, bottom - top, img.channels);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(left + x, top + y, c);
  return out;
}

Raster op_pad(const Raster& img, const Params& p) {
  const double wf = get_float(p, "w_factor"), hf = get_float(p, "h_factor");
  if (wf == 0.0 && hf == 0.0) return img;
  const Rgba color = color_from_list(get_color(p, "color"));
  const int px = static_cast<int>(std::lround(wf * img.width));
  const int py = static_cast<int>(std::lround(hf * img.height));
  Raster out = filled(img.width + 2 * px, img.height + 2 * py, img.channels,
                      color);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(px + x, py + y, c) = img.at(x, y, c);
  return out;
}

Raster op_pad_square(const Raster& img, const Params& p) {
  if (img.width == img.height) return img;
  const Rgba color = color_from_list(get_color(p, "color"));
  const int side = std::max(img.width, img.height);
  Raster out = filled(side, side, img.channels, color);
  const int ox = (side - img.width) / 2;
  const int oy = (side - img.height) / 2;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(ox + x, oy + y, c) = img.at(x, y, c);
  return out;
}

Raster op_resize(const Raster& img, const Params& p) {
  std::int64_t w = get_int(p, "width"), h = get_int(p, "height");
  if (w == -1) w = img.width;
  if (h == -1) h = img.height;
  if (w < 1 || h < 1) throw ValidationError("resize: dims must be >= 1");
  return resize_bilinear(img, static_cast<int>(w), static_cast<int>(h));
}

Raster op_scale(const Raster& img, const Params& p) {
  const double factor = get_float(p, "factor");
  return resize_bilinear(img, round_dim(img.width * factor),
                         round_dim(img.height * factor));
}

// Exact permutations for 90 degree multiples; positive degrees rotate
// counterclockwise and the canvas grows to the rotated bounding box.
Raster op_rotate(const Raster& img, const Params& p) {
  const double degrees = get_float(p, "degrees");
  const Rgba fill = color_from_list(get_color(p, "fill"));

  double turns = std::fmod(degrees, 360.0);
  if (turns < 0) turns += 360.0;
  if (turns == 0.0) return img;
  if (turns == 90.0 || turns == 180.0 || turns == 270.0) {
    const int w = img.width, h = img.height;
    Raster out(turns == 180.0 ? w : h, turns == 180.0 ? h : w, img.channels);
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x)
        for (int c = 0; c < img.channels; ++c) {
          int sx, sy;
          if (turns == 90.0) { sx = w - 1 - y; sy = x; }
          else if (turns == 180.0) { sx = w - 1 - x; sy = h - 1 - y; }
          else { sx = y; sy = h - 1 - x; }
          out.at(x, y, c) = img.at(sx, sy, c);
        }
    return out;
  }

  const double rad = turns * M_PI / 180.0;
  const double ac = std::abs(std::cos(rad)), as = std::abs(std::sin(rad));
  const int out_w = round_dim(img.width * ac + img.height * as);
  const int out_h = round_dim(img.width * as + img.height * ac);
  const double cxs = (img.width - 1) / 2.0, cys = (img.height - 1) / 2.0;
  const double cxd = (out_w - 1) / 2.0, cyd = (out_h - 1) / 2.0;
  const double c = std::cos(rad), s = std::sin(rad);

  Raster out(out_w, out_h, img.channels);
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x) {
      const double dx = x - cxd, dy = y - cyd;
      const double sx = cxs + c * dx - s * dy;
      const double sy = cys + s * dx + c * dy;
      put_pixel(out, x, y, sample_bilinear(img, sx, sy, fill));
    }
  return out;
}

Raster flip_h(const Raster& img) {
  Raster out(img.width, img.height, img.channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
  return out;
}

Raster flip_v(const Raster& img) {
  Raster out(img.width, img.height, img.channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(x, img.height - 1 - y, c);
  return out;
}

Raster op_skew(const Raster& img, const Params& p) {
  const double factor = get_float(p, "factor");
  if (factor == 0.0) return img;
  const Rgba fill = color_from_list(get_color(p, "fill"));
  const double cy = (img.height - 1) / 2.0;
  Raster out(img.width, img.height, img.channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      put_pixel(out, x, y,
                sample_bilinear(img, x - factor * (y - cy), y, fill));
  return out;
}

Raster op_change_aspect_ratio(const Raster& img, const Params& p) {
  const double ratio = get_float(p, "ratio");
  const double area = static_cast<double>(img.width) * img.height;
  const int new_w = round_dim(std::sqrt(area * ratio));
  const int new_h = round_dim(area / new_w);
  return resize_bilinear(img, new_w, new_h);
}

Raster op_pixelization(const Raster& img, const Params& p) {
  const double ratio = get_float(p, "ratio");
  if (ratio == 1.0) return img;
  const int small_w = round_dim(img.width * ratio);
  const int small_h = round_dim(img.height * ratio);
  return upscale_nearest(box_downscale(img, small_w, small_h), img.width,
                         img.height);
}

Raster op_clip_image_size(const Raster& img, const Params& p) {
  const std::int64_t min_res = get_int(p, "min_resolution");
  const std::int64_t max_res = get_int(p, "max_resolution");
  if (max_res < min_res)
    throw ValidationError("clip_image_size: max_resolution below min");
  const double area = static_cast<double>(img.width) * img.height;
  if (area < static_cast<double>(min_res)) {
    const double s = std::sqrt(static_cast<double>(min_res) / area);
    return resize_bilinear(img, static_cast<int>(std::ceil(img.width * s)),
                           static_cast<int>(std::ceil(img.height * s)));
  }
  if (area > static_cast<double>(max_res)) {
    const double s = std::sqrt(static_cast<double>(max_res) / area);
    return resize_bilinear(img,
                           std::max(1, static_cast<int>(img.width * s)),
                           std::max(1, static_cast<int>(img.height * s)));
  }
  return img;
}

// Corner displacements are drawn at resolve time so repeated applications
// (video frames) share one jitter; solving happens against the frame dims.
Raster op_perspective(const Raster& img, const Params& p, Rng& rng) {
  const double sigma = get_float(p, "sigma");
  const Rgba fill = color_from_list(get_color(p, "fill"));
  std::vector<double> offsets = get_list(p, "corner_offsets");
  if (offsets.empty() && sigma == 0.0) return img;
  if (!offsets.empty() && offsets.size() != 8)
    throw ValidationError("perspective_transform: corner_offsets needs 8 values");

  const double w = img.width - 1.0, h = img.height - 1.0;
  const std::array<double, 8> corners{0, 0, w, 0, w, h, 0, h};

  for (int attempt = 0;; ++attempt) {
    if (offsets.empty()) {
      offsets.resize(8);
      for (auto& o : offsets) o = rng.gaussian(0.0, sigma);
    }
    bool all_zero = true;
    for (double o : offsets) all_zero = all_zero && o == 0.0;
    if (all_zero) return img;

    std::array<double, 8> moved;
    for (int i = 0; i < 8; ++i) moved[i] = corners[i] + offsets[i];
    try {
      const Mat3 h_fwd = solve_homography(corners, moved);
      return warp_perspective(img, invert3(h_fwd), img.width, img.height,
                              fill);
    } catch (const ValidationError&) {
      if (attempt >= 8)
        throw ValidationError(
            "perspective_transform: degenerate corners after 8 redraws");
      offsets.clear();
    }
  }
}

double area_kept(const Params& p) {
  return (get_float(p, "x2") - get_float(p, "x1")) *
         (get_float(p, "y2") - get_float(p, "y1"));
}

double log2_saturated(double factor) {
  return std::min(std::abs(std::log2(factor)), 2.0) / 2.0 * 100.0;
}

const std::vector<double> kWhite{255, 255, 255};
const std::vector<double> kBlack{0, 0, 0};

}  // namespace

void register_geometry_ops(Registry<Raster>& reg) {
  reg.add({
      .name = "crop",
      .schema = {{"x1", ParamType::Float, false, 0.25, 0.0, 1.0},
                 {"y1", ParamType::Float, false, 0.25, 0.0, 1.0},
                 {"x2", ParamType::Float, false, 0.75, 0.0, 1.0},
                 {"y2", ParamType::Float, false, 0.75, 0.0, 1.0}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_crop(img, p);
      },
      .intensity = [](const Params& p) {
        return (1.0 - std::clamp(area_kept(p), 0.0, 1.0)) * 100.0;
      },
  });
  reg.add({
      .name = "pad",
      .schema = {{"w_factor", ParamType::Float, false, 0.25, 0.0, 10.0},
                 {"h_factor", ParamType::Float, false, 0.25, 0.0, 10.0},
                 {"color", ParamType::FloatList, false, kBlack}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_pad(img, p);
      },
      .intensity = [](const Params& p) {
        const double grow = (1.0 + 2.0 * get_float(p, "w_factor")) *
                            (1.0 + 2.0 * get_float(p, "h_factor"));
        return (1.0 - 1.0 / grow) * 100.0;
      },
  });
  reg.add({
      .name = "pad_square",
      .schema = {{"color", ParamType::FloatList, false, kBlack}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_pad_square(img, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "resize",
      .schema = {{"width", ParamType::Int, false, std::int64_t{-1}, -1.0,
                  65535.0},
                 {"height", ParamType::Int, false, std::int64_t{-1}, -1.0,
                  65535.0}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_resize(img, p);
      },
      .intensity = [](const Params& p) {
        return get_int(p, "width") == -1 && get_int(p, "height") == -1 ? 0.0
                                                                       : 100.0;
      },
  });
  reg.add({
      .name = "scale",
      .schema = {{"factor", ParamType::Float, false, 0.5, 0.01, 100.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.25, 4.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_scale(img, p);
      },
      .intensity = [](const Params& p) {
        return log2_saturated(get_float(p, "factor"));
      },
  });
  reg.add({
      .name = "rotate",
      .schema = {{"degrees", ParamType::Float, false, 90.0, -360.0, 360.0, {},
                  true},
                 {"fill", ParamType::FloatList, false, kWhite}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "degrees", -90.0, 90.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_rotate(img, p);
      },
      .intensity = [](const Params& p) {
        return std::min(std::abs(get_float(p, "degrees")), 180.0) / 180.0 *
               100.0;
      },
  });
  reg.add({
      .name = "hflip",
      .schema = {},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params&, Rng&) {
        return flip_h(img);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "vflip",
      .schema = {},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params&, Rng&) {
        return flip_v(img);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "skew",
      .schema = {{"factor", ParamType::Float, false, 0.5, -10.0, 10.0, {},
                  true},
                 {"fill", ParamType::FloatList, false, kWhite}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", -1.0, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_skew(img, p);
      },
      .intensity = [](const Params& p) {
        return std::min(std::abs(get_float(p, "factor")), 1.0) * 100.0;
      },
  });
  reg.add({
      .name = "change_aspect_ratio",
      .schema = {{"ratio", ParamType::Float, false, 1.0, 0.01, 100.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "ratio", 0.5, 2.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_change_aspect_ratio(img, p);
      },
      .intensity = [](const Params& p) {
        return log2_saturated(get_float(p, "ratio"));
      },
  });
  reg.add({
      .name = "pixelization",
      .schema = {{"ratio", ParamType::Float, false, 1.0, 1e-6, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "ratio", 0.05, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_pixelization(img, p);
      },
      .intensity = [](const Params& p) {
        return (1.0 - get_float(p, "ratio")) * 100.0;
      },
  });
  reg.add({
      .name = "clip_image_size",
      .schema = {{"min_resolution", ParamType::Int, false, std::int64_t{1},
                  1.0},
                 {"max_resolution", ParamType::Int, false,
                  std::int64_t{100000000}, 1.0}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_clip_image_size(img, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "perspective_transform",
      .schema = {{"sigma", ParamType::Float, false, 30.0, 0.0, 10000.0, {},
                  true},
                 {"fill", ParamType::FloatList, false, kWhite},
                 {"corner_offsets", ParamType::FloatList, false,
                  std::vector<double>{}}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "sigma", 0.0, 100.0, rng);
        // Eight gaussian corner displacements, drawn once per application.
        if (get_list(out, "corner_offsets").empty()) {
          const double sigma = get_float(out, "sigma");
          std::vector<double> offsets(8);
          for (auto& o : offsets) o = rng.gaussian(0.0, sigma);
          out["corner_offsets"] = std::move(offsets);
        }
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng& rng) {
        return op_perspective(img, p, rng);
      },
      .intensity = [](const Params& p) {
        return std::min(get_float(p, "sigma"), 100.0);
      },
  });
}

}  // namespace augkit::image
