#include <algorithm>
#include <cmath>
#include <numeric>

#include "augkit/image/codecs.hpp"
#include "catalog_parts.hpp"

namespace augkit::image {

namespace {

Raster map_rgb(const Raster& img, auto&& fn) {
  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) = fn(img.at(x, y, c));
  return out;
}

double mean_luma(const Raster& img) {
  double sum = 0.0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      sum += luma601(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
  return sum / (static_cast<double>(img.width) * img.height);
}

Raster op_brightness(const Raster& img, double factor) {
  if (factor == 1.0) return img;
  return map_rgb(img, [factor](std::uint8_t v) { return clamp_u8(v * factor); });
}

Raster op_contrast(const Raster& img, double factor) {
  if (factor == 1.0) return img;
  const double pivot = mean_luma(img);
  return map_rgb(img, [factor, pivot](std::uint8_t v) {
    return clamp_u8(pivot + factor * (v - pivot));
  });
}

Raster op_saturation(const Raster& img, double factor) {
  if (factor == 1.0) return img;
  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const double l =
          luma601(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) = clamp_u8(l + factor * (img.at(x, y, c) - l));
    }
  return out;
}

Raster op_grayscale(const Raster& img) {
  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const std::uint8_t l =
          luma601(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
      out.at(x, y, 0) = l;
      out.at(x, y, 1) = l;
      out.at(x, y, 2) = l;
    }
  return out;
}

// Separable gaussian with sigma = radius, kernel clipped at 3 sigma,
// clamp-to-edge boundary. Filters all channels including alpha.
Raster op_blur(const Raster& img, double radius) {
  if (radius == 0.0) return img;
  const int half = std::max(1, static_cast<int>(std::ceil(3.0 * radius)));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double norm = 0.0;
  for (int i = -half; i <= half; ++i) {
    kernel[static_cast<std::size_t>(i + half)] =
        std::exp(-0.5 * (i / radius) * (i / radius));
    norm += kernel[static_cast<std::size_t>(i + half)];
  }
  for (auto& k : kernel) k /= norm;

  const int w = img.width, h = img.height, ch = img.channels;
  std::vector<double> tmp(static_cast<std::size_t>(w) * h * ch);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        double s = 0.0;
        for (int i = -half; i <= half; ++i)
          s += kernel[static_cast<std::size_t>(i + half)] *
               img.at(std::clamp(x + i, 0, w - 1), y, c);
        tmp[(static_cast<std::size_t>(y) * w + x) * ch + c] = s;
      }
  Raster out(w, h, ch);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        double s = 0.0;
        for (int i = -half; i <= half; ++i) {
          const int yy = std::clamp(y + i, 0, h - 1);
          s += kernel[static_cast<std::size_t>(i + half)] *
               tmp[(static_cast<std::size_t>(yy) * w + x) * ch + c];
        }
        out.at(x, y, c) = clamp_u8(s);
      }
  return out;
}

struct NamedKernel {
  const char* name;
  double coeffs[9];
  double scale;
  double offset;
};

// Fixed 3x3 set; "identity" short-circuits in the op.
const NamedKernel kKernels[] = {
    {"sharpen", {-2, -2, -2, -2, 32, -2, -2, -2, -2}, 16, 0},
    {"smooth", {1, 1, 1, 1, 5, 1, 1, 1, 1}, 13, 0},
    {"edge_enhance", {-1, -1, -1, -1, 10, -1, -1, -1, -1}, 2, 0},
    {"emboss", {-1, 0, 0, 0, 1, 0, 0, 0, 0}, 1, 128},
    {"edge_detect", {-1, -1, -1, -1, 8, -1, -1, -1, -1}, 1, 0},
    {"box_blur", {1, 1, 1, 1, 1, 1, 1, 1, 1}, 9, 0},
};

Raster convolve3(const Raster& img, const NamedKernel& k) {
  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx)
            s += k.coeffs[(dy + 1) * 3 + dx + 1] *
                 img.at(std::clamp(x + dx, 0, img.width - 1),
                        std::clamp(y + dy, 0, img.height - 1), c);
        out.at(x, y, c) = clamp_u8(s / k.scale + k.offset);
      }
  return out;
}

Raster op_sharpen(const Raster& img, double factor) {
  if (factor == 1.0) return img;
  const Raster smooth = convolve3(img, kKernels[1]);
  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) = clamp_u8(
            smooth.at(x, y, c) +
            factor * (double(img.at(x, y, c)) - smooth.at(x, y, c)));
  return out;
}

Raster op_shuffle_pixels(const Raster& img, double factor, Rng& rng) {
  if (factor == 0.0) return img;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  const std::size_t k =
      std::min(n, static_cast<std::size_t>(std::llround(factor * double(n))));
  if (k < 2) return img;

  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(i),
                        static_cast<std::int64_t>(n) - 1));
    std::swap(idx[i], idx[j]);
  }

  Raster out = img;
  const int ch = img.channels;
  auto pixel_bytes = [&](const Raster& r, std::uint32_t flat) {
    return r.pixels.data() + static_cast<std::size_t>(flat) * ch;
  };
  // Contents of the chosen pixels are cyclically permuted via a shuffle of
  // the chosen slots.
  std::vector<std::uint32_t> dest(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::uint32_t> src = dest;
  for (std::size_t i = k - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(src[i], src[j]);
  }
  for (std::size_t i = 0; i < k; ++i)
    std::copy_n(pixel_bytes(img, src[i]), ch, out.pixels.data() +
                                                  static_cast<std::size_t>(dest[i]) * ch);
  return out;
}

Raster op_encoding_quality(const Raster& img, int quality) {
  const auto bytes = encode_jpeg(img, quality);
  return decode_jpeg(bytes.data(), bytes.size());
}

Raster op_opacity(const Raster& img, double level) {
  if (level == 1.0) return img;
  Raster out = to_channels(img, 4);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      out.at(x, y, 3) = clamp_u8(out.at(x, y, 3) * level);
  return out;
}

Raster op_convert_color(const Raster& img, const std::string& mode) {
  if (mode == "rgb") return to_channels(img, 3);
  if (mode == "rgba") return to_channels(img, 4);
  return op_grayscale(img);  // "grayscale": channel-equal luma, count kept
}

Raster op_masked_composite(const Raster& img, const Params& p) {
  const std::string& overlay_path = get_string(p, "overlay_path");
  const std::string& mask_path = get_string(p, "mask_path");
  if (overlay_path.empty() || mask_path.empty()) return img;
  const Raster overlay =
      resize_bilinear(to_channels(load_image(overlay_path), 4), img.width,
                      img.height);
  const Raster mask =
      resize_bilinear(load_image(mask_path), img.width, img.height);

  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const double m =
          luma601(mask.at(x, y, 0), mask.at(x, y, 1), mask.at(x, y, 2)) /
          255.0 * (overlay.at(x, y, 3) / 255.0);
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) =
            clamp_u8(img.at(x, y, c) +
                     m * (double(overlay.at(x, y, c)) - img.at(x, y, c)));
    }
  return out;
}

// Additive gaussian noise on the [0,1] sample scale, color channels only.
Raster op_random_noise(const Raster& img, double mean, double var, Rng& rng) {
  if (mean == 0.0 && var == 0.0) return img;
  const double sd = std::sqrt(var);
  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) {
        const double v = img.at(x, y, c) / 255.0 + rng.gaussian(mean, sd);
        out.at(x, y, c) = clamp_u8(std::clamp(v, 0.0, 1.0) * 255.0);
      }
  return out;
}

double factor_intensity(const Params& p, const char* name) {
  return std::min(std::abs(get_float(p, name) - 1.0), 1.0) * 100.0;
}

}  // namespace

void register_color_ops(Registry<Raster>& reg) {
  const ParamDef factor_def{"factor", ParamType::Float, false, 1.0,
                            0.0,      100.0,            {},    true};
  reg.add({
      .name = "brightness",
      .schema = {factor_def},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.1, 1.9, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_brightness(img, get_float(p, "factor"));
      },
      .intensity = [](const Params& p) { return factor_intensity(p, "factor"); },
  });
  reg.add({
      .name = "contrast",
      .schema = {factor_def},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.1, 1.9, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_contrast(img, get_float(p, "factor"));
      },
      .intensity = [](const Params& p) { return factor_intensity(p, "factor"); },
  });
  reg.add({
      .name = "saturation",
      .schema = {factor_def},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.0, 2.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_saturation(img, get_float(p, "factor"));
      },
      .intensity = [](const Params& p) { return factor_intensity(p, "factor"); },
  });
  reg.add({
      .name = "grayscale",
      .schema = {},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params&, Rng&) {
        return op_grayscale(img);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "color_jitter",
      .schema = {{"brightness_factor", ParamType::Float, false, 1.0, 0.0,
                  100.0, {}, true},
                 {"contrast_factor", ParamType::Float, false, 1.0, 0.0, 100.0,
                  {}, true},
                 {"saturation_factor", ParamType::Float, false, 1.0, 0.0,
                  100.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "brightness_factor", 0.1, 1.9, rng);
        resolve_random_float(out, "contrast_factor", 0.1, 1.9, rng);
        resolve_random_float(out, "saturation_factor", 0.0, 2.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        // Fixed order: brightness, then contrast, then saturation.
        return op_saturation(
            op_contrast(op_brightness(img, get_float(p, "brightness_factor")),
                        get_float(p, "contrast_factor")),
            get_float(p, "saturation_factor"));
      },
      .intensity = [](const Params& p) {
        return std::max({factor_intensity(p, "brightness_factor"),
                         factor_intensity(p, "contrast_factor"),
                         factor_intensity(p, "saturation_factor")});
      },
  });
  reg.add({
      .name = "blur",
      .schema = {{"radius", ParamType::Float, false, 2.0, 0.0, 100.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "radius", 0.0, 10.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_blur(img, get_float(p, "radius"));
      },
      .intensity = [](const Params& p) {
        return std::min(get_float(p, "radius"), 10.0) / 10.0 * 100.0;
      },
  });
  reg.add({
      .name = "sharpen",
      .schema = {{"factor", ParamType::Float, false, 2.0, 0.0, 100.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.0, 8.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_sharpen(img, get_float(p, "factor"));
      },
      .intensity = [](const Params& p) {
        return std::min(std::abs(get_float(p, "factor") - 1.0), 7.0) / 7.0 *
               100.0;
      },
  });
  reg.add({
      .name = "shuffle_pixels",
      .schema = {{"factor", ParamType::Float, false, 1.0, 0.0, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng& rng) {
        return op_shuffle_pixels(img, get_float(p, "factor"), rng);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "factor") * 100.0;
      },
  });
  reg.add({
      .name = "encoding_quality",
      .schema = {{"quality", ParamType::Int, false, std::int64_t{50}, 1.0,
                  100.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        auto it = out.find("quality");
        if (it != out.end() && is_random_marker(it->second))
          it->second = rng.uniform_int(1, 100);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_encoding_quality(img,
                                   static_cast<int>(get_int(p, "quality")));
      },
      .intensity = [](const Params& p) {
        return 100.0 - static_cast<double>(get_int(p, "quality"));
      },
  });
  reg.add({
      .name = "opacity",
      .schema = {{"level", ParamType::Float, false, 1.0, 0.0, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "level", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_opacity(img, get_float(p, "level"));
      },
      .intensity = [](const Params& p) {
        return (1.0 - get_float(p, "level")) * 100.0;
      },
  });
  reg.add({
      .name = "convert_color",
      .schema = {{"mode", ParamType::String, false, std::string{"rgb"}, {}, {},
                  {"rgb", "rgba", "grayscale"}}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_convert_color(img, get_string(p, "mode"));
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "masked_composite",
      .schema = {{"overlay_path", ParamType::String, false, std::string{}},
                 {"mask_path", ParamType::String, false, std::string{}}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_masked_composite(img, p);
      },
      .intensity = [](const Params& p) {
        return get_string(p, "overlay_path").empty() ||
                       get_string(p, "mask_path").empty()
                   ? 0.0
                   : 100.0;
      },
  });
  reg.add({
      .name = "apply_filter_kernel",
      .schema = {{"kernel", ParamType::String, false, std::string{"sharpen"},
                  {}, {},
                  {"identity", "sharpen", "smooth", "edge_enhance", "emboss",
                   "edge_detect", "box_blur"}}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        const std::string& name = get_string(p, "kernel");
        if (name == "identity") return img;
        for (const auto& k : kKernels)
          if (name == k.name) return convolve3(img, k);
        throw ValidationError("apply_filter_kernel: unknown kernel " + name);
      },
      .intensity = [](const Params& p) {
        return get_string(p, "kernel") == "identity" ? 0.0 : 100.0;
      },
  });
  reg.add({
      .name = "random_noise",
      .schema = {{"mean", ParamType::Float, false, 0.0, -1.0, 1.0},
                 {"var", ParamType::Float, false, 0.01, 0.0, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "var", 0.0, 0.1, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng& rng) {
        return op_random_noise(img, get_float(p, "mean"), get_float(p, "var"),
                               rng);
      },
      .intensity = [](const Params& p) {
        return std::min(std::sqrt(get_float(p, "var")), 0.5) / 0.5 * 100.0;
      },
  });
  reg.add({
      .name = "apply_lambda",
      .schema = {{"name", ParamType::String, false, std::string{"identity"}}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return find_image_lambda(get_string(p, "name"))(img);
      },
      .intensity = [](const Params& p) {
        return get_string(p, "name") == "identity" ? 0.0 : 100.0;
      },
  });
}

}  // namespace augkit::image
