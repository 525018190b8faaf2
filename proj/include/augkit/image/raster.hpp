#pragma once

#include <cstdint>
#include <vector>

#include "augkit/core/metadata.hpp"
#include "augkit/errors.hpp"

namespace augkit::image {

// In-memory 8-bit image, row major, 3 (RGB) or 4 (RGBA) channels.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> pixels;

  Raster() = default;
  Raster(int w, int h, int c)
      : width(w), height(h), channels(c),
        pixels(static_cast<std::size_t>(w) * h * c, 0) {
    check();
  }

  void check() const {
    if (width < 1 || height < 1)
      throw ValidationError("raster dimensions must be >= 1");
    if (channels != 3 && channels != 4)
      throw ValidationError("raster must have 3 or 4 channels");
    if (pixels.size() != static_cast<std::size_t>(width) * height * channels)
      throw ValidationError("raster buffer length does not match dimensions");
  }

  std::uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool operator==(const Raster&) const = default;
};

struct Rgba {
  std::uint8_t r = 0, g = 0, b = 0, a = 255;
};

Rgba color_from_list(const std::vector<double>& rgb);

Raster filled(int w, int h, int channels, Rgba color);

// Bilinear sample at a continuous source position; pixel centers sit at
// integer coordinates. Out-of-bounds reads return `fill`.
Rgba sample_bilinear(const Raster& img, double x, double y, Rgba fill);

Rgba pixel(const Raster& img, int x, int y);
void put_pixel(Raster& img, int x, int y, Rgba c);

// Source-over composite of src at (dst_x, dst_y); per-pixel alpha times
// `opacity`. Pixels outside the blit rectangle are untouched.
void composite_over(Raster& dst, const Raster& src, int dst_x, int dst_y,
                    double opacity = 1.0);

Raster to_channels(const Raster& img, int channels);

// Bilinear resample to new dimensions (same-size call is bit exact).
Raster resize_bilinear(const Raster& img, int new_w, int new_h);

// Area-average downscale; expects new dims <= old dims.
Raster box_downscale(const Raster& img, int new_w, int new_h);

Raster upscale_nearest(const Raster& img, int new_w, int new_h);

// Aspect-preserving fit into (box_w, box_h), letterboxed with `fill`.
Raster fit_letterbox(const Raster& img, int box_w, int box_h, Rgba fill);

// Rec.601 integer luma; exact fixed point so grayscale is idempotent.
inline std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

inline std::uint8_t clamp_u8(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(v + 0.5);
}

Shape shape_of(const Raster& img);

}  // namespace augkit::image
