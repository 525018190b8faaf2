#include "augkit/image/raster.hpp"

#include <algorithm>
#include <cmath>

namespace augkit::image {

Rgba color_from_list(const std::vector<double>& rgb) {
  Rgba c;
  c.r = clamp_u8(rgb.size() > 0 ? rgb[0] : 0.0);
  c.g = clamp_u8(rgb.size() > 1 ? rgb[1] : 0.0);
  c.b = clamp_u8(rgb.size() > 2 ? rgb[2] : 0.0);
  c.a = rgb.size() > 3 ? clamp_u8(rgb[3]) : 255;
  return c;
}

Raster filled(int w, int h, int channels, Rgba color) {
  Raster out(w, h, channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) put_pixel(out, x, y, color);
  return out;
}

Rgba pixel(const Raster& img, int x, int y) {
  Rgba c;
  c.r = img.at(x, y, 0);
  c.g = img.at(x, y, 1);
  c.b = img.at(x, y, 2);
  c.a = img.channels == 4 ? img.at(x, y, 3) : 255;
  return c;
}

void put_pixel(Raster& img, int x, int y, Rgba c) {
  img.at(x, y, 0) = c.r;
  img.at(x, y, 1) = c.g;
  img.at(x, y, 2) = c.b;
  if (img.channels == 4) img.at(x, y, 3) = c.a;
}

Rgba sample_bilinear(const Raster& img, double x, double y, Rgba fill) {
  if (x < -0.5 || y < -0.5 || x > img.width - 0.5 || y > img.height - 0.5)
    return fill;
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;

  auto tap = [&](int px, int py) -> Rgba {
    px = std::clamp(px, 0, img.width - 1);
    py = std::clamp(py, 0, img.height - 1);
    return pixel(img, px, py);
  };
  const Rgba p00 = tap(x0, y0), p10 = tap(x0 + 1, y0);
  const Rgba p01 = tap(x0, y0 + 1), p11 = tap(x0 + 1, y0 + 1);

  auto lerp2 = [&](std::uint8_t a, std::uint8_t b, std::uint8_t c,
                   std::uint8_t d) {
    const double top = a + (b - a) * fx;
    const double bot = c + (d - c) * fx;
    return clamp_u8(top + (bot - top) * fy);
  };
  Rgba out;
  out.r = lerp2(p00.r, p10.r, p01.r, p11.r);
  out.g = lerp2(p00.g, p10.g, p01.g, p11.g);
  out.b = lerp2(p00.b, p10.b, p01.b, p11.b);
  out.a = lerp2(p00.a, p10.a, p01.a, p11.a);
  return out;
}

void composite_over(Raster& dst, const Raster& src, int dst_x, int dst_y,
                    double opacity) {
  const int x_begin = std::max(0, dst_x);
  const int y_begin = std::max(0, dst_y);
  const int x_end = std::min(dst.width, dst_x + src.width);
  const int y_end = std::min(dst.height, dst_y + src.height);
  for (int y = y_begin; y < y_end; ++y) {
    for (int x = x_begin; x < x_end; ++x) {
      const Rgba s = pixel(src, x - dst_x, y - dst_y);
      const double alpha = (s.a / 255.0) * opacity;
      if (alpha <= 0.0) continue;
      Rgba d = pixel(dst, x, y);
      d.r = clamp_u8(s.r * alpha + d.r * (1.0 - alpha));
      d.g = clamp_u8(s.g * alpha + d.g * (1.0 - alpha));
      d.b = clamp_u8(s.b * alpha + d.b * (1.0 - alpha));
      if (dst.channels == 4)
        d.a = clamp_u8(255.0 * alpha + d.a * (1.0 - alpha));
      put_pixel(dst, x, y, d);
    }
  }
}

Raster to_channels(const Raster& img, int channels) {
  if (img.channels == channels) return img;
  Raster out(img.width, img.height, channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) put_pixel(out, x, y, pixel(img, x, y));
  return out;
}

Raster resize_bilinear(const Raster& img, int new_w, int new_h) {
  if (new_w < 1 || new_h < 1)
    throw ValidationError("resize target must be >= 1 pixel per axis");
  if (new_w == img.width && new_h == img.height) return img;
  Raster out(new_w, new_h, img.channels);
  const double sx = static_cast<double>(img.width) / new_w;
  const double sy = static_cast<double>(img.height) / new_h;
  for (int y = 0; y < new_h; ++y) {
    const double src_y = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < new_w; ++x) {
      const double src_x = (x + 0.5) * sx - 0.5;
      put_pixel(out, x, y, sample_bilinear(img, src_x, src_y, Rgba{}));
    }
  }
  return out;
}

Raster box_downscale(const Raster& img, int new_w, int new_h) {
  if (new_w < 1 || new_h < 1)
    throw ValidationError("downscale target must be >= 1 pixel per axis");
  Raster out(new_w, new_h, img.channels);
  const double sx = static_cast<double>(img.width) / new_w;
  const double sy = static_cast<double>(img.height) / new_h;
  for (int y = 0; y < new_h; ++y) {
    const double y0 = y * sy, y1 = (y + 1) * sy;
    for (int x = 0; x < new_w; ++x) {
      const double x0 = x * sx, x1 = (x + 1) * sx;
      double acc[4] = {0, 0, 0, 0};
      double area = 0.0;
      for (int py = static_cast<int>(std::floor(y0));
           py < static_cast<int>(std::ceil(y1)); ++py) {
        const double hy = std::min<double>(y1, py + 1) - std::max<double>(y0, py);
        if (hy <= 0) continue;
        for (int px = static_cast<int>(std::floor(x0));
             px < static_cast<int>(std::ceil(x1)); ++px) {
          const double wx =
              std::min<double>(x1, px + 1) - std::max<double>(x0, px);
          if (wx <= 0) continue;
          const double w = wx * hy;
          for (int c = 0; c < img.channels; ++c)
            acc[c] += w * img.at(std::min(px, img.width - 1),
                                 std::min(py, img.height - 1), c);
          area += w;
        }
      }
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = clamp_u8(acc[c] / area);
    }
  }
  return out;
}

Raster upscale_nearest(const Raster& img, int new_w, int new_h) {
  Raster out(new_w, new_h, img.channels);
  for (int y = 0; y < new_h; ++y) {
    const int sy = std::min(img.height - 1,
                            static_cast<int>(static_cast<std::int64_t>(y) *
                                             img.height / new_h));
    for (int x = 0; x < new_w; ++x) {
      const int sx = std::min(img.width - 1,
                              static_cast<int>(static_cast<std::int64_t>(x) *
                                               img.width / new_w));
      put_pixel(out, x, y, pixel(img, sx, sy));
    }
  }
  return out;
}

Raster fit_letterbox(const Raster& img, int box_w, int box_h, Rgba fill) {
  const double scale = std::min(static_cast<double>(box_w) / img.width,
                                static_cast<double>(box_h) / img.height);
  const int fit_w = std::max(1, static_cast<int>(std::lround(img.width * scale)));
  const int fit_h = std::max(1, static_cast<int>(std::lround(img.height * scale)));
  Raster out = filled(box_w, box_h, img.channels, fill);
  Raster scaled = resize_bilinear(img, fit_w, fit_h);
  composite_over(out, scaled, (box_w - fit_w) / 2, (box_h - fit_h) / 2);
  return out;
}

Shape shape_of(const Raster& img) {
  return Shape{"image",
               {{"width", static_cast<double>(img.width)},
                {"height", static_cast<double>(img.height)},
                {"channels", static_cast<double>(img.channels)}}};
}

}  // namespace augkit::image
