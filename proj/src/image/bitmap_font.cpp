#include "augkit/image/bitmap_font.hpp"

#include <json.hpp>

#include "augkit/image/codecs.hpp"
#include "augkit/text/unicode.hpp"

namespace augkit::image {

BitmapFont BitmapFont::load(const std::string& png_path,
                            const std::string& json_path) {
  BitmapFont font;
  font.atlas_ = to_channels(load_png(png_path), 4);

  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_file(json_path));
  } catch (const nlohmann::json::exception& e) {
    throw AssetError("font metadata is not valid JSON: " +
                     std::string(e.what()));
  }
  font.line_height_ = meta.at("line_height").get<int>();
  font.ascent_ = meta.at("ascent").get<int>();
  font.advance_ = meta.at("advance").get<int>();
  for (const auto& [key, g] : meta.at("glyphs").items()) {
    const std::u32string cp = text::utf8_decode(key);
    if (cp.size() != 1) throw AssetError("font glyph key must be one char");
    Glyph glyph{g.at("x").get<int>(), g.at("y").get<int>(),
                g.at("w").get<int>(), g.at("h").get<int>(),
                g.at("advance").get<int>()};
    if (glyph.x < 0 || glyph.y < 0 || glyph.w < 1 || glyph.h < 1 ||
        glyph.x + glyph.w > font.atlas_.width ||
        glyph.y + glyph.h > font.atlas_.height)
      throw AssetError("font glyph rect escapes the atlas");
    font.glyphs_[cp[0]] = glyph;
  }
  // Printable ASCII coverage is a load-time invariant.
  for (char32_t c = 0x20; c < 0x7F; ++c)
    if (!font.glyphs_.count(c))
      throw AssetError("font atlas is missing a printable ASCII glyph");
  return font;
}

int BitmapFont::measure(const std::u32string& text) const {
  int w = 0;
  for (char32_t c : text) {
    auto it = glyphs_.find(c);
    w += it == glyphs_.end() ? advance_ : it->second.advance;
  }
  return w;
}

void BitmapFont::draw(Raster& dst, const std::u32string& text, int x, int y,
                      Rgba color, int scale) const {
  if (scale < 1) throw ValidationError("font scale must be >= 1");
  int pen = x;
  for (char32_t c : text) {
    auto it = glyphs_.find(c);
    if (it == glyphs_.end()) {
      // Hollow box for unknown characters.
      const int bw = advance_ * scale, bh = line_height_ * scale;
      for (int yy = 0; yy < bh; ++yy)
        for (int xx = 0; xx < bw; ++xx) {
          if (yy > scale && yy < bh - 1 - scale && xx > scale &&
              xx < bw - 1 - scale)
            continue;
          const int dx = pen + xx, dy = y + yy;
          if (dx < 0 || dy < 0 || dx >= dst.width || dy >= dst.height)
            continue;
          put_pixel(dst, dx, dy, color);
        }
      pen += advance_ * scale;
      continue;
    }
    const Glyph& g = it->second;
    for (int gy = 0; gy < g.h; ++gy)
      for (int gx = 0; gx < g.w; ++gx) {
        if (atlas_.at(g.x + gx, g.y + gy, 3) < 128) continue;
        for (int sy = 0; sy < scale; ++sy)
          for (int sx = 0; sx < scale; ++sx) {
            const int dx = pen + gx * scale + sx;
            const int dy = y + gy * scale + sy;
            if (dx < 0 || dy < 0 || dx >= dst.width || dy >= dst.height)
              continue;
            if (color.a == 255) {
              put_pixel(dst, dx, dy, color);
            } else {
              const Rgba base = pixel(dst, dx, dy);
              const double a = color.a / 255.0;
              put_pixel(dst, dx, dy,
                        {clamp_u8(base.r + a * (color.r - base.r)),
                         clamp_u8(base.g + a * (color.g - base.g)),
                         clamp_u8(base.b + a * (color.b - base.b)), base.a});
            }
          }
      }
    pen += g.advance * scale;
  }
}

}  // namespace augkit::image
