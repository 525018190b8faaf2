#pragma once

#include <map>
#include <string>

#include "augkit/image/raster.hpp"

namespace augkit::image {

// Monospace glyph atlas with hard (1-bit) alpha; rendering is integer-scaled
// so output pixels are deterministic.
class BitmapFont {
 public:
  struct Glyph {
    int x = 0, y = 0, w = 0, h = 0, advance = 0;
  };

  static BitmapFont load(const std::string& png_path,
                         const std::string& json_path);

  int line_height() const { return line_height_; }
  int advance() const { return advance_; }
  bool has(char32_t c) const { return glyphs_.count(c) != 0; }

  // Width in pixels of one line at scale 1; unknown characters take one
  // advance (they render as a hollow box).
  int measure(const std::u32string& text) const;

  // Draws one line with its top-left corner at (x, y). color.a scales the
  // glyph alpha.
  void draw(Raster& dst, const std::u32string& text, int x, int y, Rgba color,
            int scale) const;

 private:
  Raster atlas_;
  std::map<char32_t, Glyph> glyphs_;
  int line_height_ = 0;
  int ascent_ = 0;
  int advance_ = 0;
};

}  // namespace augkit::image
