#include <algorithm>
#include <cmath>
#include <utility>

#include "augkit/assets.hpp"
#include "augkit/image/codecs.hpp"
#include "augkit/text/unicode.hpp"
#include "catalog_parts.hpp"

namespace augkit::image {

namespace {

const std::vector<double> kWhite{255, 255, 255};
const std::vector<double> kBlack{0, 0, 0};
const std::vector<double> kRed{255, 0, 0};

// Top-left corner that keeps an overlay of size `inner` fully inside `outer`
// for positions in [0, 1].
int placed_origin(int outer, int inner, double pos) {
  return static_cast<int>(std::lround(pos * (outer - inner)));
}

Raster load_overlay_source(const std::string& path,
                           const std::string& fallback_stock) {
  if (path.empty())
    return to_channels(AssetStore::instance().stock_image(fallback_stock), 4);
  return to_channels(load_image(path), 4);
}

// Aspect-preserving resize so the sprite fits a box; no letterbox bars.
Raster fit_sprite(const Raster& img, int box_w, int box_h) {
  const double s = std::min(box_w / static_cast<double>(img.width),
                            box_h / static_cast<double>(img.height));
  const int nw = std::max(1, static_cast<int>(std::lround(img.width * s)));
  const int nh = std::max(1, static_cast<int>(std::lround(img.height * s)));
  return resize_bilinear(img, nw, nh);
}

std::vector<std::u32string> wrap_words(const BitmapFont& font,
                                       const std::u32string& text, int scale,
                                       int max_w) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t c : text) {
    if (c == U' ' || c == U'\n' || c == U'\t') {
      if (!cur.empty()) words.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(cur);

  const auto width = [&](const std::u32string& s) {
    return font.measure(s) * scale;
  };
  std::vector<std::u32string> lines;
  std::u32string line;
  for (const auto& word : words) {
    std::u32string joined = line.empty() ? word : line + U' ' + word;
    if (width(joined) <= max_w) {
      line = std::move(joined);
      continue;
    }
    if (!line.empty()) lines.push_back(std::exchange(line, {}));
    // Hard-break words that alone exceed the line.
    std::u32string piece;
    for (char32_t c : word) {
      if (!piece.empty() && width(piece + c) > max_w)
        lines.push_back(std::exchange(piece, {}));
      piece.push_back(c);
    }
    line = std::move(piece);
  }
  if (!line.empty()) lines.push_back(line);
  return lines;
}

Raster op_meme(const Raster& img, const Params& p) {
  const int cap = static_cast<int>(get_int(p, "caption_height"));
  const std::string text_utf8 = get_string(p, "text");
  if (text_utf8.empty()) throw ValidationError("meme_format: text is empty");
  const Rgba bg = color_from_list(get_color(p, "meme_bg_color"));
  const Rgba fg = color_from_list(get_color(p, "text_color"));
  const std::u32string text = text::utf8_decode(text_utf8);
  const BitmapFont& font = AssetStore::instance().font();

  const int margin = 2;
  const int avail_w = img.width - 2 * margin;
  const int avail_h = cap - 2 * margin;
  if (avail_h < font.line_height() || avail_w < font.advance())
    throw ValidationError(
        "meme_format: caption too small for a single text row");

  // Largest scale whose word-wrapped block fits the caption.
  std::vector<std::u32string> lines;
  int scale = 1;
  for (int s = std::max(1, avail_h / font.line_height()); s >= 1; --s) {
    auto wrapped = wrap_words(font, text, s, avail_w);
    int widest = 0;
    for (const auto& l : wrapped) widest = std::max(widest, font.measure(l) * s);
    const int block_h = static_cast<int>(wrapped.size()) * font.line_height() * s;
    if (widest <= avail_w && (block_h <= avail_h || s == 1)) {
      lines = std::move(wrapped);
      scale = s;
      break;
    }
  }
  // At scale 1 an overlong text is clipped to the rows that fit.
  const int max_lines = std::max(1, avail_h / (font.line_height() * scale));
  if (static_cast<int>(lines.size()) > max_lines) lines.resize(max_lines);

  Raster out = filled(img.width, img.height + cap, img.channels, bg);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, cap + y, c) = img.at(x, y, c);

  const int block_h = static_cast<int>(lines.size()) * font.line_height() * scale;
  int pen_y = margin + (avail_h - block_h) / 2;
  for (const auto& line : lines) {
    const int pen_x = margin + (avail_w - font.measure(line) * scale) / 2;
    font.draw(out, line, pen_x, pen_y, {fg.r, fg.g, fg.b, 255}, scale);
    pen_y += font.line_height() * scale;
  }
  return out;
}

Raster op_overlay_text(const Raster& img, const Params& p) {
  const std::string text_utf8 = get_string(p, "text");
  if (text_utf8.empty()) throw ValidationError("overlay_text: text is empty");
  const double font_size = get_float(p, "font_size");
  const double opacity = get_float(p, "opacity");
  Rgba color = color_from_list(get_color(p, "color"));
  color.a = clamp_u8(opacity * 255.0);
  const std::u32string text = text::utf8_decode(text_utf8);
  const BitmapFont& font = AssetStore::instance().font();

  Raster out = img;
  if (color.a == 0) return out;
  const int scale = std::max(
      1, static_cast<int>(font_size * img.height / font.line_height()));
  const int tw = font.measure(text) * scale;
  const int th = font.line_height() * scale;
  const int x = placed_origin(img.width, tw, get_float(p, "x_pos"));
  const int y = placed_origin(img.height, th, get_float(p, "y_pos"));
  font.draw(out, text, x, y, color, scale);
  return out;
}

Raster op_overlay_emoji(const Raster& img, const Params& p) {
  const Raster& sprite = AssetStore::instance().emoji(get_string(p, "emoji"));
  const double size = get_float(p, "emoji_size");
  const int side = std::max(1, static_cast<int>(std::lround(size * img.height)));
  Raster scaled = fit_sprite(sprite, side, side);
  Raster out = img;
  composite_over(out, scaled, placed_origin(img.width, scaled.width,
                                            get_float(p, "x_pos")),
                 placed_origin(img.height, scaled.height, get_float(p, "y_pos")),
                 get_float(p, "opacity"));
  return out;
}

Raster op_overlay_image(const Raster& img, const Params& p) {
  const Raster sprite =
      load_overlay_source(get_string(p, "overlay_path"), "overlay_logo");
  const double size = get_float(p, "overlay_size");
  const int box_h = std::max(1, static_cast<int>(std::lround(size * img.height)));
  const int box_w =
      std::max(1, static_cast<int>(std::lround(
                      box_h * sprite.width / static_cast<double>(sprite.height))));
  Raster scaled = resize_bilinear(sprite, box_w, box_h);
  Raster out = img;
  composite_over(out, scaled,
                 placed_origin(img.width, scaled.width, get_float(p, "x_pos")),
                 placed_origin(img.height, scaled.height, get_float(p, "y_pos")),
                 get_float(p, "opacity"));
  return out;
}

Raster op_overlay_onto_background(const Raster& img, const Params& p) {
  const std::string path = get_string(p, "background_path");
  Raster out = to_channels(
      path.empty() ? AssetStore::instance().stock_image("background_landscape")
                   : load_image(path),
      img.channels);
  const double scale = get_float(p, "scale");
  const int box_w = std::max(1, static_cast<int>(std::lround(scale * out.width)));
  const int box_h = std::max(1, static_cast<int>(std::lround(scale * out.height)));
  Raster fg = fit_sprite(img, box_w, box_h);
  const int x = placed_origin(out.width, fg.width, get_float(p, "x_pos"));
  const int y = placed_origin(out.height, fg.height, get_float(p, "y_pos"));
  composite_over(out, fg, x, y);
  return out;
}

Raster op_overlay_onto_screenshot(const Raster& img, const Params& p) {
  const auto& tpl =
      AssetStore::instance().screenshot_template(get_string(p, "template_id"));
  Raster out = tpl.img;
  Raster content = to_channels(
      fit_letterbox(img, tpl.content_w, tpl.content_h, {0, 0, 0, 255}),
      out.channels);
  for (int y = 0; y < content.height; ++y)
    for (int x = 0; x < content.width; ++x)
      for (int c = 0; c < out.channels; ++c)
        out.at(tpl.content_x + x, tpl.content_y + y, c) = content.at(x, y, c);
  return out;
}

Raster op_overlay_stripes(const Raster& img, const Params& p) {
  const double opacity = get_float(p, "line_opacity");
  if (opacity == 0.0) return img;
  const Rgba color = color_from_list(get_color(p, "line_color"));
  const double min_dim = std::min(img.width, img.height);
  const double width_px = std::max(1.0, get_float(p, "line_width") * min_dim);
  const double gap_px = std::max(0.0, get_float(p, "line_gap") * min_dim);
  const double period = width_px + gap_px;
  const double theta = get_float(p, "line_angle") * std::acos(-1.0) / 180.0;
  const double nx = -std::sin(theta), ny = std::cos(theta);

  Raster out = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const double t = nx * x + ny * y;
      const double frac = t - std::floor(t / period) * period;
      if (frac >= width_px) continue;
      const Rgba base = pixel(out, x, y);
      put_pixel(out, x, y,
                {clamp_u8(base.r + opacity * (color.r - base.r)),
                 clamp_u8(base.g + opacity * (color.g - base.g)),
                 clamp_u8(base.b + opacity * (color.b - base.b)), base.a});
    }
  return out;
}

double overlay_size_intensity(const Params& p, const std::string& name) {
  const double size = std::clamp(get_float(p, name), 0.0, 1.0);
  return size * size * 100.0;
}

}  // namespace

void register_overlay_ops(Registry<Raster>& reg) {
  reg.add({
      .name = "meme_format",
      .schema = {{"text", ParamType::String, false, std::string("LOL")},
                 {"caption_height", ParamType::Int, false, std::int64_t{75},
                  1.0, 65535.0},
                 {"meme_bg_color", ParamType::FloatList, false, kBlack},
                 {"text_color", ParamType::FloatList, false, kWhite}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_meme(img, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "overlay_emoji",
      .schema = {{"emoji", ParamType::String, false, std::string("smiley"), {},
                  {}, {}, true},
                 {"emoji_size", ParamType::Float, false, 0.15, 0.0, 1.0, {},
                  true},
                 {"x_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true},
                 {"y_pos", ParamType::Float, false, 0.8, 0.0, 1.0, {}, true},
                 {"opacity", ParamType::Float, false, 1.0, 0.0, 1.0}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        if (auto it = out.find("emoji");
            it != out.end() && is_random_marker(it->second)) {
          const auto names = AssetStore::instance().emoji_names();
          if (names.empty()) throw AssetError("no emoji assets found");
          it->second = names[rng.choice(names.size())];
        }
        resolve_random_float(out, "emoji_size", 0.05, 0.4, rng);
        resolve_random_float(out, "x_pos", 0.0, 1.0, rng);
        resolve_random_float(out, "y_pos", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_overlay_emoji(img, p);
      },
      .intensity = [](const Params& p) {
        return overlay_size_intensity(p, "emoji_size");
      },
  });
  reg.add({
      .name = "overlay_image",
      .schema = {{"overlay_path", ParamType::String, false, std::string()},
                 {"overlay_size", ParamType::Float, false, 0.3, 0.0, 1.0, {},
                  true},
                 {"x_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true},
                 {"y_pos", ParamType::Float, false, 0.4, 0.0, 1.0, {}, true},
                 {"opacity", ParamType::Float, false, 1.0, 0.0, 1.0}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "overlay_size", 0.05, 0.6, rng);
        resolve_random_float(out, "x_pos", 0.0, 1.0, rng);
        resolve_random_float(out, "y_pos", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_overlay_image(img, p);
      },
      .intensity = [](const Params& p) {
        return overlay_size_intensity(p, "overlay_size");
      },
  });
  reg.add({
      .name = "overlay_onto_background_image",
      .schema = {{"background_path", ParamType::String, false, std::string()},
                 {"scale", ParamType::Float, false, 0.5, 0.0, 1.0, {}, true},
                 {"x_pos", ParamType::Float, false, 0.25, 0.0, 1.0, {}, true},
                 {"y_pos", ParamType::Float, false, 0.25, 0.0, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "scale", 0.2, 0.8, rng);
        resolve_random_float(out, "x_pos", 0.0, 1.0, rng);
        resolve_random_float(out, "y_pos", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_overlay_onto_background(img, p);
      },
      .intensity = [](const Params& p) {
        const double scale = std::clamp(get_float(p, "scale"), 0.0, 1.0);
        return (1.0 - scale * scale) * 100.0;
      },
  });
  reg.add({
      .name = "overlay_onto_screenshot",
      .schema = {{"template_id", ParamType::String, false,
                  std::string("mobile_feed")}},
      .resolve = nullptr,
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_overlay_onto_screenshot(img, p);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "overlay_stripes",
      .schema = {{"line_angle", ParamType::Float, false, 0.0, -360.0, 360.0,
                  {}, true},
                 {"line_width", ParamType::Float, false, 0.05, 0.0, 1.0, {},
                  true},
                 {"line_gap", ParamType::Float, false, 0.15, 0.0, 10.0, {},
                  true},
                 {"line_color", ParamType::FloatList, false, kBlack},
                 {"line_opacity", ParamType::Float, false, 1.0, 0.0, 1.0}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "line_angle", -90.0, 90.0, rng);
        resolve_random_float(out, "line_width", 0.01, 0.2, rng);
        resolve_random_float(out, "line_gap", 0.05, 0.5, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_overlay_stripes(img, p);
      },
      .intensity = [](const Params& p) {
        const double w = get_float(p, "line_width");
        const double g = get_float(p, "line_gap");
        const double coverage = w + g > 0.0 ? w / (w + g) : 1.0;
        return coverage * get_float(p, "line_opacity") * 100.0;
      },
  });
  reg.add({
      .name = "overlay_text",
      .schema = {{"text", ParamType::String, false, std::string("sample text")},
                 {"font_size", ParamType::Float, false, 0.15, 0.0, 1.0, {},
                  true},
                 {"color", ParamType::FloatList, false, kRed},
                 {"opacity", ParamType::Float, false, 1.0, 0.0, 1.0},
                 {"x_pos", ParamType::Float, false, 0.0, 0.0, 1.0, {}, true},
                 {"y_pos", ParamType::Float, false, 0.5, 0.0, 1.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "font_size", 0.05, 0.3, rng);
        resolve_random_float(out, "x_pos", 0.0, 0.6, rng);
        resolve_random_float(out, "y_pos", 0.0, 0.8, rng);
        return out;
      },
      .apply = [](const Raster& img, const Params& p, Rng&) {
        return op_overlay_text(img, p);
      },
      .intensity = [](const Params& p) {
        return std::min(get_float(p, "font_size"), 1.0) * 100.0;
      },
  });
}

}  // namespace augkit::image
