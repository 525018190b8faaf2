#include <algorithm>
#include <set>

#include <doctest.h>

#include "augkit/assets.hpp"
#include "augkit/image/catalog.hpp"
#include "augkit/text/unicode.hpp"

using namespace augkit;
using namespace augkit::image;

namespace {

Raster checker_image(int w, int h) {
  Raster img(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::uint8_t v = ((x / 4 + y / 4) % 2) ? 200 : 60;
      img.at(x, y, 0) = v;
      img.at(x, y, 1) = static_cast<std::uint8_t>(255 - v);
      img.at(x, y, 2) = 90;
    }
  return img;
}

Raster run(const std::string& name, Params params, const Raster& img,
           std::uint64_t seed = 7) {
  return apply({name, std::move(params), 1.0}, img, seed);
}

bool rows_match(const Raster& a, const Raster& b, int a_row0, int b_row0,
                int rows) {
  for (int y = 0; y < rows; ++y)
    for (int x = 0; x < a.width; ++x)
      for (int c = 0; c < a.channels; ++c)
        if (a.at(x, a_row0 + y, c) != b.at(x, b_row0 + y, c)) return false;
  return true;
}

}  // namespace

TEST_CASE("meme_format adds an untouched caption strip above the image") {
  const Raster img = checker_image(500, 400);
  const Raster out = run("meme_format",
                         {{"text", std::string("WHEN THE TESTS PASS")},
                          {"caption_height", std::int64_t{75}}},
                         img);
  CHECK(out.width == 500);
  CHECK(out.height == 475);
  CHECK(rows_match(out, img, 75, 0, 400));

  // The caption strip holds exactly the background and text colors.
  std::set<std::uint32_t> colors;
  for (int y = 0; y < 75; ++y)
    for (int x = 0; x < out.width; ++x) {
      const Rgba c = pixel(out, x, y);
      colors.insert((std::uint32_t(c.r) << 16) | (std::uint32_t(c.g) << 8) |
                    c.b);
    }
  CHECK(colors.size() == 2);
  CHECK(colors.count(0x000000) == 1);
  CHECK(colors.count(0xFFFFFF) == 1);
}

TEST_CASE("meme_format honors custom colors and validates input") {
  const Raster img = checker_image(120, 60);
  const Raster out = run("meme_format",
                         {{"text", std::string("hi")},
                          {"caption_height", std::int64_t{40}},
                          {"meme_bg_color", std::vector<double>{20, 30, 40}},
                          {"text_color", std::vector<double>{250, 240, 230}}},
                         img);
  CHECK(out.height == 100);
  const Rgba corner = pixel(out, 0, 0);
  CHECK(corner.r == 20);
  CHECK(corner.g == 30);
  CHECK(corner.b == 40);

  CHECK_THROWS_AS(run("meme_format", {{"text", std::string()}}, img),
                  ValidationError);
  CHECK_THROWS_AS(run("meme_format",
                      {{"text", std::string("x")},
                       {"caption_height", std::int64_t{4}}},
                      img),
                  ValidationError);
}

TEST_CASE("overlay_onto_screenshot frames the image inside a template") {
  const Raster img = checker_image(333, 222);
  const auto& tpl = AssetStore::instance().screenshot_template("mobile_feed");
  const Raster out =
      run("overlay_onto_screenshot", {{"template_id", std::string("mobile_feed")}}, img);
  CHECK(out.width == tpl.img.width);
  CHECK(out.height == tpl.img.height);
  // Chrome outside the content rectangle is untouched.
  CHECK(pixel(out, 0, 0).r == pixel(tpl.img, 0, 0).r);
  CHECK(pixel(out, out.width - 1, out.height - 1).g ==
        pixel(tpl.img, out.width - 1, out.height - 1).g);

  CHECK_THROWS_AS(
      run("overlay_onto_screenshot", {{"template_id", std::string("nope")}}, img),
      AssetError);
}

TEST_CASE("overlay_emoji blends a sprite only inside its rectangle") {
  const Raster img = checker_image(200, 160);
  const Raster out = run("overlay_emoji", {{"emoji", std::string("smiley")},
                                           {"emoji_size", 0.25},
                                           {"x_pos", 0.0},
                                           {"y_pos", 0.0}},
                         img);
  CHECK(out.width == img.width);
  CHECK(out != img);
  // Sprite is 40px tall at the top-left corner; the rest is untouched.
  bool below_same = true, right_same = true;
  for (int y = 40; y < img.height && below_same; ++y)
    for (int x = 0; x < img.width; ++x)
      if (pixel(out, x, y).r != pixel(img, x, y).r) below_same = false;
  for (int y = 0; y < img.height && right_same; ++y)
    for (int x = 40; x < img.width; ++x)
      if (pixel(out, x, y).r != pixel(img, x, y).r) right_same = false;
  CHECK(below_same);
  CHECK(right_same);

  CHECK_THROWS_AS(
      run("overlay_emoji", {{"emoji", std::string("not_an_emoji")}}, img),
      AssetError);
}

TEST_CASE("overlay_image defaults to the bundled logo") {
  const Raster img = checker_image(120, 120);
  const Raster out = run("overlay_image", {{"overlay_size", 0.5}}, img);
  CHECK(out.width == img.width);
  CHECK(out.height == img.height);
  CHECK(out != img);
}

TEST_CASE("overlay_onto_background_image shrinks the input onto a backdrop") {
  const Raster img = checker_image(100, 100);
  const Raster bg = AssetStore::instance().stock_image("background_landscape");
  const Raster out = run("overlay_onto_background_image",
                         {{"scale", 0.5}, {"x_pos", 0.0}, {"y_pos", 0.0}}, img);
  CHECK(out.width == bg.width);
  CHECK(out.height == bg.height);
  // Scaled content occupies the top-left box; far corner shows the backdrop.
  CHECK(pixel(out, out.width - 1, out.height - 1).r ==
        pixel(bg, bg.width - 1, bg.height - 1).r);
}

TEST_CASE("overlay_stripes covers the expected fraction") {
  const Raster img = filled(200, 200, 3, {255, 255, 255, 255});
  const Raster out = run("overlay_stripes", {{"line_angle", 0.0},
                                             {"line_width", 0.1},
                                             {"line_gap", 0.1},
                                             {"line_color", std::vector<double>{0, 0, 0}}},
                         img);
  int dark = 0;
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      if (pixel(out, x, y).r == 0) ++dark;
  const double coverage = dark / (200.0 * 200.0);
  CHECK(coverage == doctest::Approx(0.5).epsilon(0.02));
  // Angle zero stripes are horizontal bands: rows are uniform.
  for (int y = 0; y < out.height; ++y) {
    const Rgba first = pixel(out, 0, y);
    CHECK(pixel(out, out.width / 2, y).r == first.r);
  }
}

TEST_CASE("overlay_text stamps glyphs with the requested color") {
  const Raster img = filled(300, 100, 3, {255, 255, 255, 255});
  const Raster out = run("overlay_text", {{"text", std::string("AB")},
                                          {"font_size", 0.3},
                                          {"color", std::vector<double>{255, 0, 0}},
                                          {"x_pos", 0.0},
                                          {"y_pos", 0.0}},
                         img);
  int red = 0;
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) {
      const Rgba c = pixel(out, x, y);
      if (c.r == 255 && c.g == 0 && c.b == 0) ++red;
    }
  CHECK(red > 0);
  CHECK_THROWS_AS(run("overlay_text", {{"text", std::string()}}, img),
                  ValidationError);
}

TEST_CASE("masked_composite blends through a mask") {
  const Raster img = filled(64, 64, 3, {0, 0, 0, 255});
  const auto& store = AssetStore::instance();
  const Raster out = run("masked_composite",
                         {{"overlay_path", store.file("images/overlay_logo.png")},
                          {"mask_path", store.file("masks/circle.png")}},
                         img);
  CHECK(out.width == 64);
  CHECK(out != img);
}

TEST_CASE("random emoji markers resolve deterministically") {
  const Raster img = checker_image(80, 80);
  const Raster a = run("overlay_emoji", {{"emoji", std::string("random")}}, img, 99);
  const Raster b = run("overlay_emoji", {{"emoji", std::string("random")}}, img, 99);
  CHECK(a == b);
}

TEST_CASE("asset store inventories bundled assets") {
  const auto& store = AssetStore::instance();
  const auto emoji = store.emoji_names();
  CHECK(emoji.size() >= 8);
  CHECK(std::count(emoji.begin(), emoji.end(), "smiley") == 1);
  const auto templates = store.template_names();
  CHECK(templates.size() >= 2);
  CHECK_THROWS_AS(store.file("no/such/asset.bin"), AssetError);
  const Raster& sprite = store.emoji("heart");
  CHECK(sprite.channels == 4);
  CHECK(sprite.width == 128);
}

TEST_CASE("bitmap font measures and draws ascii text") {
  const auto& font = AssetStore::instance().font();
  CHECK(font.line_height() > 0);
  CHECK(font.advance() > 0);
  CHECK(font.has(U'A'));
  CHECK(font.measure(U"abc") == 3 * font.advance());

  Raster canvas = filled(200, 60, 3, {0, 0, 0, 255});
  font.draw(canvas, U"Hi", 4, 4, {255, 255, 255, 255}, 1);
  int lit = 0;
  for (int y = 0; y < canvas.height; ++y)
    for (int x = 0; x < canvas.width; ++x)
      if (pixel(canvas, x, y).r == 255) ++lit;
  CHECK(lit > 10);
}

TEST_CASE("utf8 codec round trips and rejects malformed input") {
  const std::string sample = "caf\xC3\xA9 \xE2\x9C\x93 \xF0\x9F\x99\x82";
  const std::u32string decoded = text::utf8_decode(sample);
  CHECK(decoded.size() == 8);
  CHECK(text::utf8_encode(decoded) == sample);
  CHECK_THROWS_AS(text::utf8_decode("\xFF"), ValidationError);
  CHECK_THROWS_AS(text::utf8_decode("\xC3"), ValidationError);
  CHECK_THROWS_AS(text::utf8_decode("\xED\xA0\x80"), ValidationError);
  CHECK_THROWS_AS(text::utf8_decode("\xC0\xAF"), ValidationError);
}
