#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <doctest.h>

#include "augkit/image/catalog.hpp"

using namespace augkit;
using namespace augkit::image;

namespace {

Raster gradient_image(int w, int h, int channels = 3) {
  Raster img(w, h, channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>((x * 255) / std::max(1, w - 1));
      img.at(x, y, 1) = static_cast<std::uint8_t>((y * 255) / std::max(1, h - 1));
      img.at(x, y, 2) = static_cast<std::uint8_t>((x + y) % 256);
      if (channels == 4) img.at(x, y, 3) = 255;
    }
  return img;
}

Raster run(const std::string& name, Params params, const Raster& img,
           std::uint64_t seed = 7) {
  return apply({name, std::move(params), 1.0}, img, seed);
}

double mean_abs_diff(const Raster& a, const Raster& b) {
  REQUIRE(a.pixels.size() == b.pixels.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i)
    sum += std::abs(static_cast<double>(a.pixels[i]) - b.pixels[i]);
  return sum / a.pixels.size();
}

std::vector<std::uint8_t> sorted_bytes(const Raster& img) {
  auto v = img.pixels;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("image catalog registers the full transform set") {
  const auto names = image_registry().names();
  CHECK(names.size() == 35);
  const std::set<std::string> set(names.begin(), names.end());
  for (const char* expected :
       {"apply_filter_kernel", "apply_lambda", "blur", "brightness",
        "change_aspect_ratio", "clip_image_size", "color_jitter", "contrast",
        "convert_color", "crop", "encoding_quality", "grayscale", "hflip",
        "masked_composite", "meme_format", "opacity", "overlay_emoji",
        "overlay_image", "overlay_onto_background_image",
        "overlay_onto_screenshot", "overlay_stripes", "overlay_text", "pad",
        "pad_square", "perspective_transform", "pixelization", "random_noise",
        "resize", "rotate", "saturation", "scale", "sharpen", "shuffle_pixels",
        "skew", "vflip"})
    CHECK_MESSAGE(set.count(expected) == 1, expected);
}

TEST_CASE("horizontal and vertical flips are involutions") {
  const Raster img = gradient_image(23, 17);
  CHECK(run("hflip", {}, run("hflip", {}, img)) == img);
  CHECK(run("vflip", {}, run("vflip", {}, img)) == img);
  CHECK(run("hflip", {}, img) != img);
}

TEST_CASE("four quarter turns reproduce the input bit-exactly") {
  const Raster img = gradient_image(20, 12);
  Raster cur = img;
  for (int i = 0; i < 4; ++i) cur = run("rotate", {{"degrees", 90.0}}, cur);
  CHECK(cur == img);
  const Raster once = run("rotate", {{"degrees", 90.0}}, img);
  CHECK(once.width == img.height);
  CHECK(once.height == img.width);
  CHECK(run("rotate", {{"degrees", 180.0}}, run("rotate", {{"degrees", 180.0}}, img)) == img);
}

TEST_CASE("identity parameterizations return the input bit-exactly") {
  const Raster img = gradient_image(31, 22);
  CHECK(run("brightness", {{"factor", 1.0}}, img) == img);
  CHECK(run("contrast", {{"factor", 1.0}}, img) == img);
  CHECK(run("saturation", {{"factor", 1.0}}, img) == img);
  CHECK(run("color_jitter", {{"brightness_factor", 1.0},
                             {"contrast_factor", 1.0},
                             {"saturation_factor", 1.0}},
            img) == img);
  CHECK(run("blur", {{"radius", 0.0}}, img) == img);
  CHECK(run("sharpen", {{"factor", 1.0}}, img) == img);
  CHECK(run("pixelization", {{"ratio", 1.0}}, img) == img);
  CHECK(run("skew", {{"factor", 0.0}}, img) == img);
  CHECK(run("pad", {{"w_factor", 0.0}, {"h_factor", 0.0}}, img) == img);
  CHECK(run("resize", {}, img) == img);
  CHECK(run("scale", {{"factor", 1.0}}, img) == img);
  CHECK(run("rotate", {{"degrees", 0.0}}, img) == img);
  CHECK(run("rotate", {{"degrees", 360.0}}, img) == img);
  CHECK(run("rotate", {{"degrees", -360.0}}, img) == img);
  CHECK(run("opacity", {{"level", 1.0}}, img) == img);
  CHECK(run("shuffle_pixels", {{"factor", 0.0}}, img) == img);
  CHECK(run("random_noise", {{"mean", 0.0}, {"var", 0.0}}, img) == img);
  CHECK(run("apply_filter_kernel", {{"kernel", std::string("identity")}}, img) == img);
  CHECK(run("apply_lambda", {}, img) == img);
  CHECK(run("perspective_transform", {{"sigma", 0.0}}, img) == img);
  CHECK(run("overlay_stripes", {{"line_opacity", 0.0}}, img) == img);
  CHECK(run("masked_composite", {}, img) == img);
  CHECK(run("crop", {{"x1", 0.0}, {"y1", 0.0}, {"x2", 1.0}, {"y2", 1.0}}, img) == img);
}

TEST_CASE("grayscale is idempotent and channel-equal") {
  const Raster img = gradient_image(19, 13);
  const Raster once = run("grayscale", {}, img);
  CHECK(run("grayscale", {}, once) == once);
  for (int y = 0; y < once.height; ++y)
    for (int x = 0; x < once.width; ++x) {
      CHECK(once.at(x, y, 0) == once.at(x, y, 1));
      CHECK(once.at(x, y, 1) == once.at(x, y, 2));
    }
}

TEST_CASE("crop and pad produce the expected geometry") {
  const Raster img = gradient_image(100, 80);
  const Raster cropped = run(
      "crop", {{"x1", 0.25}, {"y1", 0.25}, {"x2", 0.75}, {"y2", 0.75}}, img);
  CHECK(cropped.width == 50);
  CHECK(cropped.height == 40);
  CHECK(cropped.at(0, 0, 0) == img.at(25, 20, 0));

  const Raster padded = run("pad", {{"w_factor", 0.25}, {"h_factor", 0.25}}, img);
  CHECK(padded.width == 150);
  CHECK(padded.height == 120);
  CHECK(padded.at(0, 0, 0) == 0);
  CHECK(padded.at(25, 20, 0) == img.at(0, 0, 0));

  const Raster squared = run("pad_square", {}, img);
  CHECK(squared.width == 100);
  CHECK(squared.height == 100);
}

TEST_CASE("pixelization at half ratio averages 2x2 blocks") {
  Raster img(2, 2, 3);
  const std::uint8_t vals[4] = {10, 20, 30, 40};
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = vals[y * 2 + x];
  const Raster out = run("pixelization", {{"ratio", 0.5}}, img);
  CHECK(out.width == 2);
  CHECK(out.height == 2);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) CHECK(out.at(x, y, 0) == 25);
}

TEST_CASE("brightness scales and clamps channel values") {
  Raster img(2, 1, 3);
  for (int c = 0; c < 3; ++c) {
    img.at(0, 0, c) = 100;
    img.at(1, 0, c) = 200;
  }
  const Raster out = run("brightness", {{"factor", 2.0}}, img);
  CHECK(out.at(0, 0, 0) == 200);
  CHECK(out.at(1, 0, 0) == 255);
}

TEST_CASE("saturation zero equals the grayscale projection") {
  const Raster img = gradient_image(17, 11);
  const Raster desat = run("saturation", {{"factor", 0.0}}, img);
  for (int y = 0; y < desat.height; ++y)
    for (int x = 0; x < desat.width; ++x) {
      CHECK(desat.at(x, y, 0) == desat.at(x, y, 1));
      CHECK(desat.at(x, y, 1) == desat.at(x, y, 2));
    }
}

TEST_CASE("contrast pivots around the mean luma") {
  Raster img(2, 1, 3);
  for (int c = 0; c < 3; ++c) {
    img.at(0, 0, c) = 100;
    img.at(1, 0, c) = 200;
  }
  // Mean luma is 150; factor 0 collapses everything onto it.
  const Raster flat = run("contrast", {{"factor", 0.0}}, img);
  CHECK(flat.at(0, 0, 0) == 150);
  CHECK(flat.at(1, 0, 0) == 150);
  const Raster stretched = run("contrast", {{"factor", 2.0}}, img);
  CHECK(stretched.at(0, 0, 0) == 50);
  CHECK(stretched.at(1, 0, 0) == 250);
}

TEST_CASE("scale and aspect ratio change resolution as requested") {
  const Raster img = gradient_image(100, 100);
  const Raster half = run("scale", {{"factor", 0.5}}, img);
  CHECK(half.width == 50);
  CHECK(half.height == 50);

  const Raster wide = run("change_aspect_ratio", {{"ratio", 2.0}}, img);
  CHECK(wide.width == 141);
  CHECK(wide.height == 71);

  const Raster resized = run("resize", {{"width", std::int64_t{40}},
                                        {"height", std::int64_t{30}}},
                             img);
  CHECK(resized.width == 40);
  CHECK(resized.height == 30);
}

TEST_CASE("clip_image_size enforces the area bounds") {
  const Raster img = gradient_image(100, 100);
  const Raster up = run("clip_image_size", {{"min_resolution", std::int64_t{40000}}}, img);
  CHECK(up.width * up.height >= 40000);
  const Raster down = run("clip_image_size", {{"max_resolution", std::int64_t{2500}}}, img);
  CHECK(down.width * down.height <= 2500);
  CHECK(run("clip_image_size", {}, img) == img);
  CHECK_THROWS_AS(run("clip_image_size",
                      {{"min_resolution", std::int64_t{100}},
                       {"max_resolution", std::int64_t{50}}},
                      img),
                  ValidationError);
}

TEST_CASE("rotate grows the canvas to the rotated bounding box") {
  const Raster img = gradient_image(100, 50);
  const Raster out = run("rotate", {{"degrees", 45.0}}, img);
  const double c = std::cos(45.0 * std::acos(-1.0) / 180.0);
  const int expect_w = static_cast<int>(std::lround(100 * c + 50 * c));
  CHECK(out.width == expect_w);
  CHECK(out.height == expect_w);
  // Corners land in the white fill.
  CHECK(pixel(out, 0, 0).r == 255);
}

TEST_CASE("shuffle_pixels permutes without changing the histogram") {
  const Raster img = gradient_image(32, 32);
  const Raster out = run("shuffle_pixels", {{"factor", 1.0}}, img);
  CHECK(out != img);
  CHECK(sorted_bytes(out) == sorted_bytes(img));
  // Partial shuffles stay deterministic for a fixed seed.
  const Raster a = run("shuffle_pixels", {{"factor", 0.5}}, img, 11);
  const Raster b = run("shuffle_pixels", {{"factor", 0.5}}, img, 11);
  CHECK(a == b);
}

TEST_CASE("encoding_quality round trips through a lossy codec") {
  const Raster img = gradient_image(64, 48);
  const Raster out = run("encoding_quality", {{"quality", std::int64_t{95}}}, img);
  CHECK(out.width == img.width);
  CHECK(out.height == img.height);
  CHECK(out.channels == 3);
  CHECK(mean_abs_diff(out, img) < 8.0);
  const Raster rough = run("encoding_quality", {{"quality", std::int64_t{5}}}, img);
  CHECK(mean_abs_diff(rough, img) > mean_abs_diff(out, img));
}

TEST_CASE("opacity scales the alpha channel") {
  const Raster img = gradient_image(9, 7);
  const Raster out = run("opacity", {{"level", 0.5}}, img);
  CHECK(out.channels == 4);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) CHECK(out.at(x, y, 3) == 128);
}

TEST_CASE("convert_color switches channel layout") {
  const Raster img = gradient_image(9, 7);
  const Raster rgba = run("convert_color", {{"mode", std::string("rgba")}}, img);
  CHECK(rgba.channels == 4);
  const Raster back = run("convert_color", {{"mode", std::string("rgb")}}, rgba);
  CHECK(back == img);
  const Raster gray = run("convert_color", {{"mode", std::string("grayscale")}}, img);
  CHECK(gray.at(2, 2, 0) == gray.at(2, 2, 1));
}

TEST_CASE("blur keeps constant regions and softens edges") {
  const Raster flat = filled(16, 16, 3, {90, 90, 90, 255});
  CHECK(run("blur", {{"radius", 3.0}}, flat) == flat);

  Raster edge(16, 16, 3);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) edge.at(x, y, c) = x < 8 ? 0 : 255;
  const Raster soft = run("blur", {{"radius", 2.0}}, edge);
  const int jump_before = std::abs(edge.at(8, 8, 0) - edge.at(7, 8, 0));
  const int jump_after = std::abs(soft.at(8, 8, 0) - soft.at(7, 8, 0));
  CHECK(jump_after < jump_before);
  CHECK(soft.at(0, 8, 0) == 0);
  CHECK(soft.at(15, 8, 0) == 255);
}

TEST_CASE("sharpen exaggerates local contrast") {
  Raster edge(16, 16, 3);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) edge.at(x, y, c) = x < 8 ? 100 : 160;
  const Raster out = run("sharpen", {{"factor", 4.0}}, edge);
  CHECK(out.at(7, 8, 0) < 100);
  CHECK(out.at(8, 8, 0) > 160);
  const Raster flat = filled(8, 8, 3, {70, 70, 70, 255});
  CHECK(run("sharpen", {{"factor", 4.0}}, flat) == flat);
}

TEST_CASE("random_noise matches the half-normal expected deviation") {
  const Raster img = filled(640, 550, 3, {128, 128, 128, 255});
  const Raster out = run("random_noise", {{"var", 0.01}}, img, 123);
  const double mean_delta = mean_abs_diff(out, img) / 255.0;
  CHECK(std::abs(mean_delta - 0.0798) < 0.005);
}

TEST_CASE("perspective_transform with zero sigma is the identity") {
  const Raster img = gradient_image(40, 30);
  CHECK(run("perspective_transform", {{"sigma", 0.0}}, img) == img);
  const Raster a = run("perspective_transform", {{"sigma", 20.0}}, img, 5);
  const Raster b = run("perspective_transform", {{"sigma", 20.0}}, img, 5);
  CHECK(a == b);
  CHECK(a != img);
}

TEST_CASE("apply_filter_kernel applies distinct fixed kernels") {
  const Raster img = gradient_image(24, 24);
  std::set<std::vector<std::uint8_t>> outputs;
  for (const char* kernel : {"sharpen", "smooth", "edge_enhance", "emboss",
                             "edge_detect", "box_blur"}) {
    const Raster out = run("apply_filter_kernel",
                           {{"kernel", std::string(kernel)}}, img);
    CHECK(out.width == img.width);
    outputs.insert(out.pixels);
  }
  CHECK(outputs.size() == 6);
  CHECK_THROWS_AS(
      run("apply_filter_kernel", {{"kernel", std::string("bogus")}}, img),
      ValidationError);
}

TEST_CASE("registered lambdas run through apply_lambda") {
  register_image_lambda("invert_for_test", [](const Raster& img) {
    Raster out = img;
    for (auto& v : out.pixels) v = static_cast<std::uint8_t>(255 - v);
    return out;
  });
  const Raster img = gradient_image(6, 6);
  const Raster out =
      run("apply_lambda", {{"name", std::string("invert_for_test")}}, img);
  CHECK(out.at(0, 0, 0) == 255 - img.at(0, 0, 0));
  CHECK_THROWS_AS(run("apply_lambda", {{"name", std::string("missing")}}, img),
                  ValidationError);
}

TEST_CASE("skew keeps dimensions and shifts content horizontally") {
  const Raster img = gradient_image(30, 30);
  const Raster out = run("skew", {{"factor", 0.5}}, img);
  CHECK(out.width == img.width);
  CHECK(out.height == img.height);
  CHECK(out != img);
}
