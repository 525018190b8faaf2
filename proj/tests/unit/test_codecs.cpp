#include "augkit/image/codecs.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "augkit/core/rng.hpp"
#include "doctest.h"

using namespace augkit;
using namespace augkit::image;

namespace {

Raster noise_image(int w, int h, int channels, std::uint64_t seed) {
  Raster img(w, h, channels);
  Rng rng(seed);
  for (auto& b : img.pixels)
    b = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return img;
}

Raster smooth_image(int w, int h) {
  Raster img(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>(
          127.5 + 120.0 * std::sin(x * 0.07) * std::cos(y * 0.05));
      img.at(x, y, 1) = static_cast<std::uint8_t>(x * 255 / std::max(1, w - 1));
      img.at(x, y, 2) = static_cast<std::uint8_t>(y * 255 / std::max(1, h - 1));
    }
  return img;
}

double psnr(const Raster& a, const Raster& b) {
  REQUIRE(a.width == b.width);
  REQUIRE(a.height == b.height);
  double se = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x)
      for (int c = 0; c < 3; ++c) {
        const double d = double(a.at(x, y, c)) - double(b.at(x, y, c));
        se += d * d;
        ++n;
      }
  if (se == 0.0) return 1e9;
  return 10.0 * std::log10(255.0 * 255.0 / (se / double(n)));
}

}  // namespace

TEST_SUITE("codecs") {

TEST_CASE("png round trip is lossless for rgb and rgba") {
  for (int channels : {3, 4}) {
    const Raster img = noise_image(37, 23, channels, 77);
    const auto bytes = encode_png(img);
    const Raster back = decode_png(bytes.data(), bytes.size());
    CHECK(back == img);
  }
  // 1x1 edge case
  Raster tiny(1, 1, 3);
  tiny.at(0, 0, 1) = 200;
  const auto bytes = encode_png(tiny);
  CHECK(decode_png(bytes.data(), bytes.size()) == tiny);
}

TEST_CASE("png decode rejects garbage") {
  const std::uint8_t junk[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK_THROWS_AS(decode_png(junk, sizeof(junk)), IoError);
  const auto bytes = encode_png(noise_image(8, 8, 3, 1));
  CHECK_THROWS_AS(decode_png(bytes.data(), bytes.size() / 2), IoError);
}

TEST_CASE("png file io round trips") {
  const auto dir = std::filesystem::temp_directory_path() / "augkit_codec_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "rt.png").string();
  const Raster img = noise_image(16, 16, 4, 5);
  save_png(img, path);
  CHECK(load_png(path) == img);
  CHECK_THROWS_AS(load_png((dir / "missing.png").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("jpeg round trip preserves smooth content closely") {
  const Raster img = smooth_image(120, 90);
  const auto bytes = encode_jpeg(img, 90);
  const Raster back = decode_jpeg(bytes.data(), bytes.size());
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(psnr(img, back) > 32.0);
}

TEST_CASE("jpeg quality trades size for fidelity") {
  const Raster img = smooth_image(96, 96);
  const auto hi = encode_jpeg(img, 95);
  const auto lo = encode_jpeg(img, 10);
  CHECK(hi.size() > lo.size());
  const Raster hi_img = decode_jpeg(hi.data(), hi.size());
  const Raster lo_img = decode_jpeg(lo.data(), lo.size());
  CHECK(psnr(img, hi_img) > psnr(img, lo_img));
  CHECK(psnr(img, lo_img) > 15.0);
}

TEST_CASE("jpeg handles non multiple of 16 dimensions") {
  for (auto [w, h] : {std::pair{17, 9}, {8, 8}, {1, 1}, {33, 50}}) {
    const Raster img = smooth_image(w, h);
    const auto bytes = encode_jpeg(img, 85);
    const Raster back = decode_jpeg(bytes.data(), bytes.size());
    CHECK(back.width == w);
    CHECK(back.height == h);
    CHECK(psnr(img, back) > 25.0);
  }
}

TEST_CASE("jpeg constant image survives nearly unchanged") {
  Raster img(40, 24, 3);
  for (int y = 0; y < 24; ++y)
    for (int x = 0; x < 40; ++x)
      put_pixel(img, x, y, {120, 64, 200, 255});
  const auto bytes = encode_jpeg(img, 75);
  const Raster back = decode_jpeg(bytes.data(), bytes.size());
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs(int(back.at(20, 12, c)) - int(img.at(20, 12, c))) <= 3);
}

TEST_CASE("jpeg decode rejects garbage and quality range is enforced") {
  const std::uint8_t junk[] = {0xFF, 0xD8, 0xFF, 0x00, 1, 2, 3};
  CHECK_THROWS_AS(decode_jpeg(junk, sizeof(junk)), IoError);
  const Raster img = smooth_image(8, 8);
  CHECK_THROWS_AS(encode_jpeg(img, 0), ValidationError);
  CHECK_THROWS_AS(encode_jpeg(img, 101), ValidationError);
}

TEST_CASE("load_image dispatches on extension") {
  const auto dir = std::filesystem::temp_directory_path() / "augkit_disp_test";
  std::filesystem::create_directories(dir);
  const Raster img = smooth_image(32, 20);
  save_image(img, (dir / "a.png").string());
  save_image(img, (dir / "a.jpg").string());
  CHECK(load_image((dir / "a.png").string()) == img);
  const Raster jpg = load_image((dir / "a.jpg").string());
  CHECK(jpg.width == 32);
  CHECK(psnr(img, jpg) > 25.0);
  CHECK_THROWS_AS(save_image(img, (dir / "a.bmp").string()), IoError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
