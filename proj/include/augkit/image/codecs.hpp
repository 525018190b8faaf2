#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augkit/image/raster.hpp"

namespace augkit::image {

// PNG: 8-bit gray / gray+alpha / palette / RGB / RGBA, non-interlaced.
Raster decode_png(const std::uint8_t* data, std::size_t size);
std::vector<std::uint8_t> encode_png(const Raster& img);

Raster load_png(const std::string& path);
void save_png(const Raster& img, const std::string& path);

// Bundled baseline JPEG codec (sequential DCT, Huffman). The encoder writes
// 4:2:0 with the standard quantization tables scaled by quality 1..100; the
// decoder accepts baseline streams with sampling factors up to 2x2 and
// restart markers.
std::vector<std::uint8_t> encode_jpeg(const Raster& img, int quality);
Raster decode_jpeg(const std::uint8_t* data, std::size_t size);

Raster load_jpeg(const std::string& path);
void save_jpeg(const Raster& img, const std::string& path, int quality);

// Extension-dispatched load/save (.png / .jpg / .jpeg).
Raster load_image(const std::string& path);
void save_image(const Raster& img, const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::uint8_t* data,
                std::size_t size);

}  // namespace augkit::image
