#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>

#include "augkit/image/codecs.hpp"

namespace augkit::image {

namespace {

constexpr std::uint8_t kSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

std::uint32_t read_u32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::uint8_t* data, std::size_t size) {
  put_u32(out, static_cast<std::uint32_t>(size));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data, data + size);
  const uLong crc =
      crc32(0L, out.data() + crc_start, static_cast<uInt>(size + 4));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

std::vector<std::uint8_t> zlib_inflate(const std::uint8_t* data,
                                       std::size_t size,
                                       std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  uLongf out_len = static_cast<uLongf>(expected);
  const int rc = uncompress(out.data(), &out_len, data,
                            static_cast<uLong>(size));
  if (rc != Z_OK || out_len != expected)
    throw IoError("png: corrupt compressed image data");
  return out;
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

void unfilter(std::vector<std::uint8_t>& raw, int height, std::size_t stride,
              int bpp) {
  for (int y = 0; y < height; ++y) {
    std::uint8_t* row = raw.data() + y * (stride + 1);
    const std::uint8_t filter = row[0];
    std::uint8_t* cur = row + 1;
    const std::uint8_t* prev =
        y > 0 ? raw.data() + (y - 1) * (stride + 1) + 1 : nullptr;
    for (std::size_t i = 0; i < stride; ++i) {
      const int left = i >= static_cast<std::size_t>(bpp) ? cur[i - bpp] : 0;
      const int up = prev ? prev[i] : 0;
      const int ul =
          (prev && i >= static_cast<std::size_t>(bpp)) ? prev[i - bpp] : 0;
      int v = cur[i];
      switch (filter) {
        case 0: break;
        case 1: v += left; break;
        case 2: v += up; break;
        case 3: v += (left + up) / 2; break;
        case 4: v += paeth(left, up, ul); break;
        default: throw IoError("png: unknown filter type");
      }
      cur[i] = static_cast<std::uint8_t>(v);
    }
  }
}

}  // namespace

Raster decode_png(const std::uint8_t* data, std::size_t size) {
  if (size < 8 || std::memcmp(data, kSignature, 8) != 0)
    throw IoError("png: bad signature");

  int width = 0, height = 0, bit_depth = 0, color_type = 0;
  std::vector<std::uint8_t> idat;
  std::vector<std::uint8_t> palette;       // rgb triples
  std::vector<std::uint8_t> trans;         // palette alpha
  bool saw_ihdr = false, saw_iend = false;

  std::size_t pos = 8;
  while (pos + 8 <= size && !saw_iend) {
    const std::uint32_t len = read_u32(data + pos);
    if (pos + 12 + len > size) throw IoError("png: truncated chunk");
    const char* type = reinterpret_cast<const char*>(data + pos + 4);
    const std::uint8_t* body = data + pos + 8;
    if (!std::memcmp(type, "IHDR", 4)) {
      if (len != 13) throw IoError("png: bad IHDR");
      width = static_cast<int>(read_u32(body));
      height = static_cast<int>(read_u32(body + 4));
      bit_depth = body[8];
      color_type = body[9];
      if (body[12] != 0) throw IoError("png: interlaced images unsupported");
      if (bit_depth != 8)
        throw IoError("png: only 8-bit sample depth supported");
      if (color_type != 0 && color_type != 2 && color_type != 3 &&
          color_type != 4 && color_type != 6)
        throw IoError("png: unsupported color type");
      saw_ihdr = true;
    } else if (!std::memcmp(type, "PLTE", 4)) {
      palette.assign(body, body + len);
    } else if (!std::memcmp(type, "tRNS", 4)) {
      trans.assign(body, body + len);
    } else if (!std::memcmp(type, "IDAT", 4)) {
      idat.insert(idat.end(), body, body + len);
    } else if (!std::memcmp(type, "IEND", 4)) {
      saw_iend = true;
    }
    pos += 12 + len;
  }
  if (!saw_ihdr || idat.empty()) throw IoError("png: missing image data");
  if (width < 1 || height < 1) throw IoError("png: bad dimensions");

  const int src_channels = color_type == 0 ? 1
                           : color_type == 2 ? 3
                           : color_type == 3 ? 1
                           : color_type == 4 ? 2
                                             : 4;
  const std::size_t stride = static_cast<std::size_t>(width) * src_channels;
  std::vector<std::uint8_t> raw =
      zlib_inflate(idat.data(), idat.size(), (stride + 1) * height);
  unfilter(raw, height, stride, src_channels);

  const bool has_alpha =
      color_type == 4 || color_type == 6 || (color_type == 3 && !trans.empty());
  Raster out(width, height, has_alpha ? 4 : 3);
  for (int y = 0; y < height; ++y) {
    const std::uint8_t* row = raw.data() + y * (stride + 1) + 1;
    for (int x = 0; x < width; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * src_channels;
      Rgba c;
      switch (color_type) {
        case 0: c = {px[0], px[0], px[0], 255}; break;
        case 2: c = {px[0], px[1], px[2], 255}; break;
        case 3: {
          const std::size_t idx = px[0];
          if (idx * 3 + 2 >= palette.size())
            throw IoError("png: palette index out of range");
          c = {palette[idx * 3], palette[idx * 3 + 1], palette[idx * 3 + 2],
               idx < trans.size() ? trans[idx] : std::uint8_t(255)};
          break;
        }
        case 4: c = {px[0], px[0], px[0], px[1]}; break;
        default: c = {px[0], px[1], px[2], px[3]}; break;
      }
      put_pixel(out, x, y, c);
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_png(const Raster& img) {
  img.check();
  const std::size_t stride =
      static_cast<std::size_t>(img.width) * img.channels;
  std::vector<std::uint8_t> raw((stride + 1) * img.height);
  for (int y = 0; y < img.height; ++y) {
    raw[y * (stride + 1)] = 0;  // filter: none
    std::memcpy(raw.data() + y * (stride + 1) + 1,
                img.pixels.data() + y * stride, stride);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(),
                static_cast<uLong>(raw.size()), Z_BEST_SPEED) != Z_OK)
    throw IoError("png: compression failed");
  compressed.resize(bound);

  std::vector<std::uint8_t> out(kSignature, kSignature + 8);
  std::uint8_t ihdr[13];
  ihdr[0] = static_cast<std::uint8_t>(img.width >> 24);
  ihdr[1] = static_cast<std::uint8_t>(img.width >> 16);
  ihdr[2] = static_cast<std::uint8_t>(img.width >> 8);
  ihdr[3] = static_cast<std::uint8_t>(img.width);
  ihdr[4] = static_cast<std::uint8_t>(img.height >> 24);
  ihdr[5] = static_cast<std::uint8_t>(img.height >> 16);
  ihdr[6] = static_cast<std::uint8_t>(img.height >> 8);
  ihdr[7] = static_cast<std::uint8_t>(img.height);
  ihdr[8] = 8;
  ihdr[9] = img.channels == 4 ? 6 : 2;
  ihdr[10] = ihdr[11] = ihdr[12] = 0;
  put_chunk(out, "IHDR", ihdr, 13);
  put_chunk(out, "IDAT", compressed.data(), compressed.size());
  put_chunk(out, "IEND", nullptr, 0);
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  f.seekg(0, std::ios::end);
  const std::streamoff size = f.tellg();
  f.seekg(0);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(size));
  f.read(reinterpret_cast<char*>(data.data()), size);
  if (!f) throw IoError("failed reading '" + path + "'");
  return data;
}

void write_file(const std::string& path, const std::uint8_t* data,
                std::size_t size) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot create '" + path + "'");
  f.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!f) throw IoError("failed writing '" + path + "'");
}

Raster load_png(const std::string& path) {
  const auto data = read_file(path);
  return decode_png(data.data(), data.size());
}

void save_png(const Raster& img, const std::string& path) {
  const auto data = encode_png(img);
  write_file(path, data.data(), data.size());
}

Raster load_jpeg(const std::string& path) {
  const auto data = read_file(path);
  return decode_jpeg(data.data(), data.size());
}

void save_jpeg(const Raster& img, const std::string& path, int quality) {
  const auto data = encode_jpeg(img, quality);
  write_file(path, data.data(), data.size());
}

namespace {
bool ends_with_ci(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    const char a = static_cast<char>(std::tolower(s[s.size() - suffix.size() + i]));
    if (a != suffix[i]) return false;
  }
  return true;
}
}  // namespace

Raster load_image(const std::string& path) {
  if (ends_with_ci(path, ".png")) return load_png(path);
  if (ends_with_ci(path, ".jpg") || ends_with_ci(path, ".jpeg"))
    return load_jpeg(path);
  throw IoError("unsupported image extension: '" + path + "'");
}

void save_image(const Raster& img, const std::string& path) {
  if (ends_with_ci(path, ".png")) return save_png(img, path);
  if (ends_with_ci(path, ".jpg") || ends_with_ci(path, ".jpeg"))
    return save_jpeg(img, path, 75);
  throw IoError("unsupported image extension: '" + path + "'");
}

}  // namespace augkit::image
