// Baseline sequential JPEG (ITU-T T.81): encoder with 4:2:0 subsampling and
// the standard Annex K quantization/Huffman tables, decoder for baseline
// streams with component sampling factors up to 2x2 and restart markers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>

#include "augkit/image/codecs.hpp"

namespace augkit::image {

namespace {

const int kZigzag[64] = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

const int kLumaQuant[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

const int kChromaQuant[64] = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

const std::uint8_t kDcLumaBits[17] = {0, 0, 1, 5, 1, 1, 1, 1, 1,
                                      1, 0, 0, 0, 0, 0, 0, 0};
const std::uint8_t kDcLumaVals[12] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

const std::uint8_t kDcChromaBits[17] = {0, 0, 3, 1, 1, 1, 1, 1, 1,
                                        1, 1, 1, 0, 0, 0, 0, 0};
const std::uint8_t kDcChromaVals[12] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

const std::uint8_t kAcLumaBits[17] = {0, 0, 2, 1, 3, 3, 2, 4, 3,
                                      5, 5, 4, 4, 0, 0, 1, 0x7d};
const std::uint8_t kAcLumaVals[162] = {
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06,
    0x13, 0x51, 0x61, 0x07, 0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xa1, 0x08,
    0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0, 0x24, 0x33, 0x62, 0x72,
    0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2a, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45,
    0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
    0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74, 0x75,
    0x76, 0x77, 0x78, 0x79, 0x7a, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3,
    0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6,
    0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7, 0xc8, 0xc9,
    0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
    0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4,
    0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa};

const std::uint8_t kAcChromaBits[17] = {0, 0, 2, 1, 2, 4, 4, 3, 4,
                                        7, 5, 4, 4, 0, 1, 2, 0x77};
const std::uint8_t kAcChromaVals[162] = {
    0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21, 0x31, 0x06, 0x12, 0x41,
    0x51, 0x07, 0x61, 0x71, 0x13, 0x22, 0x32, 0x81, 0x08, 0x14, 0x42, 0x91,
    0xa1, 0xb1, 0xc1, 0x09, 0x23, 0x33, 0x52, 0xf0, 0x15, 0x62, 0x72, 0xd1,
    0x0a, 0x16, 0x24, 0x34, 0xe1, 0x25, 0xf1, 0x17, 0x18, 0x19, 0x1a, 0x26,
    0x27, 0x28, 0x29, 0x2a, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44,
    0x45, 0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58,
    0x59, 0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74,
    0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x82, 0x83, 0x84, 0x85, 0x86, 0x87,
    0x88, 0x89, 0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a,
    0xa2, 0xa3, 0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4,
    0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7,
    0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda,
    0xe2, 0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf2, 0xf3, 0xf4,
    0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa};

struct CosTable {
  double c[8][8];  // c[u][x] = alpha(u)/2 * cos((2x+1) u pi / 16)
  CosTable() {
    for (int u = 0; u < 8; ++u) {
      const double alpha = u == 0 ? std::sqrt(0.5) : 1.0;
      for (int x = 0; x < 8; ++x)
        c[u][x] = 0.5 * alpha * std::cos((2 * x + 1) * u * M_PI / 16.0);
    }
  }
};
const CosTable& cos_table() {
  static const CosTable t;
  return t;
}

void fdct8x8(const double in[64], double out[64]) {
  const auto& t = cos_table();
  double tmp[64];
  for (int y = 0; y < 8; ++y)
    for (int u = 0; u < 8; ++u) {
      double s = 0;
      for (int x = 0; x < 8; ++x) s += in[y * 8 + x] * t.c[u][x];
      tmp[y * 8 + u] = s;
    }
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) {
      double s = 0;
      for (int y = 0; y < 8; ++y) s += tmp[y * 8 + u] * t.c[v][y];
      out[v * 8 + u] = s;
    }
}

void idct8x8(const double in[64], double out[64]) {
  const auto& t = cos_table();
  double tmp[64];
  for (int v = 0; v < 8; ++v)
    for (int x = 0; x < 8; ++x) {
      double s = 0;
      for (int u = 0; u < 8; ++u) s += in[v * 8 + u] * t.c[u][x];
      tmp[v * 8 + x] = s;
    }
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      double s = 0;
      for (int v = 0; v < 8; ++v) s += tmp[v * 8 + x] * t.c[v][y];
      out[y * 8 + x] = s;
    }
}

int quality_scaled(int base, int quality) {
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  return std::clamp((base * scale + 50) / 100, 1, 255);
}

// ---------------------------------------------------------------------------
// Encoder

struct HuffEncTable {
  std::uint16_t code[256];
  std::uint8_t size[256];
  HuffEncTable(const std::uint8_t bits[17], const std::uint8_t* vals) {
    std::memset(size, 0, sizeof(size));
    std::uint16_t c = 0;
    int k = 0;
    for (int len = 1; len <= 16; ++len) {
      for (int i = 0; i < bits[len]; ++i, ++k) {
        code[vals[k]] = c++;
        size[vals[k]] = static_cast<std::uint8_t>(len);
      }
      c <<= 1;
    }
  }
};

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}
  void put(std::uint32_t bits, int count) {
    acc_ = (acc_ << count) | (bits & ((1u << count) - 1));
    n_ += count;
    while (n_ >= 8) {
      const std::uint8_t b = static_cast<std::uint8_t>(acc_ >> (n_ - 8));
      out_.push_back(b);
      if (b == 0xFF) out_.push_back(0x00);
      n_ -= 8;
    }
  }
  void flush() {
    if (n_ > 0) put(0xFF, 8 - n_);  // pad with 1s
  }

 private:
  std::vector<std::uint8_t>& out_;
  std::uint64_t acc_ = 0;
  int n_ = 0;
};

int bit_category(int v) {
  int a = std::abs(v);
  int n = 0;
  while (a) { a >>= 1; ++n; }
  return n;
}

void encode_block(BitWriter& bw, const double block[64], const int quant[64],
                  const HuffEncTable& dc, const HuffEncTable& ac,
                  int& prev_dc) {
  double freq[64];
  fdct8x8(block, freq);
  int q[64];
  for (int i = 0; i < 64; ++i) {
    const double v = freq[kZigzag[i]] / quant[i];
    q[i] = static_cast<int>(std::lround(v));
  }

  const int diff = q[0] - prev_dc;
  prev_dc = q[0];
  const int dc_cat = bit_category(diff);
  bw.put(dc.code[dc_cat], dc.size[dc_cat]);
  if (dc_cat > 0) {
    const int bits = diff < 0 ? diff + (1 << dc_cat) - 1 : diff;
    bw.put(static_cast<std::uint32_t>(bits), dc_cat);
  }

  int run = 0;
  for (int i = 1; i < 64; ++i) {
    if (q[i] == 0) { ++run; continue; }
    while (run >= 16) {
      bw.put(ac.code[0xF0], ac.size[0xF0]);  // ZRL
      run -= 16;
    }
    const int cat = bit_category(q[i]);
    const int symbol = (run << 4) | cat;
    bw.put(ac.code[symbol], ac.size[symbol]);
    const int bits = q[i] < 0 ? q[i] + (1 << cat) - 1 : q[i];
    bw.put(static_cast<std::uint32_t>(bits), cat);
    run = 0;
  }
  if (run > 0) bw.put(ac.code[0x00], ac.size[0x00]);  // EOB
}

void put_marker(std::vector<std::uint8_t>& out, std::uint8_t m) {
  out.push_back(0xFF);
  out.push_back(m);
}

void put_segment(std::vector<std::uint8_t>& out, std::uint8_t m,
                 const std::vector<std::uint8_t>& body) {
  put_marker(out, m);
  const std::size_t len = body.size() + 2;
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.push_back(static_cast<std::uint8_t>(len));
  out.insert(out.end(), body.begin(), body.end());
}

// ---------------------------------------------------------------------------
// Decoder

struct HuffDecTable {
  // Canonical decode by code length.
  std::int32_t min_code[17], max_code[17];
  int val_ptr[17];
  std::uint8_t vals[256];
  bool present = false;

  void build(const std::uint8_t bits[17], const std::uint8_t* source_vals,
             int nvals) {
    std::memcpy(vals, source_vals, static_cast<std::size_t>(nvals));
    std::int32_t code = 0;
    int k = 0;
    for (int len = 1; len <= 16; ++len) {
      if (bits[len] == 0) {
        min_code[len] = 0;
        max_code[len] = -1;
      } else {
        val_ptr[len] = k;
        min_code[len] = code;
        code += bits[len];
        k += bits[len];
        max_code[len] = code - 1;
      }
      code <<= 1;
    }
    present = true;
  }
};

class BitReader {
 public:
  BitReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  int bit() {
    if (n_ == 0) {
      if (pos_ >= size_) throw IoError("jpeg: truncated entropy data");
      std::uint8_t b = data_[pos_++];
      if (b == 0xFF) {
        if (pos_ >= size_) throw IoError("jpeg: truncated entropy data");
        const std::uint8_t next = data_[pos_];
        if (next == 0x00) {
          ++pos_;
        } else if (next >= 0xD0 && next <= 0xD7) {
          // Restart markers are consumed by reset(); hitting one here means
          // the stream ended early. Treat remaining bits as zero.
          return 0;
        } else {
          // EOI or other marker: stop producing data.
          --pos_;
          return 0;
        }
      }
      acc_ = b;
      n_ = 8;
    }
    --n_;
    return (acc_ >> n_) & 1;
  }

  int bits(int count) {
    int v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | bit();
    return v;
  }

  // Aligns to a byte boundary and consumes an expected restart marker.
  void restart() {
    n_ = 0;
    while (pos_ + 1 < size_) {
      if (data_[pos_] == 0xFF && data_[pos_ + 1] >= 0xD0 &&
          data_[pos_ + 1] <= 0xD7) {
        pos_ += 2;
        return;
      }
      ++pos_;
    }
    throw IoError("jpeg: missing restart marker");
  }

  std::size_t pos() const { return pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::uint8_t acc_ = 0;
  int n_ = 0;
};

int huff_decode(BitReader& br, const HuffDecTable& t) {
  std::int32_t code = br.bit();
  for (int len = 1; len <= 16; ++len) {
    if (t.max_code[len] >= 0 && code <= t.max_code[len] &&
        code >= t.min_code[len])
      return t.vals[t.val_ptr[len] + (code - t.min_code[len])];
    code = (code << 1) | br.bit();
  }
  throw IoError("jpeg: invalid huffman code");
}

int extend(int v, int cat) {
  return v < (1 << (cat - 1)) ? v - (1 << cat) + 1 : v;
}

struct Component {
  int id = 0, h = 1, v = 1, tq = 0;
  int dc_table = 0, ac_table = 0;
  int prev_dc = 0;
  std::vector<double> plane;  // full-resolution after upsampling
  int blocks_w = 0, blocks_h = 0;
  std::vector<double> samples;  // subsampled plane, blocks_w*8 x blocks_h*8
};

}  // namespace

std::vector<std::uint8_t> encode_jpeg(const Raster& img, int quality) {
  img.check();
  if (quality < 1 || quality > 100)
    throw ValidationError("jpeg quality must be in 1..100");

  const int w = img.width, h = img.height;

  // Color convert; alpha is dropped.
  std::vector<double> Y(static_cast<std::size_t>(w) * h);
  std::vector<double> Cb(Y.size()), Cr(Y.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgba p = pixel(img, x, y);
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      Y[i] = 0.299 * p.r + 0.587 * p.g + 0.114 * p.b - 128.0;
      Cb[i] = -0.168736 * p.r - 0.331264 * p.g + 0.5 * p.b;
      Cr[i] = 0.5 * p.r - 0.418688 * p.g - 0.081312 * p.b;
    }
  }

  // 2x2 box subsample for chroma.
  const int cw = (w + 1) / 2, ch = (h + 1) / 2;
  std::vector<double> cb2(static_cast<std::size_t>(cw) * ch);
  std::vector<double> cr2(cb2.size());
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      double sb = 0, sr = 0;
      int n = 0;
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) {
          const int sx = 2 * x + dx, sy = 2 * y + dy;
          if (sx < w && sy < h) {
            sb += Cb[static_cast<std::size_t>(sy) * w + sx];
            sr += Cr[static_cast<std::size_t>(sy) * w + sx];
            ++n;
          }
        }
      cb2[static_cast<std::size_t>(y) * cw + x] = sb / n;
      cr2[static_cast<std::size_t>(y) * cw + x] = sr / n;
    }
  }

  int lq[64], cq[64];
  for (int i = 0; i < 64; ++i) {
    lq[i] = quality_scaled(kLumaQuant[kZigzag[i]], quality);
    cq[i] = quality_scaled(kChromaQuant[kZigzag[i]], quality);
  }

  std::vector<std::uint8_t> out;
  put_marker(out, 0xD8);  // SOI

  {
    std::vector<std::uint8_t> app0 = {'J', 'F', 'I', 'F', 0, 1, 1,
                                      0,   0,   1,   0,   1, 0, 0};
    put_segment(out, 0xE0, app0);
  }
  {
    std::vector<std::uint8_t> dqt;
    dqt.push_back(0);
    for (int i = 0; i < 64; ++i) dqt.push_back(static_cast<std::uint8_t>(lq[i]));
    dqt.push_back(1);
    for (int i = 0; i < 64; ++i) dqt.push_back(static_cast<std::uint8_t>(cq[i]));
    put_segment(out, 0xDB, dqt);
  }
  {
    std::vector<std::uint8_t> sof = {8,
                                     static_cast<std::uint8_t>(h >> 8),
                                     static_cast<std::uint8_t>(h),
                                     static_cast<std::uint8_t>(w >> 8),
                                     static_cast<std::uint8_t>(w),
                                     3,
                                     1, 0x22, 0,   // Y: 2x2, table 0
                                     2, 0x11, 1,   // Cb
                                     3, 0x11, 1};  // Cr
    put_segment(out, 0xC0, sof);
  }
  auto put_dht = [&](int cls, int id, const std::uint8_t bits[17],
                     const std::uint8_t* vals) {
    std::vector<std::uint8_t> dht;
    dht.push_back(static_cast<std::uint8_t>((cls << 4) | id));
    int total = 0;
    for (int i = 1; i <= 16; ++i) {
      dht.push_back(bits[i]);
      total += bits[i];
    }
    dht.insert(dht.end(), vals, vals + total);
    put_segment(out, 0xC4, dht);
  };
  put_dht(0, 0, kDcLumaBits, kDcLumaVals);
  put_dht(1, 0, kAcLumaBits, kAcLumaVals);
  put_dht(0, 1, kDcChromaBits, kDcChromaVals);
  put_dht(1, 1, kAcChromaBits, kAcChromaVals);
  {
    std::vector<std::uint8_t> sos = {3, 1, 0x00, 2, 0x11, 3, 0x11, 0, 63, 0};
    put_segment(out, 0xDA, sos);
  }

  const HuffEncTable dc_luma(kDcLumaBits, kDcLumaVals);
  const HuffEncTable ac_luma(kAcLumaBits, kAcLumaVals);
  const HuffEncTable dc_chroma(kDcChromaBits, kDcChromaVals);
  const HuffEncTable ac_chroma(kAcChromaBits, kAcChromaVals);

  BitWriter bw(out);
  const int mcus_x = (w + 15) / 16, mcus_y = (h + 15) / 16;
  int dc_y = 0, dc_cb = 0, dc_cr = 0;

  auto fetch = [](const std::vector<double>& plane, int pw, int ph, int x,
                  int y) {
    x = std::min(x, pw - 1);
    y = std::min(y, ph - 1);
    return plane[static_cast<std::size_t>(y) * pw + x];
  };

  double block[64];
  for (int my = 0; my < mcus_y; ++my) {
    for (int mx = 0; mx < mcus_x; ++mx) {
      for (int by = 0; by < 2; ++by)
        for (int bx = 0; bx < 2; ++bx) {
          const int ox = mx * 16 + bx * 8, oy = my * 16 + by * 8;
          for (int yy = 0; yy < 8; ++yy)
            for (int xx = 0; xx < 8; ++xx)
              block[yy * 8 + xx] = fetch(Y, w, h, ox + xx, oy + yy);
          encode_block(bw, block, lq, dc_luma, ac_luma, dc_y);
        }
      for (int yy = 0; yy < 8; ++yy)
        for (int xx = 0; xx < 8; ++xx)
          block[yy * 8 + xx] = fetch(cb2, cw, ch, mx * 8 + xx, my * 8 + yy);
      encode_block(bw, block, cq, dc_chroma, ac_chroma, dc_cb);
      for (int yy = 0; yy < 8; ++yy)
        for (int xx = 0; xx < 8; ++xx)
          block[yy * 8 + xx] = fetch(cr2, cw, ch, mx * 8 + xx, my * 8 + yy);
      encode_block(bw, block, cq, dc_chroma, ac_chroma, dc_cr);
    }
  }
  bw.flush();
  put_marker(out, 0xD9);  // EOI
  return out;
}

Raster decode_jpeg(const std::uint8_t* data, std::size_t size) {
  if (size < 4 || data[0] != 0xFF || data[1] != 0xD8)
    throw IoError("jpeg: bad signature");

  int width = 0, height = 0;
  std::array<int, 4> quant_defined{};
  int quant[4][64];
  HuffDecTable dc_tables[4], ac_tables[4];
  std::vector<Component> comps;
  int restart_interval = 0;
  std::size_t scan_start = 0;

  std::size_t pos = 2;
  while (pos + 4 <= size) {
    if (data[pos] != 0xFF) throw IoError("jpeg: marker expected");
    const std::uint8_t marker = data[pos + 1];
    if (marker == 0xD8) { pos += 2; continue; }
    if (marker == 0x01 || (marker >= 0xD0 && marker <= 0xD7)) {
      pos += 2;
      continue;
    }
    const std::size_t len = (std::size_t(data[pos + 2]) << 8) | data[pos + 3];
    if (pos + 2 + len > size) throw IoError("jpeg: truncated segment");
    const std::uint8_t* body = data + pos + 4;
    const std::size_t body_len = len - 2;

    if (marker == 0xC0 || marker == 0xC1) {
      height = (body[1] << 8) | body[2];
      width = (body[3] << 8) | body[4];
      const int ncomp = body[5];
      if (ncomp != 1 && ncomp != 3)
        throw IoError("jpeg: only 1 or 3 components supported");
      comps.resize(static_cast<std::size_t>(ncomp));
      for (int i = 0; i < ncomp; ++i) {
        comps[i].id = body[6 + 3 * i];
        comps[i].h = body[7 + 3 * i] >> 4;
        comps[i].v = body[7 + 3 * i] & 0x0F;
        comps[i].tq = body[8 + 3 * i];
        if (comps[i].h < 1 || comps[i].h > 2 || comps[i].v < 1 ||
            comps[i].v > 2)
          throw IoError("jpeg: sampling factors above 2 unsupported");
      }
    } else if (marker == 0xC2) {
      throw IoError("jpeg: progressive streams unsupported");
    } else if (marker == 0xDB) {
      std::size_t off = 0;
      while (off < body_len) {
        const int precision = body[off] >> 4;
        const int id = body[off] & 0x0F;
        if (precision != 0) throw IoError("jpeg: 16-bit quant unsupported");
        for (int i = 0; i < 64; ++i) quant[id][i] = body[off + 1 + i];
        quant_defined[static_cast<std::size_t>(id)] = 1;
        off += 65;
      }
    } else if (marker == 0xC4) {
      std::size_t off = 0;
      while (off < body_len) {
        const int cls = body[off] >> 4;
        const int id = body[off] & 0x0F;
        std::uint8_t bits[17] = {0};
        int total = 0;
        for (int i = 1; i <= 16; ++i) {
          bits[i] = body[off + static_cast<std::size_t>(i)];
          total += bits[i];
        }
        if (total > 256) throw IoError("jpeg: bad huffman table");
        (cls == 0 ? dc_tables[id] : ac_tables[id])
            .build(bits, body + off + 17, total);
        off += 17 + static_cast<std::size_t>(total);
      }
    } else if (marker == 0xDD) {
      restart_interval = (body[0] << 8) | body[1];
    } else if (marker == 0xDA) {
      const int ncomp = body[0];
      for (int i = 0; i < ncomp; ++i) {
        const int id = body[1 + 2 * i];
        for (auto& c : comps)
          if (c.id == id) {
            c.dc_table = body[2 + 2 * i] >> 4;
            c.ac_table = body[2 + 2 * i] & 0x0F;
          }
      }
      scan_start = pos + 2 + len;
      break;
    }
    pos += 2 + len;
  }

  if (comps.empty() || width < 1 || height < 1)
    throw IoError("jpeg: missing frame header");

  int hmax = 1, vmax = 1;
  for (const auto& c : comps) {
    hmax = std::max(hmax, c.h);
    vmax = std::max(vmax, c.v);
  }
  const int mcus_x = (width + hmax * 8 - 1) / (hmax * 8);
  const int mcus_y = (height + vmax * 8 - 1) / (vmax * 8);

  for (auto& c : comps) {
    c.blocks_w = mcus_x * c.h;
    c.blocks_h = mcus_y * c.v;
    c.samples.assign(
        static_cast<std::size_t>(c.blocks_w) * 8 * c.blocks_h * 8, 0.0);
    if (!quant_defined[static_cast<std::size_t>(c.tq)])
      throw IoError("jpeg: missing quant table");
  }

  BitReader br(data + scan_start, size - scan_start);
  double coeffs[64], block[64];
  int mcu_count = 0;
  for (int my = 0; my < mcus_y; ++my) {
    for (int mx = 0; mx < mcus_x; ++mx) {
      if (restart_interval && mcu_count > 0 &&
          mcu_count % restart_interval == 0) {
        br.restart();
        for (auto& c : comps) c.prev_dc = 0;
      }
      ++mcu_count;
      for (auto& c : comps) {
        const auto& dc = dc_tables[c.dc_table];
        const auto& ac = ac_tables[c.ac_table];
        if (!dc.present || !ac.present)
          throw IoError("jpeg: missing huffman table");
        for (int by = 0; by < c.v; ++by) {
          for (int bx = 0; bx < c.h; ++bx) {
            std::memset(coeffs, 0, sizeof(coeffs));
            const int dc_cat = huff_decode(br, dc);
            int diff = 0;
            if (dc_cat > 0) diff = extend(br.bits(dc_cat), dc_cat);
            c.prev_dc += diff;
            coeffs[0] = c.prev_dc * quant[c.tq][0];
            for (int k = 1; k < 64;) {
              const int rs = huff_decode(br, ac);
              const int run = rs >> 4, cat = rs & 0x0F;
              if (cat == 0) {
                if (run == 15) { k += 16; continue; }
                break;  // EOB
              }
              k += run;
              if (k > 63) throw IoError("jpeg: coefficient overrun");
              coeffs[kZigzag[k]] = extend(br.bits(cat), cat) * quant[c.tq][k];
              ++k;
            }
            idct8x8(coeffs, block);
            const int ox = (mx * c.h + bx) * 8, oy = (my * c.v + by) * 8;
            const int row_w = c.blocks_w * 8;
            for (int yy = 0; yy < 8; ++yy)
              for (int xx = 0; xx < 8; ++xx)
                c.samples[static_cast<std::size_t>(oy + yy) * row_w + ox + xx] =
                    block[yy * 8 + xx] + 128.0;
          }
        }
      }
    }
  }

  // Upsample each component to full resolution (sample replication).
  Raster out(width, height, 3);
  const bool gray = comps.size() == 1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double ycc[3] = {0.0, 0.0, 0.0};
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& c = comps[i];
        const int sx = x * c.h / hmax;
        const int sy = y * c.v / vmax;
        ycc[i] = c.samples[static_cast<std::size_t>(sy) * c.blocks_w * 8 + sx];
      }
      Rgba p;
      if (gray) {
        p.r = p.g = p.b = clamp_u8(ycc[0]);
      } else {
        const double Y = ycc[0], Cb = ycc[1] - 128.0, Cr = ycc[2] - 128.0;
        p.r = clamp_u8(Y + 1.402 * Cr);
        p.g = clamp_u8(Y - 0.344136 * Cb - 0.714136 * Cr);
        p.b = clamp_u8(Y + 1.772 * Cb);
      }
      put_pixel(out, x, y, p);
    }
  }
  return out;
}

}  // namespace augkit::image
