#include "augkit/audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "augkit/image/codecs.hpp"

namespace augkit::audio {

namespace {

std::uint32_t read_u32(const std::vector<std::uint8_t>& b, std::size_t off) {
  if (off + 4 > b.size()) throw IoError("wav data is truncated");
  return b[off] | (b[off + 1] << 8) | (b[off + 2] << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::uint16_t read_u16(const std::vector<std::uint8_t>& b, std::size_t off) {
  if (off + 2 > b.size()) throw IoError("wav data is truncated");
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v & 0xFF));
  b.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

float f32_from_le(const std::vector<std::uint8_t>& b, std::size_t off) {
  std::uint32_t bits = read_u32(b, off);
  float out;
  std::memcpy(&out, &bits, 4);
  return out;
}

}  // namespace

AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes) {
  const auto tag_is = [&](std::size_t off, const char* tag) {
    return bytes.size() >= off + 4 &&
           std::equal(tag, tag + 4, bytes.begin() + off);
  };
  if (bytes.size() < 12 || !tag_is(0, "RIFF") || !tag_is(8, "WAVE"))
    throw IoError("not a RIFF/WAVE stream");

  int format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_off = 0, data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t len = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (tag_is(pos, "fmt ")) {
      format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
    } else if (tag_is(pos, "data")) {
      data_off = body;
      data_len = std::min<std::size_t>(len, bytes.size() - body);
    }
    pos = body + len + (len % 2);  // chunks are word aligned
  }
  if (channels < 1 || rate == 0) throw IoError("wav has no valid fmt chunk");
  if (data_off == 0) throw IoError("wav has no data chunk");

  const bool pcm16 = format == 1 && bits == 16;
  const bool f32 = format == 3 && bits == 32;
  if (!pcm16 && !f32)
    throw IoError("unsupported wav encoding (need PCM16 or float32)");

  const std::size_t bytes_per = pcm16 ? 2 : 4;
  const std::size_t frames = data_len / (bytes_per * channels);
  AudioBuffer out(channels, frames, static_cast<int>(rate));
  for (std::size_t i = 0; i < frames; ++i)
    for (int c = 0; c < channels; ++c) {
      const std::size_t off = data_off + (i * channels + c) * bytes_per;
      if (pcm16) {
        const auto raw = static_cast<std::int16_t>(read_u16(bytes, off));
        out.samples[c][i] = std::max(-1.0f, raw / 32767.0f);
      } else {
        out.samples[c][i] = std::clamp(f32_from_le(bytes, off), -1.0f, 1.0f);
      }
    }
  return out;
}

AudioBuffer load_wav(const std::string& path) {
  return decode_wav(image::read_file(path));
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf,
                                     const std::string& format) {
  buf.check();
  const bool pcm16 = format == "pcm16";
  if (!pcm16 && format != "float32")
    throw ValidationError("wav format must be pcm16 or float32");

  const int channels = buf.channels();
  const std::size_t frames = buf.frames();
  const std::size_t bytes_per = pcm16 ? 2 : 4;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(frames * channels * bytes_per);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);
  const auto put_tag = [&](const char* tag) {
    out.insert(out.end(), tag, tag + 4);
  };
  put_tag("RIFF");
  put_u32(out, 36 + data_len);
  put_tag("WAVE");
  put_tag("fmt ");
  put_u32(out, 16);
  put_u16(out, pcm16 ? 1 : 3);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate * channels *
                                          bytes_per));
  put_u16(out, static_cast<std::uint16_t>(channels * bytes_per));
  put_u16(out, static_cast<std::uint16_t>(bytes_per * 8));
  put_tag("data");
  put_u32(out, data_len);
  for (std::size_t i = 0; i < frames; ++i)
    for (int c = 0; c < channels; ++c) {
      const float v = std::clamp(buf.samples[c][i], -1.0f, 1.0f);
      if (pcm16) {
        put_u16(out, static_cast<std::uint16_t>(
                         static_cast<std::int16_t>(std::lround(v * 32767.0))));
      } else {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_u32(out, bits);
      }
    }
  return out;
}

void save_wav(const AudioBuffer& buf, const std::string& path,
              const std::string& format) {
  const std::vector<std::uint8_t> bytes = encode_wav(buf, format);
  image::write_file(path, bytes.data(), bytes.size());
}

AudioBuffer load_raw_f32(const std::string& path, int sample_rate,
                         int channels) {
  if (channels < 1) throw ValidationError("raw audio needs channels >= 1");
  const std::vector<std::uint8_t> bytes = image::read_file(path);
  if (bytes.size() % (4 * channels) != 0)
    throw IoError("raw f32 size is not a whole number of frames");
  const std::size_t frames = bytes.size() / (4 * channels);
  AudioBuffer out(channels, frames, sample_rate);
  for (std::size_t i = 0; i < frames; ++i)
    for (int c = 0; c < channels; ++c)
      out.samples[c][i] =
          std::clamp(f32_from_le(bytes, (i * channels + c) * 4), -1.0f, 1.0f);
  return out;
}

void save_raw_f32(const AudioBuffer& buf, const std::string& path) {
  buf.check();
  std::vector<std::uint8_t> out;
  out.reserve(buf.frames() * buf.channels() * 4);
  for (std::size_t i = 0; i < buf.frames(); ++i)
    for (int c = 0; c < buf.channels(); ++c) {
      const float v = buf.samples[c][i];
      std::uint32_t bits;
      std::memcpy(&bits, &v, 4);
      put_u32(out, bits);
    }
  image::write_file(path, out.data(), out.size());
}

}  // namespace augkit::audio
