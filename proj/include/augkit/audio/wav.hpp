#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augkit/audio/buffer.hpp"

namespace augkit::audio {

// RIFF/WAVE with PCM 16-bit or IEEE float 32-bit payloads.
AudioBuffer load_wav(const std::string& path);
AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes);

// format is "pcm16" or "float32".
void save_wav(const AudioBuffer& buf, const std::string& path,
              const std::string& format = "pcm16");
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf,
                                     const std::string& format = "pcm16");

// Headerless interleaved float32 little-endian.
AudioBuffer load_raw_f32(const std::string& path, int sample_rate,
                         int channels);
void save_raw_f32(const AudioBuffer& buf, const std::string& path);

}  // namespace augkit::audio
