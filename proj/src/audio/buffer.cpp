#include "augkit/audio/buffer.hpp"

#include <algorithm>
#include <cmath>

namespace augkit::audio {

void AudioBuffer::check() const {
  if (sample_rate <= 0)
    throw ValidationError("audio sample rate must be positive");
  if (samples.empty())
    throw ValidationError("audio buffer needs at least one channel");
  const std::size_t len = samples[0].size();
  for (const auto& channel : samples) {
    if (channel.size() != len)
      throw ValidationError("audio channels must have equal length");
    for (float v : channel)
      if (!std::isfinite(v))
        throw ValidationError("audio samples must be finite");
  }
}

void clip_samples(AudioBuffer& buf) {
  for (auto& channel : buf.samples)
    for (float& v : channel) v = std::clamp(v, -1.0f, 1.0f);
}

double signal_power(const AudioBuffer& buf) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& channel : buf.samples) {
    for (float v : channel) sum += static_cast<double>(v) * v;
    count += channel.size();
  }
  return count == 0 ? 0.0 : sum / count;
}

AudioBuffer to_mono_buffer(const AudioBuffer& buf) {
  if (buf.channels() == 1) return buf;
  AudioBuffer out(1, buf.frames(), buf.sample_rate);
  for (std::size_t i = 0; i < buf.frames(); ++i) {
    double sum = 0.0;
    for (const auto& channel : buf.samples) sum += channel[i];
    out.samples[0][i] = static_cast<float>(sum / buf.channels());
  }
  return out;
}

AudioBuffer sine_wave(double freq_hz, double seconds, int sample_rate,
                      double amplitude, int channels) {
  const auto frames =
      static_cast<std::size_t>(std::lround(seconds * sample_rate));
  AudioBuffer out(channels, frames, sample_rate);
  const double step = 2.0 * std::acos(-1.0) * freq_hz / sample_rate;
  for (std::size_t i = 0; i < frames; ++i) {
    const auto v = static_cast<float>(amplitude * std::sin(step * i));
    for (auto& channel : out.samples) channel[i] = v;
  }
  return out;
}

Shape shape_of(const AudioBuffer& buf) {
  return {"audio",
          {{"channels", static_cast<double>(buf.channels())},
           {"frames", static_cast<double>(buf.frames())},
           {"sample_rate", static_cast<double>(buf.sample_rate)}}};
}

}  // namespace augkit::audio
