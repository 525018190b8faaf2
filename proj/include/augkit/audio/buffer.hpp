#pragma once

#include <cstddef>
#include <vector>

#include "augkit/core/metadata.hpp"
#include "augkit/errors.hpp"

namespace augkit::audio {

// Float PCM, one vector per channel, samples nominally in [-1, 1].
struct AudioBuffer {
  std::vector<std::vector<float>> samples;
  int sample_rate = 44100;

  AudioBuffer() = default;
  AudioBuffer(int channels, std::size_t frames, int rate)
      : samples(channels, std::vector<float>(frames, 0.0f)),
        sample_rate(rate) {
    check();
  }

  int channels() const { return static_cast<int>(samples.size()); }
  std::size_t frames() const { return samples.empty() ? 0 : samples[0].size(); }
  double seconds() const {
    return static_cast<double>(frames()) / sample_rate;
  }

  // Equal channel lengths, finite samples, positive rate.
  void check() const;

  bool operator==(const AudioBuffer&) const = default;
};

// Saturate to [-1, 1]; every transform output passes through this.
void clip_samples(AudioBuffer& buf);

// Mean square over all channels and frames.
double signal_power(const AudioBuffer& buf);

AudioBuffer to_mono_buffer(const AudioBuffer& buf);

// Sine test generator used by tests and benchmarks.
AudioBuffer sine_wave(double freq_hz, double seconds, int sample_rate,
                      double amplitude = 0.5, int channels = 1);

Shape shape_of(const AudioBuffer& buf);

}  // namespace augkit::audio
