#pragma once

#include <complex>
#include <vector>

#include "augkit/audio/buffer.hpp"

namespace augkit::audio {

// In-place radix-2 FFT; size must be a power of two.
void fft(std::vector<std::complex<double>>& data, bool inverse);

// Periodic Hann window.
std::vector<double> hann_window(int size);

// Short-time transform with centered (half-window zero padded) frames.
struct Stft {
  std::vector<std::vector<std::complex<double>>> frames;  // full spectra
  int window_size = 2048;
  int hop_size = 512;
  std::size_t signal_frames = 0;  // original sample count, for inversion

  int bins() const { return window_size; }
};

// Requires at least one window of samples.
Stft stft(const std::vector<float>& signal, int window_size = 2048,
          int hop_size = 512);

// Weighted overlap-add inverse; reconstructs `length` samples (defaults to
// the recorded signal length).
std::vector<float> istft(const Stft& spec, std::size_t length = 0);

// Phase-vocoder stretch: output duration = input / rate, pitch preserved.
std::vector<float> phase_vocoder(const std::vector<float>& signal, double rate,
                                 int window_size = 2048, int hop_size = 512);

// Windowed-sinc resample by `step` source samples per output sample
// (step > 1 shortens and anti-aliases).
std::vector<float> resample_sinc(const std::vector<float>& signal, double step,
                                 std::size_t out_len);

// Transposed direct form II biquad, zero initial state.
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0, a1 = 0, a2 = 0;  // normalized by a0

  static Biquad low_pass(double cutoff_hz, double q, int sample_rate);
  static Biquad high_pass(double cutoff_hz, double q, int sample_rate);
  static Biquad peaking(double center_hz, double q, double gain_db,
                        int sample_rate);

  std::vector<float> run(const std::vector<float>& x) const;
};

// Median-filter harmonic/percussive masks over an STFT magnitude grid;
// the two soft masks sum to one in every bin by construction.
struct HpssMasks {
  std::vector<std::vector<double>> harmonic;    // per frame, bins 0..N/2
  std::vector<std::vector<double>> percussive;
};
HpssMasks hpss_masks(const Stft& spec, int kernel_size);

}  // namespace augkit::audio
