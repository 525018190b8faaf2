#include "augkit/audio/dsp.hpp"

#include <algorithm>
#include <cmath>

namespace augkit::audio {

namespace {

constexpr double kPi = 3.14159265358979323846;

double princarg(double phase) {
  return phase - 2.0 * kPi * std::round(phase / (2.0 * kPi));
}

std::size_t frame_count(std::size_t n, int window, int hop) {
  return 1 + (n + hop - 1) / hop;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

double median_of(std::vector<double>& scratch) {
  const std::size_t mid = scratch.size() / 2;
  std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
  double hi = scratch[mid];
  if (scratch.size() % 2 == 1) return hi;
  std::nth_element(scratch.begin(), scratch.begin() + mid - 1,
                   scratch.begin() + mid);
  return 0.5 * (scratch[mid - 1] + hi);
}

}  // namespace

void fft(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1 : -1);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto& x : data) x /= static_cast<double>(n);
}

std::vector<double> hann_window(int size) {
  if (size < 1) throw ValidationError("window size must be >= 1");
  std::vector<double> w(size);
  for (int i = 0; i < size; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * i / size));
  return w;
}

Stft stft(const std::vector<float>& signal, int window_size, int hop_size) {
  if (window_size < 4 || (window_size & (window_size - 1)) != 0)
    throw ValidationError("stft window must be a power of two >= 4");
  if (hop_size < 1 || hop_size > window_size)
    throw ValidationError("stft hop must be in [1, window]");
  if (signal.size() < static_cast<std::size_t>(window_size))
    throw ValidationError("buffer is shorter than one analysis window");

  const std::vector<double> window = hann_window(window_size);
  const int pad = window_size / 2;
  const std::size_t n_frames = frame_count(signal.size(), window_size, hop_size);

  Stft out;
  out.window_size = window_size;
  out.hop_size = hop_size;
  out.signal_frames = signal.size();
  out.frames.resize(n_frames);
  const auto sample_at = [&](std::ptrdiff_t t) -> double {
    const std::ptrdiff_t i = t - pad;
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(signal.size())) return 0.0;
    return signal[static_cast<std::size_t>(i)];
  };
  for (std::size_t m = 0; m < n_frames; ++m) {
    std::vector<std::complex<double>> frame(window_size);
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(m) * hop_size;
    for (int i = 0; i < window_size; ++i)
      frame[i] = sample_at(start + i) * window[i];
    fft(frame, false);
    out.frames[m] = std::move(frame);
  }
  return out;
}

std::vector<float> istft(const Stft& spec, std::size_t length) {
  const int window_size = spec.window_size;
  const int hop = spec.hop_size;
  if (length == 0) length = spec.signal_frames;
  const std::vector<double> window = hann_window(window_size);
  const int pad = window_size / 2;

  const std::size_t total = length + 2 * static_cast<std::size_t>(pad) +
                            static_cast<std::size_t>(window_size);
  std::vector<double> num(total, 0.0), norm(total, 0.0);
  for (std::size_t m = 0; m < spec.frames.size(); ++m) {
    std::vector<std::complex<double>> frame = spec.frames[m];
    if (static_cast<int>(frame.size()) != window_size)
      throw ValidationError("stft frame size mismatch");
    fft(frame, true);
    const std::size_t start = m * hop;
    for (int i = 0; i < window_size; ++i) {
      const std::size_t t = start + i;
      if (t >= total) break;
      num[t] += frame[i].real() * window[i];
      norm[t] += window[i] * window[i];
    }
  }
  std::vector<float> out(length, 0.0f);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t t = i + pad;
    if (norm[t] > 1e-9) out[i] = static_cast<float>(num[t] / norm[t]);
  }
  return out;
}

std::vector<float> phase_vocoder(const std::vector<float>& signal, double rate,
                                 int window_size, int hop_size) {
  if (rate <= 0.0) throw ValidationError("stretch rate must be positive");
  const Stft in = stft(signal, window_size, hop_size);
  if (rate == 1.0) return istft(in);

  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(signal.size()) / rate));
  if (out_len == 0) throw ValidationError("stretch rate leaves no samples");
  const std::size_t n_in = in.frames.size();
  const std::size_t n_out = frame_count(out_len, window_size, hop_size);

  Stft out;
  out.window_size = window_size;
  out.hop_size = hop_size;
  out.signal_frames = out_len;
  out.frames.resize(n_out);

  std::vector<double> acc(window_size, 0.0);
  for (std::size_t m = 0; m < n_out; ++m) {
    const double s = static_cast<double>(m) * rate;
    const std::size_t i0 = std::min(
        static_cast<std::size_t>(s), n_in - 1);
    const std::size_t i1 = std::min(i0 + 1, n_in - 1);
    const double frac = std::clamp(s - static_cast<double>(i0), 0.0, 1.0);

    std::vector<std::complex<double>> frame(window_size);
    if (m == 0) {
      frame = in.frames[0];
      for (int k = 0; k < window_size; ++k) acc[k] = std::arg(in.frames[0][k]);
    } else {
      for (int k = 0; k < window_size; ++k) {
        const double mag = (1.0 - frac) * std::abs(in.frames[i0][k]) +
                           frac * std::abs(in.frames[i1][k]);
        const double omega = 2.0 * kPi * k * hop_size / window_size;
        double dphi = omega;
        if (i1 != i0)
          dphi += princarg(std::arg(in.frames[i1][k]) -
                           std::arg(in.frames[i0][k]) - omega);
        acc[k] += dphi;
        frame[k] = std::polar(mag, acc[k]);
      }
    }
    out.frames[m] = std::move(frame);
  }
  return istft(out, out_len);
}

std::vector<float> resample_sinc(const std::vector<float>& signal, double step,
                                 std::size_t out_len) {
  if (step <= 0.0) throw ValidationError("resample step must be positive");
  if (signal.empty() || out_len == 0) return std::vector<float>(out_len, 0.0f);

  const double cutoff = std::min(1.0, 1.0 / step);
  const double half_width = 32.0 * std::max(1.0, step);
  std::vector<float> out(out_len, 0.0f);
  for (std::size_t j = 0; j < out_len; ++j) {
    const double center = static_cast<double>(j) * step;
    const auto lo = static_cast<std::ptrdiff_t>(std::ceil(center - half_width));
    const auto hi = static_cast<std::ptrdiff_t>(std::floor(center + half_width));
    double acc = 0.0, wsum = 0.0;
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, lo);
         i <= std::min<std::ptrdiff_t>(signal.size() - 1, hi); ++i) {
      const double t = static_cast<double>(i) - center;
      const double taper = 0.5 * (1.0 + std::cos(kPi * t / half_width));
      const double w = cutoff * sinc(cutoff * t) * taper;
      acc += signal[static_cast<std::size_t>(i)] * w;
      wsum += w;
    }
    out[j] = wsum > 1e-12 ? static_cast<float>(acc / wsum) : 0.0f;
  }
  return out;
}

Biquad Biquad::low_pass(double cutoff_hz, double q, int sample_rate) {
  if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate / 2.0)
    throw ValidationError("cutoff must lie in (0, sample_rate/2)");
  const double w0 = 2.0 * kPi * cutoff_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  return {(1.0 - c) / 2.0 / a0, (1.0 - c) / a0, (1.0 - c) / 2.0 / a0,
          -2.0 * c / a0, (1.0 - alpha) / a0};
}

Biquad Biquad::high_pass(double cutoff_hz, double q, int sample_rate) {
  if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate / 2.0)
    throw ValidationError("cutoff must lie in (0, sample_rate/2)");
  const double w0 = 2.0 * kPi * cutoff_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  return {(1.0 + c) / 2.0 / a0, -(1.0 + c) / a0, (1.0 + c) / 2.0 / a0,
          -2.0 * c / a0, (1.0 - alpha) / a0};
}

Biquad Biquad::peaking(double center_hz, double q, double gain_db,
                       int sample_rate) {
  if (center_hz <= 0.0 || center_hz >= sample_rate / 2.0)
    throw ValidationError("center must lie in (0, sample_rate/2)");
  const double amp = std::pow(10.0, gain_db / 40.0);
  const double w0 = 2.0 * kPi * center_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha / amp;
  return {(1.0 + alpha * amp) / a0, -2.0 * c / a0, (1.0 - alpha * amp) / a0,
          -2.0 * c / a0, (1.0 - alpha / amp) / a0};
}

std::vector<float> Biquad::run(const std::vector<float>& x) const {
  std::vector<float> y(x.size());
  double z1 = 0.0, z2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double in = x[i];
    const double out = b0 * in + z1;
    z1 = b1 * in - a1 * out + z2;
    z2 = b2 * in - a2 * out;
    y[i] = static_cast<float>(out);
  }
  return y;
}

HpssMasks hpss_masks(const Stft& spec, int kernel_size) {
  if (kernel_size < 3 || kernel_size % 2 == 0)
    throw ValidationError("hpss kernel must be odd and >= 3");
  const int n_bins = spec.window_size / 2 + 1;
  const int n_frames = static_cast<int>(spec.frames.size());
  const int r = kernel_size / 2;

  std::vector<std::vector<double>> mag(
      n_frames, std::vector<double>(n_bins, 0.0));
  for (int m = 0; m < n_frames; ++m)
    for (int k = 0; k < n_bins; ++k) mag[m][k] = std::abs(spec.frames[m][k]);

  HpssMasks masks;
  masks.harmonic.assign(n_frames, std::vector<double>(n_bins, 0.0));
  masks.percussive.assign(n_frames, std::vector<double>(n_bins, 0.0));
  std::vector<double> scratch;
  scratch.reserve(kernel_size);
  for (int m = 0; m < n_frames; ++m)
    for (int k = 0; k < n_bins; ++k) {
      scratch.clear();
      for (int d = std::max(0, m - r); d <= std::min(n_frames - 1, m + r); ++d)
        scratch.push_back(mag[d][k]);
      const double harm = median_of(scratch);
      scratch.clear();
      for (int d = std::max(0, k - r); d <= std::min(n_bins - 1, k + r); ++d)
        scratch.push_back(mag[m][d]);
      const double perc = median_of(scratch);

      const double h2 = harm * harm, p2 = perc * perc;
      const double h_mask = h2 + p2 > 0.0 ? h2 / (h2 + p2) : 0.5;
      masks.harmonic[m][k] = h_mask;
      masks.percussive[m][k] = 1.0 - h_mask;
    }
  return masks;
}

}  // namespace augkit::audio
