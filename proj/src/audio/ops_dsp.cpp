#include <algorithm>
#include <cmath>

#include "augkit/audio/dsp.hpp"
#include "catalog_parts.hpp"

namespace augkit::audio {

namespace {

constexpr int kWindow = 2048;
constexpr int kHop = 512;
constexpr double kButterworthQ = 0.70710678118654752;

void require_window(const AudioBuffer& buf, const char* op) {
  if (buf.frames() < kWindow)
    throw ValidationError(std::string(op) +
                          ": buffer is shorter than one analysis window");
}

AudioBuffer map_channels(
    const AudioBuffer& buf,
    const std::function<std::vector<float>(const std::vector<float>&)>& fn) {
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.reserve(buf.samples.size());
  for (const auto& channel : buf.samples) out.samples.push_back(fn(channel));
  clip_samples(out);
  out.check();
  return out;
}

AudioBuffer op_time_stretch(const AudioBuffer& buf, double rate,
                            const char* op) {
  require_window(buf, op);
  if (rate == 1.0) return buf;
  return map_channels(buf, [&](const std::vector<float>& ch) {
    return phase_vocoder(ch, rate, kWindow, kHop);
  });
}

AudioBuffer op_pitch_shift(const AudioBuffer& buf, double semitones) {
  require_window(buf, "pitch_shift");
  if (semitones == 0.0) return buf;
  const double ratio = std::pow(2.0, semitones / 12.0);
  return map_channels(buf, [&](const std::vector<float>& ch) {
    const std::vector<float> stretched =
        phase_vocoder(ch, 1.0 / ratio, kWindow, kHop);
    return resample_sinc(stretched, ratio, ch.size());
  });
}

AudioBuffer op_speed(const AudioBuffer& buf, double factor) {
  if (factor == 1.0) return buf;
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(buf.frames()) / factor));
  if (out_len == 0) throw ValidationError("speed: factor leaves no samples");
  return map_channels(buf, [&](const std::vector<float>& ch) {
    return resample_sinc(ch, factor, out_len);
  });
}

// Median-mask separation; keep == true keeps the harmonic component.
AudioBuffer op_hpss(const AudioBuffer& buf, int kernel, bool keep_harmonic,
                    const char* op) {
  require_window(buf, op);
  return map_channels(buf, [&](const std::vector<float>& ch) {
    Stft spec = stft(ch, kWindow, kHop);
    const HpssMasks masks = hpss_masks(spec, kernel);
    const auto& mask = keep_harmonic ? masks.harmonic : masks.percussive;
    const int half = kWindow / 2;
    for (std::size_t m = 0; m < spec.frames.size(); ++m)
      for (int k = 0; k < kWindow; ++k) {
        const int folded = k <= half ? k : kWindow - k;
        spec.frames[m][k] *= mask[m][folded];
      }
    return istft(spec);
  });
}

AudioBuffer run_biquad(const AudioBuffer& buf, const Biquad& bq) {
  return map_channels(
      buf, [&](const std::vector<float>& ch) { return bq.run(ch); });
}

// Schroeder reverberator: four parallel feedback combs into two series
// allpasses, mixed with the dry path.
std::vector<float> schroeder(const std::vector<float>& x, int sample_rate,
                             double room_size, double wet, double dry) {
  static constexpr int kCombs[4] = {1116, 1188, 1277, 1356};
  static constexpr int kAllpass[2] = {556, 441};
  const double rate_scale = sample_rate / 44100.0;
  const double feedback = 0.7 + 0.28 * room_size;

  std::vector<double> mixed(x.size(), 0.0);
  for (int delay_44k : kCombs) {
    const int delay = std::max(1, static_cast<int>(std::lround(
                                      delay_44k * rate_scale)));
    std::vector<double> line(delay, 0.0);
    std::size_t idx = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      const double out = line[idx];
      line[idx] = x[t] + out * feedback;
      mixed[t] += out * 0.25;
      idx = (idx + 1) % delay;
    }
  }
  for (int delay_44k : kAllpass) {
    const int delay = std::max(1, static_cast<int>(std::lround(
                                      delay_44k * rate_scale)));
    std::vector<double> line(delay, 0.0);
    std::size_t idx = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      const double buffered = line[idx];
      const double out = buffered - 0.5 * mixed[t];
      line[idx] = mixed[t] + 0.5 * out;
      mixed[t] = out;
      idx = (idx + 1) % delay;
    }
  }
  std::vector<float> y(x.size());
  for (std::size_t t = 0; t < x.size(); ++t)
    y[t] = static_cast<float>(dry * x[t] + wet * mixed[t]);
  return y;
}

}  // namespace

double log2_factor_intensity(double factor) {
  if (factor <= 0.0) return 100.0;
  return std::min(std::abs(std::log2(factor)), 2.0) / 2.0 * 100.0;
}

double semitone_intensity(double semitones) {
  return std::min(std::abs(semitones), 24.0) / 24.0 * 100.0;
}

void register_dsp_ops(Registry<AudioBuffer>& reg) {
  reg.add({
      .name = "pitch_shift",
      .schema = {{"n_semitones", ParamType::Float, false, 1.0, -24.0, 24.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "n_semitones", -12.0, 12.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_pitch_shift(buf, get_float(p, "n_semitones"));
      },
      .intensity = [](const Params& p) {
        return semitone_intensity(get_float(p, "n_semitones"));
      },
  });
  reg.add({
      .name = "time_stretch",
      .schema = {{"rate", ParamType::Float, false, 1.5, 0.01, 100.0, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "rate", 0.5, 2.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_time_stretch(buf, get_float(p, "rate"), "time_stretch");
      },
      .intensity = [](const Params& p) {
        return log2_factor_intensity(get_float(p, "rate"));
      },
  });
  reg.add({
      .name = "tempo",
      .schema = {{"factor", ParamType::Float, false, 2.0, 0.01, 100.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.5, 2.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_time_stretch(buf, get_float(p, "factor"), "tempo");
      },
      .intensity = [](const Params& p) {
        return log2_factor_intensity(get_float(p, "factor"));
      },
  });
  reg.add({
      .name = "speed",
      .schema = {{"factor", ParamType::Float, false, 2.0, 0.01, 100.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "factor", 0.5, 2.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_speed(buf, get_float(p, "factor"));
      },
      .intensity = [](const Params& p) {
        return log2_factor_intensity(get_float(p, "factor"));
      },
  });
  reg.add({
      .name = "harmonic",
      .schema = {{"kernel_size", ParamType::Int, false, std::int64_t{17}, 3.0,
                  99.0}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_hpss(buf, static_cast<int>(get_int(p, "kernel_size")), true,
                       "harmonic");
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "percussive",
      .schema = {{"kernel_size", ParamType::Int, false, std::int64_t{17}, 3.0,
                  99.0}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_hpss(buf, static_cast<int>(get_int(p, "kernel_size")), false,
                       "percussive");
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "low_pass_filter",
      .schema = {{"cutoff_hz", ParamType::Float, false, 3000.0, 1.0, 1e6}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return run_biquad(buf, Biquad::low_pass(get_float(p, "cutoff_hz"),
                                                kButterworthQ,
                                                buf.sample_rate));
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "high_pass_filter",
      .schema = {{"cutoff_hz", ParamType::Float, false, 400.0, 1.0, 1e6}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return run_biquad(buf, Biquad::high_pass(get_float(p, "cutoff_hz"),
                                                 kButterworthQ,
                                                 buf.sample_rate));
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "peaking_equalizer",
      .schema = {{"center_hz", ParamType::Float, false, 1000.0, 1.0, 1e6},
                 {"q", ParamType::Float, false, 1.0, 0.01, 100.0},
                 {"gain_db", ParamType::Float, false, 3.0, -60.0, 60.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "gain_db", -15.0, 15.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const double gain = get_float(p, "gain_db");
        if (gain == 0.0) return buf;
        return run_biquad(buf,
                          Biquad::peaking(get_float(p, "center_hz"),
                                          get_float(p, "q"), gain,
                                          buf.sample_rate));
      },
      .intensity = [](const Params& p) {
        return std::min(std::abs(get_float(p, "gain_db")), 30.0) / 30.0 * 100.0;
      },
  });
  reg.add({
      .name = "reverb",
      .schema = {{"room_size", ParamType::Float, false, 0.5, 0.0, 1.0, {},
                  true},
                 {"wet_level", ParamType::Float, false, 0.3, 0.0, 1.0},
                 {"dry_level", ParamType::Float, false, 0.7, 0.0, 1.0}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "room_size", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const double wet = get_float(p, "wet_level");
        const double dry = get_float(p, "dry_level");
        if (wet == 0.0 && dry == 1.0) return buf;
        const double room = get_float(p, "room_size");
        return map_channels(buf, [&](const std::vector<float>& ch) {
          return schroeder(ch, buf.sample_rate, room, wet, dry);
        });
      },
      .intensity = [](const Params& p) {
        return std::clamp(get_float(p, "room_size"), 0.0, 1.0) * 100.0;
      },
  });
}

}  // namespace augkit::audio
