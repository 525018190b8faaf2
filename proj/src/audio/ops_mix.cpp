#include <algorithm>
#include <cmath>

#include "augkit/assets.hpp"
#include "augkit/audio/dsp.hpp"
#include "augkit/audio/wav.hpp"
#include "catalog_parts.hpp"

namespace augkit::audio {

namespace {

AudioBuffer resample_to_rate(const AudioBuffer& buf, int rate) {
  if (buf.sample_rate == rate) return buf;
  const double step = static_cast<double>(buf.sample_rate) / rate;
  const auto out_len = static_cast<std::size_t>(
      std::llround(buf.frames() / step));
  AudioBuffer out;
  out.sample_rate = rate;
  for (const auto& ch : buf.samples)
    out.samples.push_back(resample_sinc(ch, step, out_len));
  return out;
}

// Channel-count reconciliation: mono sources are broadcast, anything else
// is folded to mono first.
AudioBuffer match_channels(const AudioBuffer& buf, int channels) {
  if (buf.channels() == channels) return buf;
  AudioBuffer mono = buf.channels() == 1 ? buf : to_mono_buffer(buf);
  AudioBuffer out;
  out.sample_rate = mono.sample_rate;
  for (int c = 0; c < channels; ++c) out.samples.push_back(mono.samples[0]);
  return out;
}

AudioBuffer load_background(const std::string& path, const AudioBuffer& like) {
  AudioBuffer bg = path.empty()
                       ? load_wav(AssetStore::instance().file(
                             "audio/background_noise.wav"))
                       : load_wav(path);
  if (bg.frames() == 0)
    throw ValidationError("background audio is empty");
  return match_channels(resample_to_rate(bg, like.sample_rate),
                        like.channels());
}

AudioBuffer op_add_background_noise(const AudioBuffer& buf,
                                    const std::string& path, double snr_db,
                                    Rng& rng) {
  const double p_signal = signal_power(buf);
  if (p_signal <= 0.0)
    throw ValidationError(
        "add_background_noise: input is silent, SNR is undefined");

  AudioBuffer noise;
  noise.sample_rate = buf.sample_rate;
  if (path.empty()) {
    // Generated white noise, redrawn per call.
    noise.samples.assign(buf.channels(), std::vector<float>(buf.frames()));
    for (auto& ch : noise.samples)
      for (auto& v : ch) v = static_cast<float>(rng.gaussian(0.0, 1.0));
  } else {
    const AudioBuffer src = load_background(path, buf);
    noise.samples.assign(buf.channels(), std::vector<float>(buf.frames()));
    for (int c = 0; c < buf.channels(); ++c)
      for (std::size_t i = 0; i < buf.frames(); ++i)
        noise.samples[c][i] = src.samples[c][i % src.frames()];
  }

  const double p_noise = signal_power(noise);
  if (p_noise <= 0.0)
    throw ValidationError("add_background_noise: noise source is silent");
  const double gain =
      std::sqrt(p_signal / (p_noise * std::pow(10.0, snr_db / 10.0)));

  AudioBuffer out = buf;
  for (int c = 0; c < out.channels(); ++c)
    for (std::size_t i = 0; i < out.frames(); ++i)
      out.samples[c][i] += static_cast<float>(gain * noise.samples[c][i]);
  clip_samples(out);
  return out;
}

AudioBuffer op_insert_in_background(const AudioBuffer& buf,
                                    const std::string& path,
                                    double offset_factor) {
  const AudioBuffer bg = load_background(path, buf);
  const auto offset = static_cast<std::size_t>(
      std::llround(offset_factor * static_cast<double>(bg.frames())));
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.assign(buf.channels(), {});
  for (int c = 0; c < buf.channels(); ++c) {
    auto& ch = out.samples[c];
    ch.reserve(bg.frames() + buf.frames());
    ch.insert(ch.end(), bg.samples[c].begin(), bg.samples[c].begin() + offset);
    ch.insert(ch.end(), buf.samples[c].begin(), buf.samples[c].end());
    ch.insert(ch.end(), bg.samples[c].begin() + offset, bg.samples[c].end());
  }
  clip_samples(out);
  return out;
}

AudioBuffer op_clip_segment(const AudioBuffer& buf, double offset_factor,
                            double duration_factor) {
  if (offset_factor + duration_factor > 1.0 + 1e-12)
    throw ValidationError("clip: offset + duration must be <= 1");
  const auto total = static_cast<double>(buf.frames());
  const auto start = static_cast<std::size_t>(std::llround(offset_factor * total));
  auto len = static_cast<std::size_t>(std::llround(duration_factor * total));
  len = std::max<std::size_t>(1, std::min(len, buf.frames() - start));
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  for (const auto& ch : buf.samples)
    out.samples.emplace_back(ch.begin() + start, ch.begin() + start + len);
  return out;
}

}  // namespace

void register_mix_ops(Registry<AudioBuffer>& reg) {
  reg.add({
      .name = "add_background_noise",
      .schema = {{"background_path", ParamType::String, false, std::string()},
                 {"snr_db", ParamType::Float, false, 10.0, -60.0, 120.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "snr_db", 0.0, 30.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng& rng) {
        return op_add_background_noise(buf, get_string(p, "background_path"),
                                       get_float(p, "snr_db"), rng);
      },
      .intensity = [](const Params& p) {
        return std::clamp((30.0 - get_float(p, "snr_db")) / 60.0, 0.0, 1.0) *
               100.0;
      },
  });
  reg.add({
      .name = "insert_in_background",
      .schema = {{"background_path", ParamType::String, false, std::string()},
                 {"offset_factor", ParamType::Float, false, 0.0, 0.0, 1.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 1.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return op_insert_in_background(buf, get_string(p, "background_path"),
                                       get_float(p, "offset_factor"));
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "change_volume",
      .schema = {{"volume_db", ParamType::Float, false, 0.0, -200.0, 60.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "volume_db", -10.0, 10.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const double db = get_float(p, "volume_db");
        if (db == 0.0) return buf;
        const double gain = std::pow(10.0, db / 20.0);
        AudioBuffer out = buf;
        for (auto& ch : out.samples)
          for (auto& v : ch) v = static_cast<float>(v * gain);
        clip_samples(out);
        return out;
      },
      .intensity = [](const Params& p) {
        return std::min(std::abs(get_float(p, "volume_db")), 30.0) / 30.0 *
               100.0;
      },
  });
  reg.add({
      .name = "to_mono",
      .schema = {},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params&, Rng&) {
        return to_mono_buffer(buf);
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "normalize",
      .schema = {{"target", ParamType::Float, false, 1.0, 0.0, 1.0}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const double target = get_float(p, "target");
        if (target <= 0.0) throw ValidationError("normalize: target must be > 0");
        float peak = 0.0f;
        for (const auto& ch : buf.samples)
          for (float v : ch) peak = std::max(peak, std::abs(v));
        if (peak == 0.0f || peak == static_cast<float>(target)) return buf;
        AudioBuffer out = buf;
        for (auto& ch : out.samples)
          for (auto& v : ch)
            v = static_cast<float>(v / peak * target);
        return out;
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "clicks",
      .schema = {{"interval_s", ParamType::Float, false, 0.5, 1e-4, 3600.0},
                 {"amplitude", ParamType::Float, false, 0.5, 0.0, 1.0, {},
                  true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "amplitude", 0.1, 1.0, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const double interval = get_float(p, "interval_s");
        const double amplitude = get_float(p, "amplitude");
        AudioBuffer out = buf;
        for (std::size_t k = 1;; ++k) {
          const auto idx = static_cast<std::size_t>(
              std::llround(k * interval * buf.sample_rate));
          if (idx >= buf.frames()) break;
          for (auto& ch : out.samples)
            ch[idx] += static_cast<float>(amplitude);
        }
        clip_samples(out);
        return out;
      },
      .intensity = [](const Params& p) {
        return std::clamp(get_float(p, "amplitude"), 0.0, 1.0) * 100.0;
      },
  });
  reg.add({
      .name = "loop",
      .schema = {{"n", ParamType::Int, false, std::int64_t{1}, 0.0, 1000.0}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const auto n = get_int(p, "n");
        if (n == 0) return buf;
        AudioBuffer out = buf;
        for (auto& ch : out.samples) {
          const std::vector<float> unit = ch;
          ch.reserve(unit.size() * (n + 1));
          for (std::int64_t i = 0; i < n; ++i)
            ch.insert(ch.end(), unit.begin(), unit.end());
        }
        return out;
      },
      .intensity = [](const Params& p) {
        const double n = static_cast<double>(get_int(p, "n"));
        return n / (n + 1.0) * 100.0;
      },
  });
  reg.add({
      .name = "invert_channels",
      .schema = {},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params&, Rng&) {
        if (buf.channels() == 1) return buf;
        AudioBuffer out = buf;
        std::reverse(out.samples.begin(), out.samples.end());
        return out;
      },
      .intensity = nullptr,
  });
  reg.add({
      .name = "clip",
      .schema = {{"offset_factor", ParamType::Float, false, 0.0, 0.0, 1.0, {},
                  true},
                 {"duration_factor", ParamType::Float, false, 1.0, 1e-6, 1.0,
                  {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        resolve_random_float(out, "offset_factor", 0.0, 0.5, rng);
        resolve_random_float(out, "duration_factor", 0.1, 0.5, rng);
        return out;
      },
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        const double offset = get_float(p, "offset_factor");
        const double duration = get_float(p, "duration_factor");
        if (offset == 0.0 && duration == 1.0) return buf;
        return op_clip_segment(buf, offset, duration);
      },
      .intensity = [](const Params& p) {
        return (1.0 - std::clamp(get_float(p, "duration_factor"), 0.0, 1.0)) *
               100.0;
      },
  });
  reg.add({
      .name = "apply_lambda",
      .schema = {{"name", ParamType::String, false, std::string("identity")}},
      .resolve = nullptr,
      .apply = [](const AudioBuffer& buf, const Params& p, Rng&) {
        return find_audio_lambda(get_string(p, "name"))(buf);
      },
      .intensity = [](const Params& p) {
        return get_string(p, "name") == "identity" ? 0.0 : 100.0;
      },
  });
}

}  // namespace augkit::audio
