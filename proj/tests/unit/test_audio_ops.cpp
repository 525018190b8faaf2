#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include <doctest.h>

#include "augkit/assets.hpp"
#include "augkit/audio/catalog.hpp"
#include "augkit/audio/dsp.hpp"
#include "augkit/audio/wav.hpp"
#include "augkit/core/rng.hpp"

using namespace augkit;
using namespace augkit::audio;

namespace {

AudioBuffer run(const std::string& name, Params params, const AudioBuffer& in,
                std::uint64_t seed = 7) {
  return apply({name, std::move(params), 1.0}, in, seed);
}

double rms(const std::vector<float>& x, std::size_t from = 0) {
  double acc = 0;
  for (std::size_t i = from; i < x.size(); ++i)
    acc += double(x[i]) * x[i];
  return std::sqrt(acc / double(x.size() - from));
}

// Dominant frequency of one channel via a Hann-windowed FFT.
double peak_frequency(const std::vector<float>& x, int sample_rate) {
  std::size_t n = 1;
  while (n * 2 <= x.size() && n < 65536) n *= 2;
  REQUIRE(n >= 1024);
  std::vector<std::complex<double>> buf(n);
  const auto w = hann_window(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i] * w[i];
  fft(buf, false);
  std::size_t best = 1;
  for (std::size_t k = 2; k <= n / 2; ++k)
    if (std::abs(buf[k]) > std::abs(buf[best])) best = k;
  return double(best) * sample_rate / double(n);
}

double snr_db(const AudioBuffer& clean, const AudioBuffer& noisy) {
  double ps = 0, pn = 0;
  for (int c = 0; c < clean.channels(); ++c)
    for (std::size_t i = 0; i < clean.frames(); ++i) {
      const double s = clean.samples[c][i];
      const double d = double(noisy.samples[c][i]) - s;
      ps += s * s;
      pn += d * d;
    }
  return 10.0 * std::log10(ps / pn);
}

AudioBuffer click_train(double seconds, int rate, double every_s,
                        float amplitude) {
  AudioBuffer out(1, std::size_t(seconds * rate), rate);
  for (std::size_t i = std::size_t(every_s * rate); i < out.frames();
       i += std::size_t(every_s * rate))
    out.samples[0][i] = amplitude;
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("audio catalog registers the full set") {
  const auto names = audio_registry().names();
  CHECK(names.size() == 20);
  for (const char* n :
       {"add_background_noise", "apply_lambda", "change_volume", "clicks",
        "clip", "harmonic", "high_pass_filter", "insert_in_background",
        "invert_channels", "loop", "low_pass_filter", "normalize",
        "peaking_equalizer", "percussive", "pitch_shift", "reverb", "speed",
        "tempo", "time_stretch", "to_mono"})
    CHECK(audio_registry().find(n) != nullptr);
}

TEST_CASE("pitch shift moves a tone by the requested semitones") {
  const AudioBuffer tone = sine_wave(440.0, 2.0, 44100, 0.5);
  const AudioBuffer up = run("pitch_shift", {{"n_semitones", 12.0}}, tone);
  CHECK(std::llabs(std::int64_t(up.frames()) - std::int64_t(tone.frames())) <=
        512);
  const double f_up = peak_frequency(up.samples[0], 44100);
  CHECK(std::abs(f_up - 880.0) <= 880.0 * 0.03);

  const AudioBuffer high = sine_wave(880.0, 2.0, 44100, 0.5);
  const AudioBuffer down = run("pitch_shift", {{"n_semitones", -12.0}}, high);
  const double f_down = peak_frequency(down.samples[0], 44100);
  CHECK(std::abs(f_down - 440.0) <= 440.0 * 0.03);
}

TEST_CASE("time stretch halves the duration and keeps the pitch") {
  const AudioBuffer tone = sine_wave(440.0, 4.0, 44100, 0.5);
  const AudioBuffer out = run("time_stretch", {{"rate", 2.0}}, tone);
  CHECK(out.frames() == 88200);
  const double f = peak_frequency(out.samples[0], 44100);
  CHECK(std::abs(f - 440.0) <= 440.0 * 0.02);
  CHECK(rms(out.samples[0]) > 0.1);
}

TEST_CASE("tempo behaves like time stretch") {
  const AudioBuffer tone = sine_wave(440.0, 4.0, 44100, 0.5);
  const AudioBuffer out = run("tempo", {{"factor", 2.0}}, tone);
  CHECK(out.frames() == 88200);
  const double f = peak_frequency(out.samples[0], 44100);
  CHECK(std::abs(f - 440.0) <= 440.0 * 0.02);
}

TEST_CASE("speed resamples, shifting both duration and pitch") {
  const AudioBuffer tone = sine_wave(440.0, 4.0, 44100, 0.5);
  const AudioBuffer out = run("speed", {{"factor", 2.0}}, tone);
  CHECK(out.frames() == 88200);
  const double f = peak_frequency(out.samples[0], 44100);
  CHECK(std::abs(f - 880.0) <= 880.0 * 0.03);
}

TEST_CASE("stft-based transforms reject sub-window buffers") {
  const AudioBuffer tiny(1, 1000, 44100);
  CHECK_THROWS_AS(run("time_stretch", {{"rate", 1.5}}, tiny),
                  ValidationError);
  CHECK_THROWS_AS(run("pitch_shift", {{"n_semitones", 3.0}}, tiny),
                  ValidationError);
  CHECK_THROWS_AS(run("harmonic", {}, tiny), ValidationError);
}

TEST_CASE("low-pass transform attenuates a tone a decade above cutoff") {
  const AudioBuffer high = sine_wave(10000.0, 1.0, 44100, 0.5);
  const AudioBuffer out = run("low_pass_filter", {{"cutoff_hz", 1000.0}}, high);
  const std::size_t half = high.frames() / 2;
  const double ratio =
      rms(out.samples[0], half) / rms(high.samples[0], half);
  CHECK(ratio < std::pow(10.0, -30.0 / 20.0));

  const AudioBuffer low = sine_wave(100.0, 1.0, 44100, 0.5);
  const AudioBuffer kept = run("low_pass_filter", {{"cutoff_hz", 1000.0}}, low);
  CHECK(rms(kept.samples[0], half) / rms(low.samples[0], half) > 0.95);
}

TEST_CASE("high-pass transform mirrors the low-pass behavior") {
  const AudioBuffer low = sine_wave(100.0, 1.0, 44100, 0.5);
  const AudioBuffer out = run("high_pass_filter", {{"cutoff_hz", 1000.0}}, low);
  const std::size_t half = low.frames() / 2;
  CHECK(rms(out.samples[0], half) / rms(low.samples[0], half) <
        std::pow(10.0, -30.0 / 20.0));

  const AudioBuffer high = sine_wave(10000.0, 1.0, 44100, 0.5);
  const AudioBuffer kept =
      run("high_pass_filter", {{"cutoff_hz", 1000.0}}, high);
  CHECK(rms(kept.samples[0], half) / rms(high.samples[0], half) > 0.95);
}

TEST_CASE("peaking equalizer boosts its center band") {
  const AudioBuffer tone = sine_wave(1000.0, 1.0, 44100, 0.25);
  const AudioBuffer out = run(
      "peaking_equalizer",
      {{"center_hz", 1000.0}, {"q", 1.0}, {"gain_db", 6.0}}, tone);
  const std::size_t half = tone.frames() / 2;
  const double gain_db = 20.0 * std::log10(rms(out.samples[0], half) /
                                           rms(tone.samples[0], half));
  CHECK(std::abs(gain_db - 6.0) < 0.5);
}

TEST_CASE("harmonic and percussive pull the mixture apart") {
  const AudioBuffer tone = sine_wave(440.0, 2.0, 44100, 0.4);
  AudioBuffer mix = click_train(2.0, 44100, 0.1, 0.9f);
  for (std::size_t i = 0; i < mix.frames(); ++i)
    mix.samples[0][i] =
        std::clamp(mix.samples[0][i] + tone.samples[0][i], -1.0f, 1.0f);

  const AudioBuffer harm = run("harmonic", {}, mix);
  const AudioBuffer perc = run("percussive", {}, mix);
  REQUIRE(harm.frames() == mix.frames());
  REQUIRE(perc.frames() == mix.frames());

  double err_mix_tone = 0, err_harm_tone = 0;
  for (std::size_t i = 0; i < mix.frames(); ++i) {
    const double dm = double(mix.samples[0][i]) - tone.samples[0][i];
    const double dh = double(harm.samples[0][i]) - tone.samples[0][i];
    err_mix_tone += dm * dm;
    err_harm_tone += dh * dh;
  }
  // The harmonic estimate sits much closer to the pure tone than the mix.
  CHECK(err_harm_tone < 0.5 * err_mix_tone);

  const double tone_power = signal_power(tone);
  CHECK(signal_power(harm) > 0.5 * tone_power);
  CHECK(signal_power(perc) < 0.5 * signal_power(mix));
}

TEST_CASE("background noise lands on the requested snr") {
  const AudioBuffer tone = sine_wave(440.0, 1.0, 44100, 0.2);

  SUBCASE("from a noise file") {
    const std::string path = temp_path("augkit_noise.wav");
    save_wav(sine_wave(3333.0, 0.25, 44100, 0.05), path, "float32");
    const AudioBuffer out = run(
        "add_background_noise",
        {{"background_path", path}, {"snr_db", 0.0}}, tone);
    CHECK(std::abs(snr_db(tone, out) - 0.0) < 0.1);
    std::remove(path.c_str());
  }

  SUBCASE("generated white noise") {
    const AudioBuffer out = run("add_background_noise",
                                {{"background_path", std::string{}},
                                 {"snr_db", 20.0}},
                                sine_wave(440.0, 1.0, 44100, 0.1));
    CHECK(std::abs(snr_db(sine_wave(440.0, 1.0, 44100, 0.1), out) - 20.0) <
          0.1);
  }

  SUBCASE("a very high snr leaves the signal nearly untouched") {
    const AudioBuffer out = run("add_background_noise",
                                {{"background_path", std::string{}},
                                 {"snr_db", 60.0}},
                                tone);
    double err = 0;
    for (std::size_t i = 0; i < tone.frames(); ++i) {
      const double d = double(out.samples[0][i]) - tone.samples[0][i];
      err += d * d;
    }
    CHECK(std::sqrt(err / double(tone.frames())) < 1e-3);
  }

  SUBCASE("silent input is rejected") {
    const AudioBuffer silence(1, 44100, 44100);
    CHECK_THROWS_AS(run("add_background_noise",
                        {{"background_path", std::string{}},
                         {"snr_db", 0.0}},
                        silence),
                    ValidationError);
  }
}

TEST_CASE("insert in background splices the input at the offset") {
  AudioBuffer voice(1, 44100, 44100);
  Rng rng(88);
  for (auto& v : voice.samples[0]) v = float(rng.uniform(-0.5, 0.5));

  const AudioBuffer out =
      run("insert_in_background", {{"offset_factor", 0.5}}, voice);
  const std::size_t bg_frames = 220500;  // bundled noise bed, five seconds
  REQUIRE(out.frames() == bg_frames + voice.frames());
  const std::size_t offset = 110250;
  for (std::size_t i = 0; i < voice.frames(); i += 997)
    CHECK(out.samples[0][offset + i] == voice.samples[0][i]);
}

TEST_CASE("change volume applies the decibel gain") {
  const AudioBuffer tone = sine_wave(440.0, 0.5, 44100, 0.4);
  const AudioBuffer out =
      run("change_volume", {{"volume_db", -6.0205999132796239}}, tone);
  for (std::size_t i = 0; i < tone.frames(); i += 1003)
    CHECK(std::abs(out.samples[0][i] - 0.5f * tone.samples[0][i]) < 1e-6);
}

TEST_CASE("to_mono averages the channels") {
  AudioBuffer stereo(2, 4, 44100);
  stereo.samples[0] = {0.5f, -0.5f, 0.25f, 1.0f};
  stereo.samples[1] = {-0.5f, 0.5f, 0.75f, 0.0f};
  const AudioBuffer out = run("to_mono", {}, stereo);
  REQUIRE(out.channels() == 1);
  CHECK(out.samples[0][0] == 0.0f);
  CHECK(out.samples[0][1] == 0.0f);
  CHECK(out.samples[0][2] == 0.5f);
  CHECK(out.samples[0][3] == 0.5f);
}

TEST_CASE("normalize hits the target peak exactly") {
  const AudioBuffer tone = sine_wave(440.0, 0.25, 44100, 0.25);
  const AudioBuffer out = run("normalize", {}, tone);
  float peak = 0;
  for (float v : out.samples[0]) peak = std::max(peak, std::abs(v));
  CHECK(peak == 1.0f);
  // A second pass is a no-op.
  CHECK(run("normalize", {}, out) == out);
  CHECK_THROWS_AS(run("normalize", {{"target", 0.0}}, tone), ValidationError);
}

TEST_CASE("clicks adds impulses at the configured interval") {
  const AudioBuffer quiet(1, 88200, 44100);
  const AudioBuffer out =
      run("clicks", {{"interval_s", 0.5}, {"amplitude", 0.5}}, quiet);
  CHECK(out.samples[0][22050] == 0.5f);
  CHECK(out.samples[0][44100] == 0.5f);
  CHECK(out.samples[0][66150] == 0.5f);
  CHECK(out.samples[0][100] == 0.0f);
  CHECK(out.samples[0][22051] == 0.0f);
}

TEST_CASE("loop appends whole copies") {
  AudioBuffer ramp(1, 1000, 44100);
  for (std::size_t i = 0; i < 1000; ++i)
    ramp.samples[0][i] = float(i) / 1000.0f;
  const AudioBuffer out = run("loop", {{"n", std::int64_t{2}}}, ramp);
  REQUIRE(out.frames() == 3000);
  for (std::size_t i = 0; i < 1000; i += 37) {
    CHECK(out.samples[0][i] == ramp.samples[0][i]);
    CHECK(out.samples[0][1000 + i] == ramp.samples[0][i]);
    CHECK(out.samples[0][2000 + i] == ramp.samples[0][i]);
  }
}

TEST_CASE("invert_channels swaps stereo and is an involution") {
  AudioBuffer stereo(2, 8, 44100);
  for (std::size_t i = 0; i < 8; ++i) {
    stereo.samples[0][i] = float(i) * 0.1f;
    stereo.samples[1][i] = -float(i) * 0.05f;
  }
  const AudioBuffer once = run("invert_channels", {}, stereo);
  CHECK(once.samples[0] == stereo.samples[1]);
  CHECK(once.samples[1] == stereo.samples[0]);
  CHECK(run("invert_channels", {}, once) == stereo);

  const AudioBuffer mono = sine_wave(440.0, 0.1, 44100, 0.5);
  CHECK(run("invert_channels", {}, mono) == mono);
}

TEST_CASE("clip keeps the requested window, sample exact") {
  AudioBuffer ramp(1, 176400, 44100);
  for (std::size_t i = 0; i < ramp.frames(); ++i)
    ramp.samples[0][i] = float(i % 1000) / 1000.0f;
  const AudioBuffer out =
      run("clip", {{"offset_factor", 0.25}, {"duration_factor", 0.5}}, ramp);
  REQUIRE(out.frames() == 88200);
  for (std::size_t i = 0; i < out.frames(); i += 1009)
    CHECK(out.samples[0][i] == ramp.samples[0][44100 + i]);

  CHECK_THROWS_AS(
      run("clip", {{"offset_factor", 0.8}, {"duration_factor", 0.5}}, ramp),
      ValidationError);
}

TEST_CASE("reverb adds a tail") {
  AudioBuffer burst(1, 44100, 44100);
  Rng rng(17);
  for (std::size_t i = 0; i < 2205; ++i)
    burst.samples[0][i] = float(rng.uniform(-0.8, 0.8));
  const AudioBuffer out = run(
      "reverb", {{"room_size", 0.8}, {"wet_level", 0.8}, {"dry_level", 0.2}},
      burst);
  REQUIRE(out.frames() == burst.frames());
  // Energy appears well after the dry burst has ended.
  CHECK(rms(out.samples[0], 10000) > 5.0 * rms(burst.samples[0], 10000));
}

TEST_CASE("audio apply_lambda runs registered callbacks") {
  const AudioBuffer tone = sine_wave(440.0, 0.1, 44100, 0.4);
  CHECK(run("apply_lambda", {}, tone) == tone);

  register_audio_lambda("halve_for_test", [](const AudioBuffer& in) {
    AudioBuffer out = in;
    for (auto& ch : out.samples)
      for (auto& v : ch) v *= 0.5f;
    return out;
  });
  const AudioBuffer halved =
      run("apply_lambda", {{"name", std::string("halve_for_test")}}, tone);
  CHECK(halved.samples[0][100] == 0.5f * tone.samples[0][100]);

  CHECK_THROWS_AS(
      run("apply_lambda", {{"name", std::string("no_such_lambda")}}, tone),
      ValidationError);
}

TEST_CASE("identity parameterizations return the input bit-exact") {
  const AudioBuffer tone = sine_wave(523.25, 1.0, 44100, 0.4, 2);
  CHECK(run("time_stretch", {{"rate", 1.0}}, tone) == tone);
  CHECK(run("pitch_shift", {{"n_semitones", 0.0}}, tone) == tone);
  CHECK(run("speed", {{"factor", 1.0}}, tone) == tone);
  CHECK(run("tempo", {{"factor", 1.0}}, tone) == tone);
  CHECK(run("change_volume", {{"volume_db", 0.0}}, tone) == tone);
  CHECK(run("clip", {{"offset_factor", 0.0}, {"duration_factor", 1.0}},
            tone) == tone);
  CHECK(run("loop", {{"n", std::int64_t{0}}}, tone) == tone);
  CHECK(run("peaking_equalizer",
            {{"center_hz", 1000.0}, {"q", 1.0}, {"gain_db", 0.0}},
            tone) == tone);
  CHECK(run("reverb", {{"wet_level", 0.0}, {"dry_level", 1.0}}, tone) == tone);
  CHECK(run("apply_lambda", {}, tone) == tone);

  const AudioBuffer mono = sine_wave(523.25, 1.0, 44100, 0.4, 1);
  CHECK(run("invert_channels", {}, mono) == mono);
  CHECK(run("to_mono", {}, mono) == mono);
}

TEST_CASE("wav codec round trips") {
  AudioBuffer buf(2, 1024, 22050);
  Rng rng(55);
  for (auto& ch : buf.samples)
    for (auto& v : ch) v = float(rng.uniform(-0.99, 0.99));

  SUBCASE("float32 is bit exact") {
    const AudioBuffer back = decode_wav(encode_wav(buf, "float32"));
    CHECK(back == buf);
  }

  SUBCASE("pcm16 is exact to half a quantization step") {
    const AudioBuffer back = decode_wav(encode_wav(buf, "pcm16"));
    REQUIRE(back.frames() == buf.frames());
    CHECK(back.sample_rate == 22050);
    for (int c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < buf.frames(); ++i)
        CHECK(std::abs(back.samples[c][i] - buf.samples[c][i]) <=
              0.5f / 32767.0f + 1e-7f);
  }

  SUBCASE("files round trip") {
    const std::string path = temp_path("augkit_rt.wav");
    save_wav(buf, path, "float32");
    CHECK(load_wav(path) == buf);
    std::remove(path.c_str());
  }

  SUBCASE("raw float32 round trips bit exact") {
    const std::string path = temp_path("augkit_rt.f32le");
    save_raw_f32(buf, path);
    CHECK(load_raw_f32(path, 22050, 2) == buf);
    std::remove(path.c_str());
  }

  SUBCASE("unknown encodings are rejected") {
    CHECK_THROWS_AS(encode_wav(buf, "mp3"), ValidationError);
    auto bytes = encode_wav(buf, "pcm16");
    bytes[34] = 8;  // patch fmt bits-per-sample
    CHECK_THROWS_AS(decode_wav(bytes), IoError);
  }

  SUBCASE("garbage bytes are rejected") {
    CHECK_THROWS_AS(decode_wav({0x00, 0x01, 0x02}), IoError);
    std::vector<std::uint8_t> not_riff(64, 0x41);
    CHECK_THROWS_AS(decode_wav(not_riff), IoError);
  }

  SUBCASE("raw loads reject ragged sizes") {
    const std::string path = temp_path("augkit_ragged.f32le");
    std::ofstream(path, std::ios::binary) << "1234567";
    CHECK_THROWS_AS(load_raw_f32(path, 22050, 2), IoError);
    std::remove(path.c_str());
  }
}

TEST_CASE("random draws and generated noise are seed deterministic") {
  const AudioBuffer tone = sine_wave(440.0, 1.0, 44100, 0.3);
  const TransformSpec noise{
      "add_background_noise",
      {{"background_path", std::string{}}, {"snr_db", 10.0}},
      1.0};
  CHECK(apply(noise, tone, 7) == apply(noise, tone, 7));
  CHECK_FALSE(apply(noise, tone, 7) == apply(noise, tone, 8));

  const TransformSpec random_shift{
      "pitch_shift", {{"n_semitones", std::string("random")}}, 1.0};
  const AudioBuffer a = apply(random_shift, tone, 11);
  CHECK(a == apply(random_shift, tone, 11));
}

TEST_CASE("pipeline metadata reports audio intensities") {
  const AudioBuffer tone = sine_wave(440.0, 2.0, 44100, 0.4);
  Pipeline p;
  p.children.push_back(TransformSpec{"change_volume", {{"volume_db", -15.0}},
                                     1.0});
  p.children.push_back(TransformSpec{"tempo", {{"factor", 2.0}}, 1.0});
  p.children.push_back(
      TransformSpec{"clip",
                    {{"offset_factor", 0.0}, {"duration_factor", 0.25}},
                    1.0});
  const auto [out, meta] = apply_pipeline(p, tone, 3);
  REQUIRE(meta.size() == 3);
  CHECK(meta[0].intensity == doctest::Approx(50.0));
  CHECK(meta[1].intensity == doctest::Approx(50.0));
  CHECK(meta[2].intensity == doctest::Approx(75.0));
  CHECK(meta[0].applied);
  CHECK(meta[1].src_shape.kind == "audio");
  CHECK(meta[2].dst_shape.dims[1].second ==
        doctest::Approx(double(out.frames())));
  CHECK(out.frames() == 11025);
}
