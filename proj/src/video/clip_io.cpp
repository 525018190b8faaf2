#include "augkit/video/clip_io.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "augkit/audio/wav.hpp"
#include "augkit/image/codecs.hpp"

namespace augkit::video {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string frame_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu.png", index);
  return buf;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// Scratch directory for one transcoder round trip, removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path = fs::temp_directory_path() /
           ("augkit-clip-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void run_transcoder(const std::string& mode, const std::string& from,
                    const std::string& to) {
  const char* exe = std::getenv("AUGKIT_TRANSCODER");
  if (!exe || !*exe)
    throw IoError("'" + from +
                  "' is not a clip directory and AUGKIT_TRANSCODER is unset");
  const std::string cmd = std::string(exe) + " " + mode + " " +
                          shell_quote(from) + " " + shell_quote(to);
  if (std::system(cmd.c_str()) != 0)
    throw IoError("transcoder failed: " + cmd);
}

}  // namespace

void save_clip_dir(const VideoClip& clip, const std::string& dir) {
  clip.check();
  fs::create_directories(fs::path(dir) / "frames");

  ordered_json manifest;
  manifest["fps"] = clip.fps;
  manifest["frame_count"] = clip.frames.size();
  manifest["width"] = clip.width();
  manifest["height"] = clip.height();
  manifest["channels"] = clip.channels();
  if (clip.audio) {
    manifest["audio"] = {{"sample_rate", clip.audio->sample_rate},
                         {"channels", clip.audio->channels()},
                         {"frames", clip.audio->frames()}};
  } else {
    manifest["audio"] = nullptr;
  }
  std::ofstream out(fs::path(dir) / "manifest.json");
  out << manifest.dump(2) << "\n";
  if (!out) throw IoError("cannot write manifest in '" + dir + "'");

  for (std::size_t i = 0; i < clip.frames.size(); ++i)
    image::save_png(clip.frames[i],
                    (fs::path(dir) / "frames" / frame_name(i)).string());
  if (clip.audio)
    audio::save_raw_f32(*clip.audio, (fs::path(dir) / "audio.f32le").string());
}

VideoClip load_clip_dir(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw IoError("no manifest.json in '" + dir + "'");
  ordered_json manifest = ordered_json::parse(in, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object())
    throw IoError("malformed manifest in '" + dir + "'");

  VideoClip clip;
  try {
    clip.fps = manifest.at("fps").get<double>();
    const auto count = manifest.at("frame_count").get<std::size_t>();
    clip.frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      clip.frames.push_back(image::load_png(
          (fs::path(dir) / "frames" / frame_name(i)).string()));
    const auto& a = manifest.at("audio");
    if (!a.is_null())
      clip.audio = audio::load_raw_f32(
          (fs::path(dir) / "audio.f32le").string(),
          a.at("sample_rate").get<int>(), a.at("channels").get<int>());
  } catch (const ordered_json::exception& e) {
    throw IoError("malformed manifest in '" + dir + "': " + e.what());
  }
  clip.check();
  return clip;
}

VideoClip load_clip_auto(const std::string& path) {
  if (fs::is_directory(path)) return load_clip_dir(path);
  TempDir tmp;
  run_transcoder("to-dir", path, tmp.path.string());
  return load_clip_dir(tmp.path.string());
}

void save_clip_auto(const VideoClip& clip, const std::string& path) {
  if (fs::is_directory(path) ||
      fs::path(path).extension().empty()) {
    save_clip_dir(clip, path);
    return;
  }
  TempDir tmp;
  save_clip_dir(clip, tmp.path.string());
  run_transcoder("from-dir", tmp.path.string(), path);
}

}  // namespace augkit::video
