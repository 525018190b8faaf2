#pragma once

#include <string>

#include "augkit/video/clip.hpp"

namespace augkit::video {

// Clip directory layout:
//   manifest.json     fps, frame_count, width, height, channels, audio
//                     (null or {sample_rate, channels, frames})
//   frames/%06d.png   one image per frame, numbered from zero
//   audio.f32le       interleaved float32 little-endian, when audio exists
void save_clip_dir(const VideoClip& clip, const std::string& dir);
VideoClip load_clip_dir(const std::string& dir);

// Directory paths load directly. Anything else is handed to the external
// transcoder named by AUGKIT_TRANSCODER, invoked as
//   $AUGKIT_TRANSCODER to-dir <media-file> <clip-dir>
//   $AUGKIT_TRANSCODER from-dir <clip-dir> <media-file>
// via a temporary directory. Unset transcoder -> IoError. The core never
// links against codec libraries.
VideoClip load_clip_auto(const std::string& path);
void save_clip_auto(const VideoClip& clip, const std::string& path);

}  // namespace augkit::video
