#pragma once

#include <functional>

#include "augkit/audio/buffer.hpp"
#include "augkit/core/compose.hpp"

namespace augkit::audio {

// The audio transform registry; registers the full catalog on first use.
Registry<AudioBuffer>& audio_registry();

// Named callbacks usable through the apply_lambda transform. "identity" is
// predefined.
void register_audio_lambda(const std::string& name,
                           std::function<AudioBuffer(const AudioBuffer&)> fn);

AudioBuffer apply(const TransformSpec& spec, const AudioBuffer& buf,
                  std::uint64_t seed);

std::pair<AudioBuffer, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const AudioBuffer& buf, std::uint64_t seed);

}  // namespace augkit::audio
