#pragma once

#include <functional>

#include "augkit/audio/buffer.hpp"
#include "augkit/core/registry.hpp"

namespace augkit::audio {

void register_dsp_ops(Registry<AudioBuffer>& reg);
void register_mix_ops(Registry<AudioBuffer>& reg);

std::function<AudioBuffer(const AudioBuffer&)> find_audio_lambda(
    const std::string& name);

// Shared intensity mappings.
double log2_factor_intensity(double factor);
double semitone_intensity(double semitones);

}  // namespace augkit::audio
