#include "augkit/audio/catalog.hpp"

#include <map>
#include <mutex>

#include "catalog_parts.hpp"

namespace augkit::audio {

namespace {

std::mutex& lambda_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::function<AudioBuffer(const AudioBuffer&)>>&
lambda_map() {
  static std::map<std::string, std::function<AudioBuffer(const AudioBuffer&)>>
      fns{{"identity", [](const AudioBuffer& buf) { return buf; }}};
  return fns;
}

}  // namespace

void register_audio_lambda(const std::string& name,
                           std::function<AudioBuffer(const AudioBuffer&)> fn) {
  if (!fn) throw ValidationError("apply_lambda callback must not be empty");
  std::lock_guard<std::mutex> lock(lambda_mutex());
  lambda_map()[name] = std::move(fn);
}

std::function<AudioBuffer(const AudioBuffer&)> find_audio_lambda(
    const std::string& name) {
  std::lock_guard<std::mutex> lock(lambda_mutex());
  auto it = lambda_map().find(name);
  if (it == lambda_map().end())
    throw ValidationError("apply_lambda: unknown callback '" + name + "'");
  return it->second;
}

Registry<AudioBuffer>& audio_registry() {
  static const bool registered = [] {
    Registry<AudioBuffer>& r = Registry<AudioBuffer>::instance();
    register_dsp_ops(r);
    register_mix_ops(r);
    return true;
  }();
  (void)registered;
  return Registry<AudioBuffer>::instance();
}

AudioBuffer apply(const TransformSpec& spec, const AudioBuffer& buf,
                  std::uint64_t seed) {
  audio_registry();
  audio_registry();
  return apply_with_probability<AudioBuffer>(spec, buf, Rng(seed)).first;
}

std::pair<AudioBuffer, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const AudioBuffer& buf, std::uint64_t seed) {
  audio_registry();
  audio_registry();
  return compose<AudioBuffer>(pipeline, buf, Rng(seed));
}

}  // namespace augkit::audio
