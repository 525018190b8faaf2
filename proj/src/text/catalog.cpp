#include "augkit/text/catalog.hpp"

#include <map>
#include <mutex>

#include "catalog_parts.hpp"

namespace augkit::text {

namespace {

std::mutex lambda_mutex;

std::map<std::string, std::function<TextDoc(const TextDoc&)>>& lambda_map() {
  static std::map<std::string, std::function<TextDoc(const TextDoc&)>> m{
      {"identity", [](const TextDoc& doc) { return doc; }}};
  return m;
}

}  // namespace

void register_text_lambda(const std::string& name,
                          std::function<TextDoc(const TextDoc&)> fn) {
  if (!fn) throw ValidationError("lambda callback must not be null");
  std::lock_guard lock(lambda_mutex);
  lambda_map()[name] = std::move(fn);
}

const std::function<TextDoc(const TextDoc&)>& find_text_lambda(
    const std::string& name) {
  std::lock_guard lock(lambda_mutex);
  const auto it = lambda_map().find(name);
  if (it == lambda_map().end())
    throw ValidationError("unknown lambda '" + name + "'");
  return it->second;
}

Registry<TextDoc>& text_registry() {
  static const bool registered = [] {
    auto& r = Registry<TextDoc>::instance();
    register_word_ops(r);
    register_char_ops(r);
    return true;
  }();
  (void)registered;
  return Registry<TextDoc>::instance();
}

TextDoc apply(const TransformSpec& spec, const TextDoc& doc,
              std::uint64_t seed) {
  Rng rng(seed);
  text_registry();
  return apply_with_probability<TextDoc>(spec, doc, rng).first;
}

std::pair<TextDoc, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const TextDoc& doc, std::uint64_t seed) {
  Rng rng(seed);
  text_registry();
  return compose<TextDoc>(pipeline, doc, rng);
}

}  // namespace augkit::text
