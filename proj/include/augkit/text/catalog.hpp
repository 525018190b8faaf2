#pragma once

#include <functional>

#include "augkit/core/compose.hpp"
#include "augkit/text/doc.hpp"

namespace augkit::text {

// The text transform registry; registers the full catalog on first use.
Registry<TextDoc>& text_registry();

// Named callbacks usable through the apply_lambda transform. "identity" is
// predefined.
void register_text_lambda(const std::string& name,
                          std::function<TextDoc(const TextDoc&)> fn);

TextDoc apply(const TransformSpec& spec, const TextDoc& doc,
              std::uint64_t seed);

std::pair<TextDoc, std::vector<TransformMetadata>> apply_pipeline(
    const Pipeline& pipeline, const TextDoc& doc, std::uint64_t seed);

}  // namespace augkit::text
