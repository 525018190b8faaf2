#pragma once

#include "augkit/text/catalog.hpp"

namespace augkit::text {

void register_char_ops(Registry<TextDoc>& reg);
void register_word_ops(Registry<TextDoc>& reg);

const std::function<TextDoc(const TextDoc&)>& find_text_lambda(
    const std::string& name);

}  // namespace augkit::text
