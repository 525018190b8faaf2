#pragma once

#include <string>
#include <string_view>

namespace augkit::text {

// Strict UTF-8 decoding: rejects overlong forms, surrogates, and values
// past U+10FFFF with ValidationError.
std::u32string utf8_decode(std::string_view utf8);

std::string utf8_encode(std::u32string_view text);

}  // namespace augkit::text
