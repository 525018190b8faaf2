#pragma once

#include <string>
#include <vector>

#include "augkit/core/metadata.hpp"
#include "augkit/text/unicode.hpp"

namespace augkit::text {

// A text document as a sequence of Unicode scalar values.
struct TextDoc {
  std::u32string content;

  bool operator==(const TextDoc&) const = default;
};

// Decodes UTF-8, rejecting malformed input.
TextDoc make_doc(std::string_view utf8);

std::string to_utf8(const TextDoc& doc);

bool is_space(char32_t c);

// Half-open [begin, end) ranges of the maximal non-whitespace runs.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<WordSpan> word_spans(const std::u32string& s);

std::size_t word_count(const TextDoc& doc);

bool is_zero_width(char32_t c);

// Removes every zero-width scalar; inverts insert_zero_width_chars.
TextDoc strip_zero_width(const TextDoc& doc);

Shape shape_of(const TextDoc& doc);

}  // namespace augkit::text
