#include "augkit/text/doc.hpp"

namespace augkit::text {

TextDoc make_doc(std::string_view utf8) { return {utf8_decode(utf8)}; }

std::string to_utf8(const TextDoc& doc) { return utf8_encode(doc.content); }

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v';
}

std::vector<WordSpan> word_spans(const std::u32string& s) {
  std::vector<WordSpan> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_space(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    out.push_back({i, j});
    i = j;
  }
  return out;
}

std::size_t word_count(const TextDoc& doc) {
  return word_spans(doc.content).size();
}

bool is_zero_width(char32_t c) {
  return c == U'​' || c == U'‌' || c == U'‍' || c == U'⁠';
}

TextDoc strip_zero_width(const TextDoc& doc) {
  TextDoc out;
  out.content.reserve(doc.content.size());
  for (char32_t c : doc.content)
    if (!is_zero_width(c)) out.content.push_back(c);
  return out;
}

Shape shape_of(const TextDoc& doc) {
  return {"text",
          {{"scalars", double(doc.content.size())},
           {"words", double(word_count(doc))}}};
}

}  // namespace augkit::text
