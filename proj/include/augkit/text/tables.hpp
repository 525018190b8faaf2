#pragma once

#include <map>
#include <string>
#include <vector>

namespace augkit::text {

// One character mapped to one or more replacement strings.
struct CharMapTable {
  std::string table_id;
  std::map<char32_t, std::vector<std::u32string>> mapping;
};

// A phrase (one or more words) mapped to a single replacement.
struct PhraseMapTable {
  std::string table_id;
  std::map<std::u32string, std::u32string> mapping;
  std::size_t max_phrase_words = 1;
};

// TSV rows are "source<TAB>replacement[,alternative...]"; '#' lines and
// blank lines are skipped. The char loader requires single-scalar sources.
CharMapTable load_char_table(const std::string& path,
                             const std::string& table_id);
PhraseMapTable load_phrase_table(const std::string& path,
                                 const std::string& table_id);

// Bundled tables, cached after first load. Char tables: homoglyphs,
// similar_chars, similar_unicode, upside_down, qwerty_adjacent. Phrase
// tables: gendered_words, contractions.
const CharMapTable& bundled_char_table(const std::string& name);
const PhraseMapTable& bundled_phrase_table(const std::string& name);

// Styled alphabets from fun_fonts.json, keyed by style name.
const std::map<std::string, CharMapTable>& fun_font_styles();

}  // namespace augkit::text
