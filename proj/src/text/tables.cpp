#include "augkit/text/tables.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "augkit/assets.hpp"
#include "augkit/errors.hpp"
#include "augkit/text/doc.hpp"

namespace augkit::text {

namespace {

std::vector<std::pair<std::string, std::string>> read_rows(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open table file: " + path);
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw IoError("malformed table row in " + path + ": " + line);
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

std::vector<std::u32string> split_alternatives(const std::string& field,
                                               const std::string& path) {
  std::vector<std::u32string> out;
  std::stringstream ss(field);
  std::string alt;
  while (std::getline(ss, alt, ',')) {
    if (alt.empty())
      throw IoError("empty replacement alternative in " + path);
    out.push_back(utf8_decode(alt));
  }
  if (out.empty()) throw IoError("row without replacements in " + path);
  return out;
}

}  // namespace

CharMapTable load_char_table(const std::string& path,
                             const std::string& table_id) {
  CharMapTable table{table_id, {}};
  for (const auto& [src, rest] : read_rows(path)) {
    const std::u32string key = utf8_decode(src);
    if (key.size() != 1)
      throw IoError("char table source must be a single scalar in " + path +
                    ": " + src);
    table.mapping[key[0]] = split_alternatives(rest, path);
  }
  return table;
}

PhraseMapTable load_phrase_table(const std::string& path,
                                 const std::string& table_id) {
  PhraseMapTable table{table_id, {}, 1};
  for (const auto& [src, rest] : read_rows(path)) {
    const std::u32string key = utf8_decode(src);
    const auto alts = split_alternatives(rest, path);
    table.mapping[key] = alts.front();
    table.max_phrase_words =
        std::max(table.max_phrase_words, word_spans(key).size());
  }
  return table;
}

const CharMapTable& bundled_char_table(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, CharMapTable> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache
             .emplace(name, load_char_table(
                                AssetStore::instance().file(
                                    "text/" + name + ".tsv"),
                                name))
             .first;
  return it->second;
}

const PhraseMapTable& bundled_phrase_table(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, PhraseMapTable> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache
             .emplace(name, load_phrase_table(
                                AssetStore::instance().file(
                                    "text/" + name + ".tsv"),
                                name))
             .first;
  return it->second;
}

const std::map<std::string, CharMapTable>& fun_font_styles() {
  static std::mutex mu;
  static std::map<std::string, CharMapTable> styles;
  static bool loaded = false;
  std::lock_guard lock(mu);
  if (!loaded) {
    std::ifstream in(AssetStore::instance().file("text/fun_fonts.json"),
                     std::ios::binary);
    const auto doc = nlohmann::json::parse(in);
    for (const auto& [style, table] : doc.items()) {
      CharMapTable t{style, {}};
      for (const auto& [src, dst] : table.items()) {
        const std::u32string key = utf8_decode(src);
        if (key.size() != 1)
          throw IoError("fun font source must be a single scalar: " + src);
        t.mapping[key[0]] = {utf8_decode(dst.get<std::string>())};
      }
      styles.emplace(style, std::move(t));
    }
    loaded = true;
  }
  return styles;
}

}  // namespace augkit::text
