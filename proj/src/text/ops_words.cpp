#include <algorithm>
#include <map>
#include <mutex>

#include <json.hpp>

#include "augkit/core/rng.hpp"
#include "augkit/core/value.hpp"
#include "augkit/errors.hpp"
#include "augkit/text/case.hpp"
#include "augkit/text/tables.hpp"
#include "augkit/text/typos.hpp"
#include "catalog_parts.hpp"

namespace augkit::text {

namespace {

bool is_ascii_punct(char32_t c) {
  return c < 128 && !is_ascii_upper(c) && !is_ascii_lower(c) &&
         !(c >= U'0' && c <= U'9');
}

// A token split into leading punctuation, core, and trailing punctuation.
// Interior punctuation (apostrophes, hyphens) stays in the core.
struct TokenParts {
  std::u32string prefix, core, suffix;
};

TokenParts split_token(const std::u32string& token) {
  std::size_t b = 0, e = token.size();
  while (b < e && is_ascii_punct(token[b])) ++b;
  while (e > b && is_ascii_punct(token[e - 1])) --e;
  return {token.substr(0, b), token.substr(b, e - b), token.substr(e)};
}

std::u32string lowered(const std::u32string& s) {
  std::u32string out = s;
  for (char32_t& c : out) c = ascii_lower(c);
  return out;
}

// Match casing by the first scalar only: an uppercase lead capitalizes the
// replacement, anything else leaves the table form untouched.
std::u32string match_case(const std::u32string& repl, char32_t lead) {
  if (repl.empty() || !is_ascii_upper(lead)) return repl;
  std::u32string out = repl;
  out[0] = ascii_upper(out[0]);
  return out;
}

// Longest-match phrase replacement over whole words; word cores are
// compared lowercased with single-space joins.
TextDoc replace_phrases(const TextDoc& doc, const PhraseMapTable& table) {
  const std::u32string& s = doc.content;
  const auto words = word_spans(s);
  std::vector<TokenParts> parts;
  parts.reserve(words.size());
  for (const auto& w : words)
    parts.push_back(split_token(s.substr(w.begin, w.end - w.begin)));

  TextDoc out;
  std::size_t copied = 0;
  for (std::size_t i = 0; i < words.size();) {
    std::size_t matched = 0;
    const std::u32string* repl = nullptr;
    const std::size_t longest =
        std::min(table.max_phrase_words, words.size() - i);
    for (std::size_t len = longest; len >= 1 && !repl; --len) {
      std::u32string key;
      for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) key.push_back(U' ');
        key += lowered(parts[i + k].core);
      }
      const auto it = table.mapping.find(key);
      if (it != table.mapping.end() && !parts[i].core.empty()) {
        matched = len;
        repl = &it->second;
      }
    }
    if (!repl) {
      out.content.append(s, copied, words[i].end - copied);
      copied = words[i].end;
      ++i;
      continue;
    }
    out.content.append(s, copied, words[i].begin - copied);
    out.content += parts[i].prefix;
    out.content += match_case(*repl, parts[i].core[0]);
    out.content += parts[i + matched - 1].suffix;
    copied = words[i + matched - 1].end;
    i += matched;
  }
  out.content.append(s, copied, s.size() - copied);
  return out;
}

PhraseMapTable reversed(const PhraseMapTable& table) {
  PhraseMapTable out{table.table_id + "_reversed", {}, 1};
  for (const auto& [k, v] : table.mapping) {
    out.mapping.emplace(v, k);  // first mapping wins
    out.max_phrase_words =
        std::max(out.max_phrase_words, word_spans(v).size());
  }
  return out;
}

// Applies fn to every word, keeping the whitespace fabric untouched.
template <class Fn>
TextDoc map_words(const TextDoc& doc, Fn&& fn) {
  const std::u32string& s = doc.content;
  TextDoc out;
  std::size_t copied = 0;
  for (const auto& w : word_spans(s)) {
    out.content.append(s, copied, w.begin - copied);
    out.content += fn(s.substr(w.begin, w.end - w.begin));
    copied = w.end;
  }
  out.content.append(s, copied, s.size() - copied);
  return out;
}

TextDoc op_simulate_typos(const TextDoc& doc, double p, Rng& rng) {
  return map_words(doc, [&](const std::u32string& word) {
    if (rng.uniform() >= p) return word;
    TypoKind kind;
    if (word.size() > 1) {
      kind = TypoKind(rng.choice(4));
    } else {
      // Deletion would empty the word; draw among the other kinds.
      constexpr TypoKind allowed[] = {TypoKind::Substitute,
                                      TypoKind::Transpose, TypoKind::Insert};
      kind = allowed[rng.choice(3)];
    }
    return apply_typo(word, kind, rng);
  });
}

TextDoc op_merge_words(const TextDoc& doc, double p, Rng& rng) {
  const std::u32string& s = doc.content;
  const auto words = word_spans(s);
  TextDoc out;
  std::size_t copied = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.content.append(s, copied, words[i].end - copied);
    copied = words[i].end;
    if (i + 1 < words.size() && rng.uniform() < p)
      copied = words[i + 1].begin;  // drop the gap
  }
  out.content.append(s, copied, s.size() - copied);
  return out;
}

TextDoc op_split_words(const TextDoc& doc, double p, Rng& rng) {
  return map_words(doc, [&](const std::u32string& word) {
    if (word.size() < 2 || rng.uniform() >= p) return word;
    const std::size_t pos = 1 + rng.choice(word.size() - 1);
    std::u32string out = word;
    out.insert(pos, 1, U' ');
    return out;
  });
}

PhraseMapTable mapping_from_params(const Params& p) {
  const std::string& json_text = get_string(p, "mapping_json");
  const std::string& path = get_string(p, "table_path");
  if (!json_text.empty() && !path.empty())
    throw ValidationError(
        "replace_words takes mapping_json or table_path, not both");
  if (!path.empty()) return load_phrase_table(path, path);
  PhraseMapTable table{"mapping_json", {}, 1};
  if (json_text.empty()) return table;
  const auto doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw ValidationError("mapping_json must be a JSON object of strings");
  for (const auto& [k, v] : doc.items()) {
    if (!v.is_string())
      throw ValidationError("mapping_json must be a JSON object of strings");
    const std::u32string key = utf8_decode(k);
    table.mapping[key] = utf8_decode(v.get<std::string>());
    table.max_phrase_words =
        std::max(table.max_phrase_words, word_spans(key).size());
  }
  return table;
}

ParamDef word_p_def() {
  return {"aug_word_p", ParamType::Float, false, 0.3, 0.0, 1.0, {}, true};
}

Params resolve_word_p(const Params& p, Rng& rng) {
  Params out = p;
  resolve_random_float(out, "aug_word_p", 0.1, 0.5, rng);
  return out;
}

double word_p_intensity(const Params& p) {
  return get_float(p, "aug_word_p") * 100.0;
}

}  // namespace

void register_word_ops(Registry<TextDoc>& reg) {
  reg.add({
      .name = "simulate_typos",
      .schema = {word_p_def()},
      .resolve = resolve_word_p,
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return op_simulate_typos(doc, get_float(p, "aug_word_p"), rng);
      },
      .intensity = word_p_intensity,
  });
  reg.add({
      .name = "swap_gendered_words",
      .schema = {{"table_path", ParamType::String, false, std::string()}},
      .apply = [](const TextDoc& doc, const Params& p, Rng&) {
        const std::string& path = get_string(p, "table_path");
        if (path.empty())
          return replace_phrases(doc, bundled_phrase_table("gendered_words"));
        return replace_phrases(doc, load_phrase_table(path, path));
      },
  });
  reg.add({
      .name = "merge_words",
      .schema = {word_p_def()},
      .resolve = resolve_word_p,
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return op_merge_words(doc, get_float(p, "aug_word_p"), rng);
      },
      .intensity = word_p_intensity,
  });
  reg.add({
      .name = "split_words",
      .schema = {word_p_def()},
      .resolve = resolve_word_p,
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return op_split_words(doc, get_float(p, "aug_word_p"), rng);
      },
      .intensity = word_p_intensity,
  });
  reg.add({
      .name = "replace_words",
      .schema = {{"mapping_json", ParamType::String, false, std::string()},
                 {"table_path", ParamType::String, false, std::string()}},
      .apply = [](const TextDoc& doc, const Params& p, Rng&) {
        return replace_phrases(doc, mapping_from_params(p));
      },
  });
  reg.add({
      .name = "contractions",
      .schema = {{"mode", ParamType::String, false, std::string("contract"),
                  {}, {}, {"contract", "expand"}}},
      .apply = [](const TextDoc& doc, const Params& p, Rng&) {
        const auto& table = bundled_phrase_table("contractions");
        if (get_string(p, "mode") == "contract")
          return replace_phrases(doc, table);
        static std::mutex mu;
        static PhraseMapTable expanded;
        {
          std::lock_guard lock(mu);
          if (expanded.mapping.empty()) expanded = reversed(table);
        }
        return replace_phrases(doc, expanded);
      },
  });
  reg.add({
      .name = "change_case",
      .schema = {{"case", ParamType::String, false, std::string("lower"), {},
                  {}, {"upper", "lower", "random"}}},
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        const std::string& mode = get_string(p, "case");
        return map_words(doc, [&](const std::u32string& word) {
          const bool upper =
              mode == "upper" || (mode == "random" && rng.choice(2) == 0);
          std::u32string out = word;
          for (char32_t& c : out) c = upper ? ascii_upper(c) : ascii_lower(c);
          return out;
        });
      },
  });
  reg.add({
      .name = "get_baseline",
      .apply = [](const TextDoc& doc, const Params&, Rng&) { return doc; },
      .intensity = [](const Params&) { return 0.0; },
  });
  reg.add({
      .name = "apply_lambda",
      .schema = {{"name", ParamType::String, false, std::string("identity")}},
      .apply = [](const TextDoc& doc, const Params& p, Rng&) {
        return find_text_lambda(get_string(p, "name"))(doc);
      },
      .intensity = [](const Params& p) {
        return get_string(p, "name") == "identity" ? 0.0 : 100.0;
      },
  });
}

}  // namespace augkit::text
