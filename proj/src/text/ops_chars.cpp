#include <algorithm>
#include <map>
#include <mutex>

#include "augkit/core/rng.hpp"
#include "augkit/core/value.hpp"
#include "augkit/errors.hpp"
#include "augkit/text/tables.hpp"
#include "catalog_parts.hpp"

namespace augkit::text {

namespace {

const std::u32string kZeroWidth = U"​‌‍⁠";

// Replaces each mappable scalar with probability p by a uniformly chosen
// alternative; unmappable scalars draw nothing.
TextDoc per_char_replace(const TextDoc& doc, const CharMapTable& table,
                         double p, Rng& rng) {
  TextDoc out;
  out.content.reserve(doc.content.size());
  for (char32_t c : doc.content) {
    const auto it = table.mapping.find(c);
    if (it != table.mapping.end() && rng.uniform() < p)
      out.content += it->second[rng.choice(it->second.size())];
    else
      out.content.push_back(c);
  }
  return out;
}

// Inserts one scalar from `chars` into each slot: between every adjacent
// scalar pair for "all", before every word but the first for "word".
TextDoc insert_between(const TextDoc& doc, const std::string& granularity,
                       const std::u32string& chars, Rng& rng) {
  if (granularity != "all" && granularity != "word")
    throw ValidationError("granularity must be \"all\" or \"word\"");
  if (chars.empty())
    throw ValidationError("insertion character set is empty");
  const std::u32string& s = doc.content;
  TextDoc out;
  if (granularity == "all") {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) out.content.push_back(chars[rng.choice(chars.size())]);
      out.content.push_back(s[i]);
    }
    return out;
  }
  const auto words = word_spans(s);
  std::size_t copied = 0;
  for (std::size_t w = 1; w < words.size(); ++w) {
    out.content.append(s, copied, words[w].begin - copied);
    out.content.push_back(chars[rng.choice(chars.size())]);
    copied = words[w].begin;
  }
  out.content.append(s, copied, s.size() - copied);
  return out;
}

const CharMapTable& char_table_for(const std::string& user_path,
                                   const std::string& bundled) {
  if (user_path.empty()) return bundled_char_table(bundled);
  static std::mutex mu;
  static std::map<std::string, CharMapTable> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(user_path);
  if (it == cache.end())
    it = cache.emplace(user_path, load_char_table(user_path, user_path))
             .first;
  return it->second;
}

double granularity_intensity(const Params& p) {
  return get_string(p, "granularity") == "all" ? 100.0 : 50.0;
}

ParamDef granularity_def() {
  return {"granularity", ParamType::String, false, std::string("all"),
          {},   {},       {"all", "word"}};
}

ParamDef char_p_def() {
  return {"aug_char_p", ParamType::Float, false, 0.3, 0.0, 1.0, {}, true};
}

Params resolve_char_p(const Params& p, Rng& rng) {
  Params out = p;
  resolve_random_float(out, "aug_char_p", 0.1, 0.5, rng);
  return out;
}

}  // namespace

void register_char_ops(Registry<TextDoc>& reg) {
  reg.add({
      .name = "insert_zero_width_chars",
      .schema = {granularity_def()},
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return insert_between(doc, get_string(p, "granularity"), kZeroWidth,
                              rng);
      },
      .intensity = granularity_intensity,
  });
  reg.add({
      .name = "replace_bidirectional",
      .apply = [](const TextDoc& doc, const Params&, Rng&) {
        TextDoc out;
        out.content.reserve(doc.content.size() + 2);
        out.content.push_back(U'‮');
        out.content.append(doc.content.rbegin(), doc.content.rend());
        out.content.push_back(U'‬');
        return out;
      },
  });
  reg.add({
      .name = "replace_similar_chars",
      .schema = {char_p_def(),
                 {"table_path", ParamType::String, false, std::string()}},
      .resolve = resolve_char_p,
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return per_char_replace(
            doc, char_table_for(get_string(p, "table_path"), "homoglyphs"),
            get_float(p, "aug_char_p"), rng);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "aug_char_p") * 100.0;
      },
  });
  reg.add({
      .name = "replace_similar_unicode_chars",
      .schema = {char_p_def(),
                 {"table_path", ParamType::String, false, std::string()}},
      .resolve = resolve_char_p,
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return per_char_replace(
            doc,
            char_table_for(get_string(p, "table_path"), "similar_unicode"),
            get_float(p, "aug_char_p"), rng);
      },
      .intensity = [](const Params& p) {
        return get_float(p, "aug_char_p") * 100.0;
      },
  });
  reg.add({
      .name = "replace_upside_down",
      .apply = [](const TextDoc& doc, const Params&, Rng&) {
        const auto& table = bundled_char_table("upside_down").mapping;
        TextDoc out;
        out.content.reserve(doc.content.size());
        for (auto it = doc.content.rbegin(); it != doc.content.rend(); ++it) {
          const auto hit = table.find(*it);
          out.content.push_back(hit != table.end() ? hit->second[0][0] : *it);
        }
        return out;
      },
  });
  reg.add({
      .name = "replace_fun_fonts",
      .schema = {{"style", ParamType::String, false, std::string("bold"), {},
                  {}, {}, true}},
      .resolve = [](const Params& p, Rng& rng) {
        Params out = p;
        if (is_random_marker(out.at("style"))) {
          std::vector<std::string> names;
          for (const auto& [name, table] : fun_font_styles())
            names.push_back(name);
          out["style"] = names[rng.choice(names.size())];
        }
        return out;
      },
      .apply = [](const TextDoc& doc, const Params& p, Rng&) {
        const auto& styles = fun_font_styles();
        const auto it = styles.find(get_string(p, "style"));
        if (it == styles.end())
          throw ValidationError("unknown fun font style '" +
                                get_string(p, "style") + "'");
        TextDoc out;
        out.content.reserve(doc.content.size());
        for (char32_t c : doc.content) {
          const auto hit = it->second.mapping.find(c);
          if (hit != it->second.mapping.end())
            out.content += hit->second[0];
          else
            out.content.push_back(c);
        }
        return out;
      },
  });
  reg.add({
      .name = "insert_punctuation_chars",
      .schema = {granularity_def(),
                 {"chars", ParamType::String, false, std::string(".,;!?")}},
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return insert_between(doc, get_string(p, "granularity"),
                              utf8_decode(get_string(p, "chars")), rng);
      },
      .intensity = granularity_intensity,
  });
  reg.add({
      .name = "insert_whitespace_chars",
      .schema = {granularity_def(),
                 {"chars", ParamType::String, false, std::string(" \t\n")}},
      .apply = [](const TextDoc& doc, const Params& p, Rng& rng) {
        return insert_between(doc, get_string(p, "granularity"),
                              utf8_decode(get_string(p, "chars")), rng);
      },
      .intensity = granularity_intensity,
  });
}

}  // namespace augkit::text
