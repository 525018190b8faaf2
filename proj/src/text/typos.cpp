#include "augkit/text/typos.hpp"

#include "augkit/text/case.hpp"
#include "augkit/text/tables.hpp"

namespace augkit::text {

namespace {

// Picks a random QWERTY neighbor of c, carrying over ASCII case; returns 0
// when the key has no neighbors in the table.
char32_t random_neighbor(char32_t c, Rng& rng) {
  const auto& table = bundled_char_table("qwerty_adjacent").mapping;
  const auto it = table.find(ascii_lower(c));
  if (it == table.end()) return 0;
  const std::u32string& pick = it->second[rng.choice(it->second.size())];
  return is_ascii_upper(c) ? ascii_upper(pick[0]) : pick[0];
}

}  // namespace

std::u32string apply_typo(const std::u32string& word, TypoKind kind,
                          Rng& rng) {
  std::u32string out = word;
  if (out.empty()) return out;
  switch (kind) {
    case TypoKind::Substitute: {
      const std::size_t pos = rng.choice(out.size());
      const char32_t repl = random_neighbor(out[pos], rng);
      if (repl != 0) out[pos] = repl;
      break;
    }
    case TypoKind::Transpose: {
      if (out.size() < 2) break;
      const std::size_t pos = rng.choice(out.size() - 1);
      std::swap(out[pos], out[pos + 1]);
      break;
    }
    case TypoKind::Delete: {
      if (out.size() < 2) break;
      out.erase(rng.choice(out.size()), 1);
      break;
    }
    case TypoKind::Insert: {
      const std::size_t pos = rng.choice(out.size());
      const char32_t neighbor = random_neighbor(out[pos], rng);
      // Keys with no neighbors read as a double press.
      out.insert(pos + 1, 1, neighbor != 0 ? neighbor : out[pos]);
      break;
    }
  }
  return out;
}

}  // namespace augkit::text
