#include <set>
#include <string>

#include <doctest.h>

#include "augkit/core/rng.hpp"
#include "augkit/text/case.hpp"
#include "augkit/text/catalog.hpp"
#include "augkit/text/tables.hpp"
#include "augkit/text/typos.hpp"

using namespace augkit;
using namespace augkit::text;

namespace {

TextDoc run(const std::string& name, Params params, const TextDoc& doc,
            std::uint64_t seed = 7) {
  return apply({name, std::move(params), 1.0}, doc, seed);
}

TextDoc doc(const char* utf8) { return make_doc(utf8); }

std::u32string random_text(Rng& rng) {
  static const std::u32string alphabet =
      U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
      U" \t\n.,;!?'-éßд✓\U0001F642日";
  std::u32string out;
  const std::size_t len = rng.choice(61);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(alphabet[rng.choice(alphabet.size())]);
  return out;
}

}  // namespace

TEST_CASE("text catalog registers the full set") {
  const auto names = text_registry().names();
  CHECK(names.size() == 17);
  for (const char* n :
       {"apply_lambda", "change_case", "contractions", "get_baseline",
        "insert_punctuation_chars", "insert_whitespace_chars",
        "insert_zero_width_chars", "merge_words", "replace_bidirectional",
        "replace_fun_fonts", "replace_similar_chars",
        "replace_similar_unicode_chars", "replace_upside_down",
        "replace_words", "simulate_typos", "split_words",
        "swap_gendered_words"})
    CHECK(text_registry().find(n) != nullptr);
}

TEST_CASE("word segmentation finds maximal non-whitespace runs") {
  const auto spans = word_spans(U"  a bc \t d\n");
  REQUIRE(spans.size() == 3);
  CHECK(spans[0].begin == 2);
  CHECK(spans[0].end == 3);
  CHECK(spans[1].begin == 4);
  CHECK(spans[1].end == 6);
  CHECK(spans[2].begin == 9);
  CHECK(spans[2].end == 10);
  CHECK(word_count(doc("he said, hi!")) == 3);
  CHECK(word_count(doc("")) == 0);
}

TEST_CASE("text shape counts scalars and words") {
  const Shape s = shape_of(doc("ab cd"));
  CHECK(s.kind == "text");
  CHECK(s.dims[0].second == 5.0);
  CHECK(s.dims[1].second == 2.0);
}

TEST_CASE("typo operators stay inside their reachable sets") {
  Rng rng(5);
  for (int i = 0; i < 64; ++i) {
    const std::u32string t = apply_typo(U"cat", TypoKind::Transpose, rng);
    CHECK((t == U"act" || t == U"cta"));
    const std::u32string d = apply_typo(U"cat", TypoKind::Delete, rng);
    CHECK((d == U"at" || d == U"ct" || d == U"ca"));
    const std::u32string s = apply_typo(U"q", TypoKind::Substitute, rng);
    CHECK((s == U"w" || s == U"a"));
    const std::u32string su = apply_typo(U"Q", TypoKind::Substitute, rng);
    CHECK((su == U"W" || su == U"A"));
    const std::u32string ins = apply_typo(U"ab", TypoKind::Insert, rng);
    CHECK(ins.size() == 3);
  }
  // Keys without neighbors: substitution no-op, insertion double-press.
  Rng r2(9);
  CHECK(apply_typo(U"...", TypoKind::Substitute, r2) == U"...");
  CHECK(apply_typo(U".", TypoKind::Insert, r2) == U"..");
}

TEST_CASE("simulate_typos selects words independently") {
  const TextDoc in = doc("the quick brown fox jumps over the lazy dog");
  CHECK(run("simulate_typos", {{"aug_word_p", 0.0}}, in) == in);

  const TextDoc all = run("simulate_typos", {{"aug_word_p", 1.0}}, in, 3);
  CHECK(word_count(all) == word_count(in));
  CHECK_FALSE(all == in);

  // Whitespace fabric is untouched.
  const TextDoc spaced = doc("a  b\t\tc\n");
  const TextDoc out = run("simulate_typos", {{"aug_word_p", 1.0}}, spaced, 4);
  std::u32string ws_in, ws_out;
  for (char32_t c : spaced.content)
    if (is_space(c)) ws_in.push_back(c);
  for (char32_t c : out.content)
    if (is_space(c)) ws_out.push_back(c);
  CHECK(ws_in == ws_out);

  // Single-scalar words never vanish.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TextDoc one = run("simulate_typos", {{"aug_word_p", 1.0}},
                            doc("a"), seed);
    CHECK(word_count(one) == 1);
    CHECK(!one.content.empty());
  }
}

TEST_CASE("zero width insertion strips back to the input") {
  const TextDoc in = doc("ab");
  const TextDoc out =
      run("insert_zero_width_chars", {{"granularity", std::string("all")}}, in);
  CHECK(out.content.size() == 3);
  CHECK(strip_zero_width(out) == in);
  CHECK(run("insert_zero_width_chars", {}, doc("")).content.empty());

  const TextDoc words = doc("one two three");
  const TextDoc out_w = run("insert_zero_width_chars",
                            {{"granularity", std::string("word")}}, words);
  CHECK(out_w.content.size() == words.content.size() + 2);
  CHECK(strip_zero_width(out_w) == words);
  CHECK_THROWS_AS(run("insert_zero_width_chars",
                      {{"granularity", std::string("char")}}, words),
                  ValidationError);
}

TEST_CASE("bidirectional wrap reverses between control scalars") {
  const TextDoc out = run("replace_bidirectional", {}, doc("abc"));
  REQUIRE(out.content.size() == 5);
  CHECK(out.content[0] == U'‮');
  CHECK(out.content[1] == U'c');
  CHECK(out.content[2] == U'b');
  CHECK(out.content[3] == U'a');
  CHECK(out.content[4] == U'‬');

  const TextDoc empty = run("replace_bidirectional", {}, doc(""));
  REQUIRE(empty.content.size() == 2);
  CHECK(empty.content[0] == U'‮');
  CHECK(empty.content[1] == U'‬');
}

TEST_CASE("homoglyph replacement respects probability and the table") {
  const TextDoc in = doc("letters only");
  CHECK(run("replace_similar_chars", {{"aug_char_p", 0.0}}, in) == in);

  const auto& table = bundled_char_table("homoglyphs").mapping;
  const TextDoc o = run("replace_similar_chars", {{"aug_char_p", 1.0}},
                        doc("o"));
  REQUIRE(o.content.size() == 1);
  const auto& alts = table.at(U'o');
  CHECK(std::count(alts.begin(), alts.end(), o.content) == 1);

  // Digits absent from the table pass through.
  const TextDoc digits = doc("12457");
  CHECK(run("replace_similar_chars", {{"aug_char_p", 1.0}}, digits) == digits);

  // Bundled homoglyphs are single scalars, so length never changes.
  const TextDoc mixed = doc("The look of doom");
  const TextDoc swapped =
      run("replace_similar_chars", {{"aug_char_p", 1.0}}, mixed, 11);
  CHECK(swapped.content.size() == mixed.content.size());
  CHECK_FALSE(swapped == mixed);
}

TEST_CASE("accented replacement draws from the unicode table") {
  const TextDoc out = run("replace_similar_unicode_chars",
                          {{"aug_char_p", 1.0}}, doc("a"));
  REQUIRE(out.content.size() == 1);
  const auto& alts = bundled_char_table("similar_unicode").mapping.at(U'a');
  CHECK(std::count(alts.begin(), alts.end(), out.content) == 1);
}

TEST_CASE("upside down flips and reverses") {
  CHECK(run("replace_upside_down", {}, doc("a")).content == U"ɐ");
  CHECK(run("replace_upside_down", {}, doc("ab")).content == U"qɐ");
  const TextDoc in = doc("hello, world!");
  CHECK(run("replace_upside_down", {},
            run("replace_upside_down", {}, in)) == in);
}

TEST_CASE("fun fonts restyle the mapped alphabet") {
  const TextDoc out =
      run("replace_fun_fonts", {{"style", std::string("bold")}}, doc("AB c"));
  CHECK(out.content == U"\U0001D400\U0001D401 \U0001D41C");
  CHECK(word_count(out) == 2);
  CHECK_THROWS_AS(
      run("replace_fun_fonts", {{"style", std::string("wingdings")}},
          doc("x")),
      ValidationError);

  const TransformSpec random_style{
      "replace_fun_fonts", {{"style", std::string("random")}}, 1.0};
  const TextDoc a = apply(random_style, doc("abc"), 21);
  CHECK(a == apply(random_style, doc("abc"), 21));
}

TEST_CASE("gendered swaps are whole word and case preserving") {
  CHECK(run("swap_gendered_words", {}, doc("he said")).content ==
        U"she said");
  CHECK(run("swap_gendered_words", {}, doc("the")).content == U"the");
  CHECK(run("swap_gendered_words", {}, doc("He, briefly,")).content ==
        U"She, briefly,");
  CHECK(run("swap_gendered_words", {}, doc("his book")).content ==
        U"her book");
  CHECK(run("swap_gendered_words", {}, doc("ushers")).content == U"ushers");

  // Bijective pairs swap back.
  const TextDoc bij = doc("the king met a boy and his sister");
  const TextDoc once = run("swap_gendered_words", {}, bij);
  CHECK(once.content == U"the queen met a girl and her brother");
}

TEST_CASE("merge and split adjust word boundaries") {
  CHECK(run("merge_words", {{"aug_word_p", 1.0}}, doc("a b")).content ==
        U"ab");
  CHECK(run("merge_words", {{"aug_word_p", 1.0}}, doc(" a  b c ")).content ==
        U" abc ");
  const TextDoc in = doc("left right");
  CHECK(run("merge_words", {{"aug_word_p", 0.0}}, in) == in);

  CHECK(run("split_words", {{"aug_word_p", 1.0}}, doc("ab")).content ==
        U"a b");
  CHECK(run("split_words", {{"aug_word_p", 1.0}}, doc("x")).content == U"x");
  CHECK(run("split_words", {{"aug_word_p", 0.0}}, in) == in);
  const TextDoc split = run("split_words", {{"aug_word_p", 1.0}},
                            doc("abcdef"), 5);
  CHECK(word_count(split) == 2);
  CHECK(strip_zero_width(split).content.size() == 7);
}

TEST_CASE("replace_words uses the caller's mapping") {
  const std::string mapping = R"({"cat": "dog", "ice cream": "gelato"})";
  CHECK(run("replace_words", {{"mapping_json", mapping}},
            doc("The cat sat")).content == U"The dog sat");
  CHECK(run("replace_words", {{"mapping_json", mapping}},
            doc("Cat!")).content == U"Dog!");
  CHECK(run("replace_words", {{"mapping_json", mapping}},
            doc("I love Ice cream, a lot")).content ==
        U"I love Gelato, a lot");
  CHECK(run("replace_words", {{"mapping_json", mapping}},
            doc("concatenate")).content == U"concatenate");

  const TextDoc in = doc("anything");
  CHECK(run("replace_words", {}, in) == in);
  CHECK_THROWS_AS(run("replace_words", {{"mapping_json", std::string("[1]")}},
                      in),
                  ValidationError);
  CHECK_THROWS_AS(run("replace_words",
                      {{"mapping_json", mapping},
                       {"table_path", std::string("x.tsv")}},
                      in),
                  ValidationError);
}

TEST_CASE("contractions contract and expand through the table") {
  CHECK(run("contractions", {}, doc("you are not alone")).content ==
        U"you're not alone");
  CHECK(run("contractions", {}, doc("I am here")).content == U"I'm here");
  CHECK(run("contractions", {{"mode", std::string("expand")}},
            doc("can't stop")).content == U"cannot stop");
  CHECK(run("contractions", {{"mode", std::string("expand")}},
            doc("I'm here")).content == U"I am here");
  CHECK_THROWS_AS(run("contractions", {{"mode", std::string("shrink")}},
                      doc("x")),
                  ValidationError);
}

TEST_CASE("change_case maps ascii per word") {
  CHECK(run("change_case", {{"case", std::string("lower")}},
            doc("Hello")).content == U"hello");
  CHECK(run("change_case", {{"case", std::string("upper")}},
            doc("Hello World")).content == U"HELLO WORLD");
  const TransformSpec random_case{
      "change_case", {{"case", std::string("random")}}, 1.0};
  const TextDoc in = doc("one two three four five six");
  const TextDoc a = apply(random_case, in, 13);
  CHECK(a == apply(random_case, in, 13));
  CHECK(word_count(a) == 6);
  // Accented scalars pass through untouched.
  CHECK(run("change_case", {{"case", std::string("upper")}},
            doc("caf\xC3\xA9")).content == U"CAFé");
}

TEST_CASE("baseline and lambda text transforms") {
  const TextDoc in = doc("unchanged");
  CHECK(run("get_baseline", {}, in) == in);
  CHECK(run("apply_lambda", {}, in) == in);
  register_text_lambda("shout_for_test", [](const TextDoc& d) {
    TextDoc out = d;
    for (char32_t& c : out.content) c = ascii_upper(c);
    return out;
  });
  CHECK(run("apply_lambda", {{"name", std::string("shout_for_test")}},
            in).content == U"UNCHANGED");
  CHECK_THROWS_AS(run("apply_lambda", {{"name", std::string("nope")}}, in),
                  ValidationError);
}

TEST_CASE("round trips hold over a random corpus") {
  Rng rng(606);
  for (int i = 0; i < 1000; ++i) {
    const TextDoc in{random_text(rng)};
    const std::uint64_t seed = rng.next_u64();

    const TextDoc zw = run("insert_zero_width_chars", {}, in, seed);
    CHECK(strip_zero_width(zw) == in);

    const TextDoc bidi = run("replace_bidirectional", {}, in, seed);
    REQUIRE(bidi.content.size() == in.content.size() + 2);
    std::u32string unwrapped(bidi.content.rbegin() + 1,
                             bidi.content.rend() - 1);
    CHECK(unwrapped == in.content);

    CHECK(run("replace_upside_down", {},
              run("replace_upside_down", {}, in, seed), seed) == in);

    const std::size_t words = word_count(in);
    CHECK(word_count(run("simulate_typos", {{"aug_word_p", 1.0}}, in,
                         seed)) == words);
    const TextDoc glyphs =
        run("replace_similar_chars", {{"aug_char_p", 1.0}}, in, seed);
    CHECK(word_count(glyphs) == words);
    CHECK(glyphs.content.size() == in.content.size());
    CHECK(word_count(run("replace_fun_fonts", {}, in, seed)) == words);
  }
}

TEST_CASE("punctuation and whitespace insertion") {
  const TextDoc out = run("insert_punctuation_chars",
                          {{"granularity", std::string("all")},
                           {"chars", std::string(".")}},
                          doc("ab"));
  CHECK(out.content == U"a.b");

  const TextDoc words = run("insert_punctuation_chars",
                            {{"granularity", std::string("word")},
                             {"chars", std::string("!")}},
                            doc("hi there world"));
  CHECK(words.content == U"hi !there !world");

  const TextDoc ws = run("insert_whitespace_chars",
                         {{"granularity", std::string("all")},
                          {"chars", std::string(" ")}},
                         doc("abc"));
  CHECK(ws.content == U"a b c");
  CHECK_THROWS_AS(run("insert_whitespace_chars",
                      {{"chars", std::string("")}}, doc("ab")),
                  ValidationError);
}

TEST_CASE("text transforms are deterministic under a fixed seed") {
  const TextDoc in = doc("the quick brown fox jumps over the lazy dog");
  for (const char* name :
       {"simulate_typos", "replace_similar_chars", "insert_zero_width_chars",
        "merge_words", "split_words"}) {
    const TransformSpec spec{name, {}, 1.0};
    CHECK(apply(spec, in, 99) == apply(spec, in, 99));
  }
  // Different seeds eventually diverge.
  const TransformSpec typos{"simulate_typos", {{"aug_word_p", 1.0}}, 1.0};
  CHECK_FALSE(apply(typos, in, 1) == apply(typos, in, 2));
}

TEST_CASE("text pipeline metadata carries intensities") {
  Pipeline p;
  p.children.push_back(
      TransformSpec{"simulate_typos", {{"aug_word_p", 0.4}}, 1.0});
  p.children.push_back(TransformSpec{
      "insert_zero_width_chars", {{"granularity", std::string("word")}}, 1.0});
  p.children.push_back(TransformSpec{"get_baseline", {}, 1.0});
  const auto [out, meta] = apply_pipeline(p, doc("some words here"), 8);
  REQUIRE(meta.size() == 3);
  CHECK(meta[0].intensity == doctest::Approx(40.0));
  CHECK(meta[1].intensity == doctest::Approx(50.0));
  CHECK(meta[2].intensity == doctest::Approx(0.0));
  CHECK(meta[0].src_shape.kind == "text");
  CHECK(meta[2].applied);
}
