#pragma once

#include <string>

#include "augkit/core/rng.hpp"

namespace augkit::text {

enum class TypoKind { Substitute = 0, Transpose = 1, Delete = 2, Insert = 3 };

// Applies one typo of the given kind to a word (no whitespace inside).
// Substitution and insertion draw replacement characters from the QWERTY
// adjacency table; characters without neighbors are left alone
// (substitution) or doubled (insertion).
std::u32string apply_typo(const std::u32string& word, TypoKind kind, Rng& rng);

}  // namespace augkit::text
