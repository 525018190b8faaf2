#pragma once

namespace augkit::text {

// ASCII-only case mapping; everything else passes through unchanged.

inline bool is_ascii_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }
inline bool is_ascii_lower(char32_t c) { return c >= U'a' && c <= U'z'; }

inline char32_t ascii_lower(char32_t c) {
  return is_ascii_upper(c) ? c + 32 : c;
}

inline char32_t ascii_upper(char32_t c) {
  return is_ascii_lower(c) ? c - 32 : c;
}

}  // namespace augkit::text
