#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repocorpus {

// UTF-8 helpers. All character counts in this library are code points.

/// Returns true when `bytes` is well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid_utf8(std::string_view bytes);

/// Decodes well-formed UTF-8. Behaviour on malformed input is unspecified;
/// callers validate first.
std::u32string decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);

/// Number of code points. Counts lead bytes, so it is cheap on valid input.
std::size_t count_code_points(std::string_view bytes);

/// Byte offset of the code point with index `cp_index`; `bytes.size()` for
/// the one-past-the-end index.
std::size_t byte_offset_of(std::string_view bytes, std::size_t cp_index);

/// Unicode general category L (Lu, Ll, Lt, Lm, Lo).
bool is_letter(char32_t cp);

bool is_ascii_space(char c);

/// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string_view> split_whitespace(std::string_view text);

/// 64-bit FNV-1a followed by a splitmix finalizer. Stable across platforms,
/// unlike std::hash.
std::uint64_t stable_hash(std::string_view bytes);

std::uint64_t mix64(std::uint64_t x);

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ (value + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2)));
}

std::string to_hex(std::uint64_t value);

} // namespace repocorpus
