#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace repocorpus {

enum class FimMode { psm, spm };

std::string_view fim_mode_name(FimMode mode);
std::optional<FimMode> fim_mode_from_name(std::string_view name);

struct FimConfig {
  double fim_rate = 0.5;
  FimMode mode = FimMode::psm;
  std::uint64_t seed = 0;
};

// Literal sentinel strings. The FIM markers use FULLWIDTH VERTICAL LINE
// (U+FF5C); the end-of-sequence marker uses ASCII '|'.
struct SentinelSet {
  std::string fim_start = "<｜fim_start｜>";
  std::string fim_hole = "<｜fim_hole｜>";
  std::string fim_end = "<｜fim_end｜>";
  std::string eos = "<|eos_token|>";

  /// Throws std::invalid_argument if any sentinel is empty or two coincide.
  void validate() const;
  /// True if any sentinel occurs in `text`.
  bool collides_with(std::string_view text) const;
};

/// The transformed layout for cut points given in code points,
/// 0 <= i <= j <= length(doc):
///   PSM: fim_start pre fim_hole suf fim_end middle eos
///   SPM: fim_start suf fim_hole pre fim_end middle eos
/// Throws std::invalid_argument for cut points outside that range.
std::string fim_layout(std::string_view doc, std::size_t i, std::size_t j, FimMode mode, const SentinelSet& s);

enum class FimStatus { plain, transformed, collision };

struct FimOutcome {
  FimStatus status = FimStatus::plain;
  std::string text;  // empty on collision
  std::size_t cut_begin = 0;
  std::size_t cut_end = 0;
};

/// Per-document generator: std::mt19937_64 seeded with cfg.seed + doc_index,
/// so results do not depend on processing order.
std::mt19937_64 fim_rng(const FimConfig& cfg, std::uint64_t doc_index);

/// With probability fim_rate, cuts the document at two uniform code-point
/// positions and emits fim_layout; otherwise emits doc + eos. A document
/// containing any sentinel is rejected with FimStatus::collision.
/// Throws std::invalid_argument for an empty document or a rate outside [0, 1].
FimOutcome fim_transform(std::string_view doc, const FimConfig& cfg, const SentinelSet& sentinels,
                         std::mt19937_64& rng);
FimOutcome fim_transform(std::string_view doc, const FimConfig& cfg, const SentinelSet& sentinels,
                         std::uint64_t doc_index);

struct FimParts {
  bool transformed = false;
  std::string prefix;
  std::string middle;
  std::string suffix;

  std::string original() const { return prefix + middle + suffix; }
};

/// Splits a transformed (or plain) document back into its fields. Returns
/// nullopt when `text` does not follow the layout for `mode`.
std::optional<FimParts> parse_fim(std::string_view text, FimMode mode, const SentinelSet& s);

} // namespace repocorpus
