#include "repocorpus/fim.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "repocorpus/text.hpp"

namespace repocorpus {
namespace {

// Uniform in [0, bound) without modulo bias.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

std::string_view fim_mode_name(FimMode mode) { return mode == FimMode::psm ? "psm" : "spm"; }

std::optional<FimMode> fim_mode_from_name(std::string_view name) {
  if (name == "psm" || name == "PSM") return FimMode::psm;
  if (name == "spm" || name == "SPM") return FimMode::spm;
  return std::nullopt;
}

void SentinelSet::validate() const {
  const std::string* all[] = {&fim_start, &fim_hole, &fim_end, &eos};
  for (std::size_t a = 0; a < 4; ++a) {
    if (all[a]->empty()) throw std::invalid_argument("sentinel strings must be non-empty");
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (*all[a] == *all[b]) throw std::invalid_argument("sentinel strings must be pairwise distinct");
    }
  }
}

bool SentinelSet::collides_with(std::string_view text) const {
  for (const auto* s : {&fim_start, &fim_hole, &fim_end, &eos}) {
    if (text.find(*s) != std::string_view::npos) return true;
  }
  return false;
}

std::string fim_layout(std::string_view doc, std::size_t i, std::size_t j, FimMode mode, const SentinelSet& s) {
  if (i > j) throw std::invalid_argument("fim cut points must satisfy i <= j");
  if (j > count_code_points(doc)) throw std::invalid_argument("fim cut point past the end of the document");
  const std::size_t bi = byte_offset_of(doc, i);
  const std::size_t bj = byte_offset_of(doc, j);
  const std::string_view pre = doc.substr(0, bi);
  const std::string_view mid = doc.substr(bi, bj - bi);
  const std::string_view suf = doc.substr(bj);

  std::string out;
  out.reserve(doc.size() + s.fim_start.size() + s.fim_hole.size() + s.fim_end.size() + s.eos.size());
  out += s.fim_start;
  out += mode == FimMode::psm ? pre : suf;
  out += s.fim_hole;
  out += mode == FimMode::psm ? suf : pre;
  out += s.fim_end;
  out += mid;
  out += s.eos;
  return out;
}

std::mt19937_64 fim_rng(const FimConfig& cfg, std::uint64_t doc_index) {
  return std::mt19937_64(cfg.seed + doc_index);
}

FimOutcome fim_transform(std::string_view doc, const FimConfig& cfg, const SentinelSet& sentinels,
                         std::mt19937_64& rng) {
  if (doc.empty()) throw std::invalid_argument("fim_transform: empty document");
  if (!(cfg.fim_rate >= 0.0 && cfg.fim_rate <= 1.0)) throw std::invalid_argument("fim_rate must lie in [0, 1]");

  FimOutcome out;
  if (sentinels.collides_with(doc)) {
    out.status = FimStatus::collision;
    return out;
  }
  // Always consume the same number of draws, so the stream position does not
  // depend on which branch was taken.
  const bool transform = uniform_unit(rng) < cfg.fim_rate;
  const std::uint64_t len = count_code_points(doc);
  auto a = uniform_below(rng, len + 1);
  auto b = uniform_below(rng, len + 1);
  if (a > b) std::swap(a, b);

  if (!transform) {
    out.text.reserve(doc.size() + sentinels.eos.size());
    out.text.append(doc);
    out.text += sentinels.eos;
    return out;
  }
  out.status = FimStatus::transformed;
  out.cut_begin = a;
  out.cut_end = b;
  out.text = fim_layout(doc, a, b, cfg.mode, sentinels);
  return out;
}

FimOutcome fim_transform(std::string_view doc, const FimConfig& cfg, const SentinelSet& sentinels,
                         std::uint64_t doc_index) {
  auto rng = fim_rng(cfg, doc_index);
  return fim_transform(doc, cfg, sentinels, rng);
}

std::optional<FimParts> parse_fim(std::string_view text, FimMode mode, const SentinelSet& s) {
  if (!text.ends_with(s.eos)) return std::nullopt;
  text.remove_suffix(s.eos.size());
  FimParts parts;
  if (!text.starts_with(s.fim_start)) {
    parts.prefix = std::string(text);
    return parts;
  }
  text.remove_prefix(s.fim_start.size());
  const auto hole = text.find(s.fim_hole);
  if (hole == std::string_view::npos) return std::nullopt;
  const auto end = text.find(s.fim_end, hole + s.fim_hole.size());
  if (end == std::string_view::npos) return std::nullopt;
  const std::string_view first = text.substr(0, hole);
  const std::string_view second = text.substr(hole + s.fim_hole.size(), end - hole - s.fim_hole.size());
  parts.transformed = true;
  parts.prefix = std::string(mode == FimMode::psm ? first : second);
  parts.suffix = std::string(mode == FimMode::psm ? second : first);
  parts.middle = std::string(text.substr(end + s.fim_end.size()));
  return parts;
}

} // namespace repocorpus
