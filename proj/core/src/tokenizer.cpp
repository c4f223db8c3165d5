#include "repocorpus/tokenizer.hpp"

namespace repocorpus {

ByteTokenizer::ByteTokenizer(SentinelSet sentinels) : sentinels_(std::move(sentinels)) { sentinels_.validate(); }

std::vector<TokenId> ByteTokenizer::encode(std::string_view text) const {
  const std::pair<const std::string*, TokenId> special[] = {
      {&sentinels_.fim_start, kFimStart},
      {&sentinels_.fim_hole, kFimHole},
      {&sentinels_.fim_end, kFimEnd},
      {&sentinels_.eos, kEos},
  };
  std::vector<TokenId> ids;
  ids.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool matched = false;
    for (const auto& [literal, id] : special) {
      if (text.compare(i, literal->size(), *literal) == 0) {
        ids.push_back(id);
        i += literal->size();
        matched = true;
        break;
      }
    }
    if (!matched) ids.push_back(static_cast<unsigned char>(text[i++]));
  }
  return ids;
}

std::string ByteTokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  out.reserve(ids.size());
  for (const auto id : ids) {
    switch (id) {
      case kFimStart: out += sentinels_.fim_start; break;
      case kFimHole: out += sentinels_.fim_hole; break;
      case kFimEnd: out += sentinels_.fim_end; break;
      case kEos: out += sentinels_.eos; break;
      default:
        if (id > 255) throw TokenizerError("byte tokenizer: id out of range: " + std::to_string(id));
        out.push_back(static_cast<char>(id));
    }
  }
  return out;
}

} // namespace repocorpus
