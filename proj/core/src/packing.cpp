#include "repocorpus/packing.hpp"

#include <algorithm>
#include <stdexcept>

namespace repocorpus {

Packer::Packer(std::size_t entry_len, TailPolicy tail, TokenId pad_id, Sink sink)
    : entry_len_(entry_len), tail_(tail), pad_id_(pad_id), sink_(std::move(sink)) {
  if (entry_len_ < 2) throw std::invalid_argument("entry length must be at least 2");
  current_.token_ids.reserve(entry_len_);
}

void Packer::add_document(std::span<const TokenId> tokens) {
  ++stats_.documents;
  stats_.total_tokens += tokens.size();
  bool starting = true;
  while (!tokens.empty()) {
    if (starting) current_.doc_boundaries.push_back(static_cast<std::uint32_t>(current_.token_ids.size()));
    starting = false;
    const std::size_t take = std::min(tokens.size(), entry_len_ - current_.token_ids.size());
    current_.token_ids.insert(current_.token_ids.end(), tokens.begin(), tokens.begin() + take);
    tokens = tokens.subspan(take);
    if (current_.token_ids.size() == entry_len_) {
      ++stats_.entries;
      sink_(std::move(current_));
      current_ = PackedEntry{};
      current_.token_ids.reserve(entry_len_);
    }
  }
}

void Packer::finish() {
  if (current_.token_ids.empty()) return;
  if (tail_ == TailPolicy::drop) {
    stats_.dropped_tail_tokens += current_.token_ids.size();
  } else {
    stats_.padded_tokens += entry_len_ - current_.token_ids.size();
    current_.token_ids.resize(entry_len_, pad_id_);
    ++stats_.entries;
    sink_(std::move(current_));
  }
  current_ = PackedEntry{};
}

PackResult pack_entries(std::span<const std::string> docs, const Tokenizer& tokenizer, std::size_t entry_len,
                        TailPolicy tail) {
  PackResult result;
  Packer packer(entry_len, tail, tokenizer.eos_id(), [&](PackedEntry&& e) { result.entries.push_back(std::move(e)); });
  std::size_t skipped = 0;
  for (const auto& doc : docs) {
    std::vector<TokenId> ids;
    try {
      ids = tokenizer.encode(doc);
    } catch (const TokenizerError&) {
      ++skipped;
      continue;
    }
    packer.add_document(ids);
  }
  packer.finish();
  result.stats = packer.stats();
  result.stats.skipped_documents = skipped;
  return result;
}

} // namespace repocorpus
