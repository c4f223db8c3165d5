#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "repocorpus/tokenizer.hpp"

namespace repocorpus {

enum class TailPolicy { drop, pad };

// A fixed-length training entry. doc_boundaries holds the in-entry offsets at
// which a document starts; a document continued from the previous entry does
// not produce a boundary at 0.
struct PackedEntry {
  std::vector<TokenId> token_ids;
  std::vector<std::uint32_t> doc_boundaries;
};

struct PackStats {
  std::size_t documents = 0;
  std::size_t skipped_documents = 0;  // tokenizer failures
  std::size_t entries = 0;
  std::uint64_t total_tokens = 0;     // tokens of all packed documents
  std::uint64_t dropped_tail_tokens = 0;
  std::uint64_t padded_tokens = 0;
};

// Streaming packer: concatenates document token streams in order and hands
// out each entry as soon as it is full. Memory is bounded by one entry.
class Packer {
public:
  using Sink = std::function<void(PackedEntry&&)>;

  /// Throws std::invalid_argument for entry_len < 2.
  Packer(std::size_t entry_len, TailPolicy tail, TokenId pad_id, Sink sink);

  void add_document(std::span<const TokenId> tokens);
  /// Flushes the partial tail according to the policy. Call once.
  void finish();

  const PackStats& stats() const { return stats_; }
  PackStats& stats() { return stats_; }

private:
  std::size_t entry_len_;
  TailPolicy tail_;
  TokenId pad_id_;
  Sink sink_;
  PackedEntry current_;
  PackStats stats_;
};

struct PackResult {
  std::vector<PackedEntry> entries;
  PackStats stats;
};

/// Tokenizes each document and packs the concatenated stream into entries of
/// exactly entry_len tokens. Documents the tokenizer rejects are skipped and
/// counted. Conservation: entries * entry_len == total_tokens -
/// dropped_tail_tokens + padded_tokens.
PackResult pack_entries(std::span<const std::string> docs, const Tokenizer& tokenizer, std::size_t entry_len,
                        TailPolicy tail = TailPolicy::drop);

} // namespace repocorpus
