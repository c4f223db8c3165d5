#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "repocorpus/fim.hpp"

namespace repocorpus {

using TokenId = std::uint32_t;

class TokenizerError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Text -> token ids. Implementations must map each sentinel literal to a
// stable id sequence. encode() throws TokenizerError on failure.
class Tokenizer {
public:
  virtual ~Tokenizer() = default;
  virtual std::vector<TokenId> encode(std::string_view text) const = 0;
  virtual std::string decode(std::span<const TokenId> ids) const = 0;
  virtual TokenId eos_id() const = 0;
  virtual std::size_t vocab_size() const = 0;
};

// Byte-level fallback: ids 0..255 are raw bytes; the four sentinels take the
// reserved ids 256..259 whenever their literal appears in the text.
class ByteTokenizer final : public Tokenizer {
public:
  static constexpr TokenId kFimStart = 256;
  static constexpr TokenId kFimHole = 257;
  static constexpr TokenId kFimEnd = 258;
  static constexpr TokenId kEos = 259;

  explicit ByteTokenizer(SentinelSet sentinels = {});

  std::vector<TokenId> encode(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids) const override;
  TokenId eos_id() const override { return kEos; }
  std::size_t vocab_size() const override { return 260; }

  const SentinelSet& sentinels() const { return sentinels_; }

private:
  SentinelSet sentinels_;
};

} // namespace repocorpus
