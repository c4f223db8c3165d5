#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "repocorpus/repo_sample.hpp"

namespace repocorpus {

// One benchmark string (docstring, question or solution) and where it came from.
struct TestString {
  std::string text;
  std::string benchmark;
};

// Token n-grams drawn from benchmark test data. Tokens are whitespace-separated
// words, compared case-sensitively. Strings of at least 10 tokens contribute
// every 10-token window; strings of 3..9 tokens are kept whole for exact
// matching; shorter strings are ignored.
class ContaminationIndex {
public:
  static constexpr std::size_t kWindow = 10;
  static constexpr std::size_t kMinExactTokens = 3;

  void add(std::string_view text, std::string_view benchmark);

  std::size_t ten_gram_count() const { return ten_grams_; }
  std::size_t exact_count() const { return exact_; }
  std::size_t ignored_count() const { return ignored_; }

  /// Entries are stored as their tokens joined by single spaces.
  bool contains(std::string_view normalized) const;
  /// Benchmarks an entry was drawn from, sorted; empty when absent.
  std::vector<std::string> labels_for(std::string_view normalized) const;

  struct Match {
    std::string entry;
    std::vector<std::string> labels;
  };
  /// Every indexed entry occurring as a contiguous token run of `text`, in
  /// first-occurrence order.
  std::vector<Match> scan(std::string_view text) const;

private:
  struct Entry {
    std::string text;
    std::size_t tokens = 0;
    std::vector<std::string> labels;
  };
  const Entry* find(std::uint64_t hash, std::string_view normalized) const;
  void insert(std::span<const std::string_view> tokens, std::string_view benchmark);

  std::vector<Entry> entries_;
  std::unordered_multimap<std::uint64_t, std::size_t> by_hash_;
  std::vector<bool> lengths_ = std::vector<bool>(kWindow + 1, false);
  std::size_t ten_grams_ = 0;
  std::size_t exact_ = 0;
  std::size_t ignored_ = 0;
};

/// Whitespace runs collapsed to one space, trimmed, case preserved.
std::string normalize_whitespace(std::string_view text);

ContaminationIndex build_contamination_index(std::span<const TestString> test_strings);

struct ContaminationReport {
  bool hit = false;
  std::vector<std::string> matched_entries;
  std::vector<std::string> benchmarks;  // sorted, unique
};

ContaminationReport is_contaminated(std::string_view text, const ContaminationIndex& index);
ContaminationReport is_contaminated(const RepoSample& sample, const ContaminationIndex& index);

} // namespace repocorpus
