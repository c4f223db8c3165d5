#include "repocorpus/decontam.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "repocorpus/text.hpp"

namespace repocorpus {
namespace {

// Folded left to right from a fixed seed so that a scan can extend a window
// by one token at a time; the length is mixed in last.
constexpr std::uint64_t kWindowSeed = 0x6A09E667F3BCC908ULL;

std::uint64_t finish_window(std::uint64_t running, std::size_t len) { return hash_combine(running, len); }

std::uint64_t window_hash(std::span<const std::uint64_t> token_hashes) {
  std::uint64_t h = kWindowSeed;
  for (const auto t : token_hashes) h = hash_combine(h, t);
  return finish_window(h, token_hashes.size());
}

// True when `joined` is exactly `tokens` separated by single spaces.
bool equals_joined(std::string_view joined, std::span<const std::string_view> tokens) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) {
      if (pos >= joined.size() || joined[pos] != ' ') return false;
      ++pos;
    }
    if (joined.compare(pos, tokens[i].size(), tokens[i]) != 0) return false;
    pos += tokens[i].size();
  }
  return pos == joined.size();
}

std::string join_tokens(std::span<const std::string_view> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::uint64_t> hash_tokens(std::span<const std::string_view> tokens) {
  std::vector<std::uint64_t> out;
  out.reserve(tokens.size());
  for (const auto t : tokens) out.push_back(stable_hash(t));
  return out;
}

} // namespace

std::string normalize_whitespace(std::string_view text) {
  const auto tokens = split_whitespace(text);
  return join_tokens(tokens);
}

void ContaminationIndex::insert(std::span<const std::string_view> tokens, std::string_view benchmark) {
  const auto hashes = hash_tokens(tokens);
  const std::uint64_t h = window_hash(hashes);
  std::string text = join_tokens(tokens);
  for (auto [it, end] = by_hash_.equal_range(h); it != end; ++it) {
    auto& e = entries_[it->second];
    if (e.text == text) {
      if (std::find(e.labels.begin(), e.labels.end(), benchmark) == e.labels.end()) {
        e.labels.emplace_back(benchmark);
        std::sort(e.labels.begin(), e.labels.end());
      }
      return;
    }
  }
  by_hash_.emplace(h, entries_.size());
  entries_.push_back({std::move(text), tokens.size(), {std::string(benchmark)}});
  lengths_[tokens.size()] = true;
  if (tokens.size() == kWindow) {
    ++ten_grams_;
  } else {
    ++exact_;
  }
}

void ContaminationIndex::add(std::string_view text, std::string_view benchmark) {
  const auto tokens = split_whitespace(text);
  if (tokens.size() < kMinExactTokens) {
    ++ignored_;
    return;
  }
  if (tokens.size() < kWindow) {
    insert(tokens, benchmark);
    return;
  }
  const std::span<const std::string_view> all(tokens);
  for (std::size_t i = 0; i + kWindow <= tokens.size(); ++i) insert(all.subspan(i, kWindow), benchmark);
}

const ContaminationIndex::Entry* ContaminationIndex::find(std::uint64_t hash, std::string_view normalized) const {
  for (auto [it, end] = by_hash_.equal_range(hash); it != end; ++it) {
    if (entries_[it->second].text == normalized) return &entries_[it->second];
  }
  return nullptr;
}

bool ContaminationIndex::contains(std::string_view normalized) const {
  const auto tokens = split_whitespace(normalized);
  return find(window_hash(hash_tokens(tokens)), join_tokens(tokens)) != nullptr;
}

std::vector<std::string> ContaminationIndex::labels_for(std::string_view normalized) const {
  const auto tokens = split_whitespace(normalized);
  const Entry* e = find(window_hash(hash_tokens(tokens)), join_tokens(tokens));
  return e ? e->labels : std::vector<std::string>{};
}

std::vector<ContaminationIndex::Match> ContaminationIndex::scan(std::string_view text) const {
  std::vector<Match> out;
  if (entries_.empty()) return out;
  const auto tokens = split_whitespace(text);
  const auto hashes = hash_tokens(tokens);
  const std::span<const std::string_view> all(tokens);
  std::size_t max_len = 0;
  for (std::size_t len = kMinExactTokens; len <= kWindow; ++len) {
    if (lengths_[len]) max_len = len;
  }
  std::unordered_set<const Entry*> seen;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::uint64_t running = kWindowSeed;
    for (std::size_t len = 1; len <= max_len && start + len <= tokens.size(); ++len) {
      running = hash_combine(running, hashes[start + len - 1]);
      if (len < kMinExactTokens || !lengths_[len]) continue;
      const std::uint64_t h = finish_window(running, len);
      for (auto [it, end] = by_hash_.equal_range(h); it != end; ++it) {
        const Entry& e = entries_[it->second];
        if (e.tokens == len && equals_joined(e.text, all.subspan(start, len))) {
          if (seen.insert(&e).second) out.push_back({e.text, e.labels});
          break;
        }
      }
    }
  }
  return out;
}

ContaminationIndex build_contamination_index(std::span<const TestString> test_strings) {
  ContaminationIndex index;
  for (const auto& t : test_strings) index.add(t.text, t.benchmark);
  return index;
}

ContaminationReport is_contaminated(std::string_view text, const ContaminationIndex& index) {
  ContaminationReport report;
  std::set<std::string> benchmarks;
  for (auto& m : index.scan(text)) {
    report.matched_entries.push_back(std::move(m.entry));
    benchmarks.insert(m.labels.begin(), m.labels.end());
  }
  report.hit = !report.matched_entries.empty();
  report.benchmarks.assign(benchmarks.begin(), benchmarks.end());
  return report;
}

ContaminationReport is_contaminated(const RepoSample& sample, const ContaminationIndex& index) {
  return is_contaminated(sample.text, index);
}

} // namespace repocorpus
