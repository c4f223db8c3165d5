#include "repocorpus/dedup.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "repocorpus/text.hpp"

namespace repocorpus {
namespace {

__extension__ typedef unsigned __int128 uint128;

constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

std::uint64_t mod_mersenne61(uint128 v) {
  v = (v & kMersenne61) + (v >> 61);
  v = (v & kMersenne61) + (v >> 61);
  auto r = static_cast<std::uint64_t>(v);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

std::vector<std::uint64_t> shingle_hashes(std::string_view text, std::size_t width) {
  const auto sh = shingles(text, width);
  std::vector<std::uint64_t> out;
  out.reserve(sh.size());
  for (const auto& s : sh) out.push_back(stable_hash(s));
  return out;
}

// Trapezoid rule is plenty for choosing a banding.
template <typename Fn>
double integrate(Fn f, double lo, double hi) {
  constexpr int kSteps = 200;
  const double h = (hi - lo) / kSteps;
  double area = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < kSteps; ++i) area += f(lo + i * h);
  return area * h;
}

} // namespace

std::vector<std::string> shingle_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_ascii_space(text[i])) {
      ++i;
    } else if (is_word_byte(c)) {
      std::string tok;
      while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) tok.push_back(lower(text[i++]));
      tokens.push_back(std::move(tok));
    } else {
      tokens.emplace_back(1, text[i++]);
    }
  }
  return tokens;
}

std::vector<std::string> shingles(std::string_view text, std::size_t width) {
  if (width == 0) throw std::invalid_argument("shingle width must be positive");
  const auto tokens = shingle_tokens(text);
  std::vector<std::string> out;
  auto join = [&](std::size_t from, std::size_t count) {
    std::string s;
    for (std::size_t k = 0; k < count; ++k) {
      if (k) s += ' ';
      s += tokens[from + k];
    }
    return s;
  };
  if (tokens.size() < width) {
    out.push_back(join(0, tokens.size()));
    return out;
  }
  out.reserve(tokens.size() - width + 1);
  for (std::size_t i = 0; i + width <= tokens.size(); ++i) out.push_back(join(i, width));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinHasher::MinHasher(const MinHashParams& params) : params_(params) {
  if (params_.num_perm < 16) throw std::invalid_argument("num_perm must be at least 16");
  if (params_.shingle_width == 0) throw std::invalid_argument("shingle_width must be positive");
  std::mt19937_64 gen(params_.seed);
  a_.resize(params_.num_perm);
  b_.resize(params_.num_perm);
  for (std::size_t i = 0; i < params_.num_perm; ++i) {
    a_[i] = 1 + gen() % (kMersenne61 - 1);
    b_[i] = gen() % kMersenne61;
  }
}

std::vector<std::uint64_t> MinHasher::sign_text(std::string_view text) const {
  std::vector<std::uint64_t> values(params_.num_perm, std::numeric_limits<std::uint64_t>::max());
  for (const auto h : shingle_hashes(text, params_.shingle_width)) {
    const std::uint64_t x = mod_mersenne61(h);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto v = mod_mersenne61(static_cast<uint128>(a_[i]) * x + b_[i]);
      values[i] = std::min(values[i], v);
    }
  }
  return values;
}

MinHashSignature MinHasher::sign(const RepoSample& sample) const {
  return {sample.repo_id, sign_text(sample.text), params_.num_perm, sample.char_count};
}

MinHashSignature minhash_signature(const RepoSample& sample, std::size_t num_perm, std::size_t shingle_width,
                                   std::uint64_t seed) {
  return MinHasher({num_perm, shingle_width, seed}).sign(sample);
}

double estimated_similarity(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.values.size() != b.values.size() || a.values.empty()) {
    throw std::invalid_argument("signatures differ in num_perm");
  }
  std::size_t equal = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) equal += a.values[i] == b.values[i];
  return static_cast<double>(equal) / static_cast<double>(a.values.size());
}

double lsh_candidate_probability(double s, const LshParams& lsh) {
  return 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(lsh.rows)), static_cast<double>(lsh.bands));
}

LshParams optimal_banding(double threshold, std::size_t num_perm) {
  LshParams best{1, num_perm};
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t b = 1; b <= num_perm; ++b) {
    for (std::size_t r = 1; b * r <= num_perm; ++r) {
      const LshParams p{b, r};
      const double fp = integrate([&](double s) { return lsh_candidate_probability(s, p); }, 0.0, threshold);
      const double fn = integrate([&](double s) { return 1.0 - lsh_candidate_probability(s, p); }, threshold, 1.0);
      const double err = 0.5 * fp + 0.5 * fn;
      if (err < best_err) {
        best_err = err;
        best = p;
      }
    }
  }
  return best;
}

std::vector<DuplicateCluster> find_near_duplicates(std::span<const MinHashSignature> signatures, double threshold,
                                                   const LshParams& lsh) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");
  if (signatures.empty()) return {};
  const std::size_t num_perm = signatures.front().num_perm;
  if (lsh.bands == 0 || lsh.rows == 0 || lsh.bands * lsh.rows > num_perm) {
    throw std::invalid_argument("bands * rows must be positive and at most num_perm");
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& s : signatures) {
    if (s.num_perm != num_perm || s.values.size() != num_perm) {
      throw std::invalid_argument("inconsistent num_perm across signatures");
    }
    if (!ids.insert(s.repo_id).second) throw std::invalid_argument("duplicate repo_id: " + s.repo_id);
  }

  // Build phase: one bucket table per band.
  std::set<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t band = 0; band < lsh.bands; ++band) {
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < signatures.size(); ++i) {
      std::uint64_t key = band;
      for (std::size_t r = 0; r < lsh.rows; ++r) key = hash_combine(key, signatures[i].values[band * lsh.rows + r]);
      buckets[key].push_back(i);
    }
    for (const auto& [key, members] : buckets) {
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) candidates.emplace(members[x], members[y]);
      }
    }
  }

  std::vector<std::size_t> parent(signatures.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::tuple<std::size_t, std::size_t, double>> verified;
  for (const auto& [i, j] : candidates) {
    const double sim = estimated_similarity(signatures[i], signatures[j]);
    if (sim < threshold) continue;
    verified.emplace_back(i, j, sim);
    const auto ri = find(i);
    const auto rj = find(j);
    if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < signatures.size(); ++i) groups[find(i)].push_back(i);

  std::vector<DuplicateCluster> clusters;
  std::unordered_map<std::size_t, std::size_t> cluster_of_root;
  for (const auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    DuplicateCluster c;
    const MinHashSignature* rep = nullptr;
    for (const auto m : members) {
      const auto& s = signatures[m];
      c.member_repo_ids.push_back(s.repo_id);
      if (!rep || s.char_count > rep->char_count || (s.char_count == rep->char_count && s.repo_id < rep->repo_id)) {
        rep = &s;
      }
    }
    std::sort(c.member_repo_ids.begin(), c.member_repo_ids.end());
    c.representative = rep->repo_id;
    cluster_of_root.emplace(root, clusters.size());
    clusters.push_back(std::move(c));
  }
  for (const auto& [i, j, sim] : verified) {
    auto& c = clusters[cluster_of_root.at(find(i))];
    const auto& a = signatures[i].repo_id;
    const auto& b = signatures[j].repo_id;
    c.pairs.push_back({std::min(a, b), std::max(a, b), sim});
  }
  for (auto& c : clusters) {
    std::sort(c.pairs.begin(), c.pairs.end(),
              [](const SimilarPair& x, const SimilarPair& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  }
  std::sort(clusters.begin(), clusters.end(), [](const DuplicateCluster& x, const DuplicateCluster& y) {
    return x.member_repo_ids.front() < y.member_repo_ids.front();
  });
  return clusters;
}

std::vector<RepoSample> dedup_repos(std::vector<RepoSample> samples, std::span<const DuplicateCluster> clusters) {
  std::unordered_set<std::string> dropped;
  for (const auto& c : clusters) {
    for (const auto& id : c.member_repo_ids) {
      if (id != c.representative) dropped.insert(id);
    }
  }
  std::erase_if(samples, [&](const RepoSample& s) { return dropped.contains(s.repo_id); });
  return samples;
}

} // namespace repocorpus
