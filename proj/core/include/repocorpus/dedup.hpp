#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repocorpus/repo_sample.hpp"

namespace repocorpus {

struct MinHashParams {
  std::size_t num_perm = 128;
  std::size_t shingle_width = 5;
  std::uint64_t seed = 1;
};

struct LshParams {
  std::size_t bands = 16;
  std::size_t rows = 8;
};

struct MinHashSignature {
  std::string repo_id;
  std::vector<std::uint64_t> values;
  std::size_t num_perm = 0;
  std::size_t char_count = 0;  // of the source sample; drives representative choice
};

/// Lowercased tokens: runs of letters, digits, '_' and non-ASCII bytes; every
/// other non-space character is a token of its own.
std::vector<std::string> shingle_tokens(std::string_view text);

/// Distinct word shingles of `width` tokens, joined by a single space, sorted.
/// Fewer than `width` tokens yield one truncated shingle (possibly empty).
std::vector<std::string> shingles(std::string_view text, std::size_t width);

// Universal hashing (a*x + b) mod (2^61 - 1) with a, b drawn from
// std::mt19937_64 seeded by `seed`; the permutation family is identical on
// every platform.
class MinHasher {
public:
  explicit MinHasher(const MinHashParams& params = {});

  /// Throws std::invalid_argument for num_perm < 16 or shingle_width == 0.
  std::vector<std::uint64_t> sign_text(std::string_view text) const;
  MinHashSignature sign(const RepoSample& sample) const;

  const MinHashParams& params() const { return params_; }

private:
  MinHashParams params_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

MinHashSignature minhash_signature(const RepoSample& sample, std::size_t num_perm, std::size_t shingle_width,
                                   std::uint64_t seed = 1);

/// Fraction of equal slots. Throws std::invalid_argument on mismatched sizes.
double estimated_similarity(const MinHashSignature& a, const MinHashSignature& b);

/// Probability that a pair of Jaccard similarity s shares at least one band.
double lsh_candidate_probability(double s, const LshParams& lsh);

/// Banding minimising the equally weighted false-positive and false-negative
/// areas under the S-curve, with bands * rows <= num_perm.
LshParams optimal_banding(double threshold, std::size_t num_perm);

struct SimilarPair {
  std::string a;
  std::string b;
  double similarity = 0.0;
};

struct DuplicateCluster {
  std::vector<std::string> member_repo_ids;  // sorted
  std::string representative;
  std::vector<SimilarPair> pairs;            // verified pairs inside the cluster
};

/// LSH candidate generation, verification by estimated similarity >=
/// threshold, then connected components of the verified pairs. Singletons are
/// omitted. The representative is the largest sample (ties: smaller repo_id).
/// Throws std::invalid_argument for inconsistent num_perm, duplicate repo ids,
/// a threshold outside (0, 1) or bands * rows > num_perm.
std::vector<DuplicateCluster> find_near_duplicates(std::span<const MinHashSignature> signatures, double threshold,
                                                   const LshParams& lsh = {});

/// Keeps every sample except the non-representative members of each cluster,
/// preserving input order. Samples are kept or dropped whole.
std::vector<RepoSample> dedup_repos(std::vector<RepoSample> samples, std::span<const DuplicateCluster> clusters);

} // namespace repocorpus
