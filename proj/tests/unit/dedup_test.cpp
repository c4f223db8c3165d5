#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "repocorpus/dedup.hpp"
#include "test_util.hpp"

using namespace repocorpus;

namespace {

std::vector<std::string> distinct_words(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    auto w = testsupport::random_word(rng, 4, 10);
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

std::string join(const std::vector<std::string>& words, std::size_t begin, std::size_t end) {
  std::string s;
  for (std::size_t i = begin; i < end; ++i) s += (i > begin ? " " : "") + words[i];
  return s;
}

RepoSample sample(std::string id, std::string text) {
  RepoSample s;
  s.repo_id = std::move(id);
  s.char_count = text.size();
  s.text = std::move(text);
  return s;
}

double oracle(const std::string& a, const std::string& b) {
  return testsupport::exact_jaccard(testsupport::word_shingles(a, 5), testsupport::word_shingles(b, 5));
}

} // namespace

TEST(Shingles, TokenizationAndWidth) {
  EXPECT_EQ(shingle_tokens("Foo(bar_1, Baz);"),
            (std::vector<std::string>{"foo", "(", "bar_1", ",", "baz", ")", ";"}));
  EXPECT_EQ(shingles("a b c", 2), (std::vector<std::string>{"a b", "b c"}));
  EXPECT_EQ(shingles("a b", 5), (std::vector<std::string>{"a b"}));
  EXPECT_EQ(shingles("b a b a", 2), (std::vector<std::string>{"a b", "b a"}));
}

TEST(Shingles, AgreeWithOracleOnPlainWords) {
  const auto w = distinct_words(60, 5);
  const auto text = join(w, 0, 60);
  const auto lib = shingles(text, 5);
  const auto ref = testsupport::word_shingles(text, 5);
  EXPECT_EQ(std::set<std::string>(lib.begin(), lib.end()), ref);
}

TEST(MinHash, IdenticalTextsIdenticalSignatures) {
  const auto a = minhash_signature(sample("a", "the quick brown fox jumps over the lazy dog"), 128, 5);
  const auto b = minhash_signature(sample("b", "the quick brown fox jumps over the lazy dog"), 128, 5);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values.size(), 128u);
  EXPECT_DOUBLE_EQ(estimated_similarity(a, b), 1.0);
}

TEST(MinHash, SameShingleSetDifferentOrder) {
  const auto a = minhash_signature(sample("a", "alpha beta gamma delta"), 64, 1);
  const auto b = minhash_signature(sample("b", "delta gamma beta alpha alpha"), 64, 1);
  EXPECT_EQ(a.values, b.values);
}

TEST(MinHash, EstimateTracksExactJaccard) {
  // Windows of 304 words offset by 100: 200 shared of 400 shingles.
  const auto w = distinct_words(404, 17);
  const auto ta = join(w, 0, 304);
  const auto tb = join(w, 100, 404);
  ASSERT_DOUBLE_EQ(oracle(ta, tb), 0.5);
  const auto a = minhash_signature(sample("a", ta), 128, 5);
  const auto b = minhash_signature(sample("b", tb), 128, 5);
  EXPECT_NEAR(estimated_similarity(a, b), 0.5, 0.15);
}

TEST(MinHash, SeedChangesPermutations) {
  const auto s = sample("a", "one two three four five six seven");
  EXPECT_NE(minhash_signature(s, 64, 2, 1).values, minhash_signature(s, 64, 2, 2).values);
  EXPECT_THROW(MinHasher(MinHashParams{8, 5, 1}), std::invalid_argument);
  EXPECT_THROW(MinHasher(MinHashParams{128, 0, 1}), std::invalid_argument);
}

TEST(Lsh, CandidateProbabilityCurve) {
  const LshParams lsh{16, 8};
  EXPECT_NEAR(lsh_candidate_probability(0.0, lsh), 0.0, 1e-12);
  EXPECT_NEAR(lsh_candidate_probability(1.0, lsh), 1.0, 1e-12);
  EXPECT_GT(lsh_candidate_probability(0.9, lsh), 0.999);
  EXPECT_LT(lsh_candidate_probability(0.3, lsh), 0.002);
  const auto b = optimal_banding(0.85, 128);
  EXPECT_LE(b.bands * b.rows, 128u);
  EXPECT_GT(b.rows, 1u);
}

TEST(NearDuplicates, NinetyPercentOverlapClusters) {
  // 190 + 10 shingles each, 180 shared: exact Jaccard 0.9.
  const auto w = distinct_words(204, 23);
  const auto ta = join(w, 0, 194);
  const auto tb = join(w, 10, 204);
  ASSERT_NEAR(oracle(ta, tb), 0.9, 1e-12);
  std::vector<MinHashSignature> sigs = {minhash_signature(sample("a", ta), 128, 5),
                                        minhash_signature(sample("b", tb), 128, 5)};
  const auto clusters = find_near_duplicates(sigs, 0.85);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].member_repo_ids, (std::vector<std::string>{"a", "b"}));
}

TEST(NearDuplicates, DisjointTextsNoClusters) {
  const auto w = distinct_words(400, 29);
  std::vector<MinHashSignature> sigs = {minhash_signature(sample("a", join(w, 0, 200)), 128, 5),
                                        minhash_signature(sample("b", join(w, 200, 400)), 128, 5)};
  EXPECT_TRUE(find_near_duplicates(sigs, 0.85).empty());
}

TEST(NearDuplicates, TransitiveCluster) {
  const auto w = distinct_words(210, 31);
  std::vector<MinHashSignature> sigs;
  for (int k = 0; k < 3; ++k) {
    const auto text = join(w, k * 2, 200 + k * 2);
    sigs.push_back(minhash_signature(sample(std::string(1, static_cast<char>('c' - k)), text), 128, 5));
  }
  const auto clusters = find_near_duplicates(sigs, 0.85);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].member_repo_ids, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_FALSE(clusters[0].pairs.empty());
}

TEST(NearDuplicates, RejectsBadInput) {
  std::vector<MinHashSignature> mixed = {minhash_signature(sample("a", "x y z"), 128, 5),
                                         minhash_signature(sample("b", "x y z"), 64, 5)};
  EXPECT_THROW(find_near_duplicates(mixed, 0.85), std::invalid_argument);
  std::vector<MinHashSignature> dup = {minhash_signature(sample("a", "x y z"), 128, 5),
                                       minhash_signature(sample("a", "x y z"), 128, 5)};
  EXPECT_THROW(find_near_duplicates(dup, 0.85), std::invalid_argument);
  EXPECT_THROW(find_near_duplicates({}, 1.5), std::invalid_argument);
  const std::vector<MinHashSignature> one = {minhash_signature(sample("a", "x y z"), 128, 5)};
  EXPECT_THROW(find_near_duplicates(one, 0.85, LshParams{32, 8}), std::invalid_argument);
}

TEST(DedupRepos, LargerSampleIsRepresentative) {
  // Same shingles, different sizes: b has 10k code points, a has 8k.
  auto big = sample("b", "shared text of the fork");
  auto small = sample("a", "shared text of the fork");
  big.char_count = 10000;
  small.char_count = 8000;
  std::vector<MinHashSignature> sigs = {minhash_signature(small, 128, 5), minhash_signature(big, 128, 5)};
  const auto clusters = find_near_duplicates(sigs, 0.85);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].representative, "b");

  std::vector<RepoSample> samples = {small, big};
  const auto kept = dedup_repos(samples, clusters);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].repo_id, "b");
}

TEST(DedupRepos, TieGoesToSmallerRepoId) {
  std::vector<MinHashSignature> sigs = {minhash_signature(sample("y", "same text here"), 128, 5),
                                        minhash_signature(sample("x", "same text here"), 128, 5)};
  const auto clusters = find_near_duplicates(sigs, 0.85);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].representative, "x");
}

TEST(DedupRepos, IdentityWithoutClustersAndIdempotent) {
  std::vector<RepoSample> samples = {sample("q", "one"), sample("p", "two"), sample("r", "one")};
  const auto same = dedup_repos(samples, {});
  ASSERT_EQ(same.size(), 3u);
  EXPECT_EQ(same[0].repo_id, "q");

  std::vector<MinHashSignature> sigs;
  for (const auto& s : samples) sigs.push_back(minhash_signature(s, 128, 5));
  const auto clusters = find_near_duplicates(sigs, 0.85);
  const auto once = dedup_repos(samples, clusters);
  ASSERT_EQ(once.size(), 2u);
  EXPECT_EQ(once[0].repo_id, "q");
  EXPECT_EQ(once[1].repo_id, "p");

  std::vector<MinHashSignature> again;
  for (const auto& s : once) again.push_back(minhash_signature(s, 128, 5));
  EXPECT_TRUE(find_near_duplicates(again, 0.85).empty());
}
