#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "repocorpus/decontam.hpp"
#include "test_util.hpp"

using namespace repocorpus;

namespace {

std::string tokens(int n, const std::string& stem = "t") {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? " " : "") + stem + std::to_string(i);
  return s;
}

ContaminationIndex index_of(std::vector<TestString> strings) { return build_contamination_index(strings); }

} // namespace

TEST(ContaminationIndex, TwelveTokensGiveThreeWindows) {
  const auto idx = index_of({{tokens(12), "HumanEval"}});
  EXPECT_EQ(idx.ten_gram_count(), 3u);
  EXPECT_EQ(idx.exact_count(), 0u);
  EXPECT_TRUE(idx.contains("t0 t1 t2 t3 t4 t5 t6 t7 t8 t9"));
  EXPECT_TRUE(idx.contains("t2 t3 t4 t5 t6 t7 t8 t9 t10 t11"));
  EXPECT_FALSE(idx.contains("t3 t4 t5 t6 t7 t8 t9 t10 t11"));
}

TEST(ContaminationIndex, ShortStringsExactOrIgnored) {
  const auto idx = index_of({{tokens(5), "MBPP"}, {tokens(2), "MBPP"}, {tokens(3, "u"), "GSM8K"}});
  EXPECT_EQ(idx.exact_count(), 2u);
  EXPECT_EQ(idx.ignored_count(), 1u);
  EXPECT_EQ(idx.ten_gram_count(), 0u);
  EXPECT_TRUE(idx.contains("t0 t1 t2 t3 t4"));
  EXPECT_FALSE(idx.contains("t0 t1"));
  EXPECT_EQ(idx.labels_for("u0 u1 u2"), (std::vector<std::string>{"GSM8K"}));
}

TEST(ContaminationIndex, SharedEntryKeepsAllLabels) {
  const auto idx = index_of({{"a b c d", "MBPP"}, {"a  b\tc d", "HumanEval"}});
  EXPECT_EQ(idx.exact_count(), 1u);
  EXPECT_EQ(idx.labels_for("a b c d"), (std::vector<std::string>{"HumanEval", "MBPP"}));
}

TEST(IsContaminated, PlantedTenGram) {
  const auto idx = index_of({{tokens(15, "he"), "HumanEval"}});
  const std::string text = "def f():\n    x = 1\n    " + std::string("he3 he4 he5 he6 he7 he8 he9 he10 he11 he12") +
                           "\n    return x\n";
  const auto r = is_contaminated(text, idx);
  EXPECT_TRUE(r.hit);
  EXPECT_EQ(r.benchmarks, (std::vector<std::string>{"HumanEval"}));
  ASSERT_EQ(r.matched_entries.size(), 1u);
}

TEST(IsContaminated, NineTokenOverlapIsNotAHit) {
  const auto idx = index_of({{tokens(15, "he"), "HumanEval"}});
  EXPECT_FALSE(is_contaminated("x he3 he4 he5 he6 he7 he8 he9 he10 he11 y", idx).hit);
  EXPECT_FALSE(is_contaminated("", idx).hit);
}

TEST(IsContaminated, ExactShortStringAsContiguousRun) {
  const auto idx = index_of({{"return a + b", "MBPP"}});
  EXPECT_TRUE(is_contaminated("def add(a, b):\n    return a + b\n", idx).hit);
  EXPECT_FALSE(is_contaminated("return a - b", idx).hit);
  EXPECT_FALSE(is_contaminated("return a +b", idx).hit);
  // Token boundaries matter: "xreturn" is not "return".
  EXPECT_FALSE(is_contaminated("xreturn a + b", idx).hit);
  // Case is preserved.
  EXPECT_FALSE(is_contaminated("Return a + b", idx).hit);
}

TEST(IsContaminated, WhitespaceInsertionDoesNotEvade) {
  const auto idx = index_of({{tokens(10, "w"), "MATH"}});
  std::string spaced;
  for (int i = 0; i < 10; ++i) spaced += "w" + std::to_string(i) + (i % 2 ? "\n\n  " : " \t ");
  EXPECT_TRUE(is_contaminated(spaced, idx).hit);
  EXPECT_EQ(normalize_whitespace("  a \n\t b  "), "a b");
}

TEST(IsContaminated, MonotoneInTheIndex) {
  std::mt19937_64 rng(41);
  std::vector<TestString> strings;
  std::vector<std::string> samples;
  for (int i = 0; i < 40; ++i) {
    std::string s;
    const int n = 2 + static_cast<int>(rng() % 14);
    for (int k = 0; k < n; ++k) s += (k ? " " : "") + testsupport::random_word(rng, 1, 2);
    strings.push_back({s, "B" + std::to_string(i % 3)});
  }
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (int k = 0; k < 60; ++k) s += (k ? " " : "") + testsupport::random_word(rng, 1, 2);
    samples.push_back(s);
  }
  std::vector<bool> flagged(samples.size(), false);
  for (std::size_t n = 0; n <= strings.size(); n += 5) {
    const auto idx = build_contamination_index(std::span(strings).first(n));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const bool hit = is_contaminated(samples[i], idx).hit;
      if (flagged[i]) EXPECT_TRUE(hit);
      flagged[i] = hit;
    }
  }
}

TEST(IsContaminated, RepoSampleOverload) {
  const auto idx = index_of({{"a b c", "X"}});
  RepoSample s;
  s.repo_id = "r";
  s.text = "# f.py\na b c\n\n";
  EXPECT_TRUE(is_contaminated(s, idx).hit);
}
