#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "repocorpus/corpus_stats.hpp"

using namespace repocorpus;

namespace {

std::uint64_t sum_prop(const CorpusStats& s) {
  std::uint64_t t = 0;
  for (const auto& r : s.rows) t += r.proportion_centi;
  return t;
}

} // namespace

TEST(Apportion, LargestRemainder) {
  const std::vector<std::uint64_t> w = {1, 1, 1};
  EXPECT_EQ(apportion(w, 100), (std::vector<std::uint64_t>{34, 33, 33}));
  const std::vector<std::uint64_t> z = {0, 0};
  EXPECT_EQ(apportion(z, 100), (std::vector<std::uint64_t>{0, 0}));
  const std::vector<std::uint64_t> e;
  EXPECT_TRUE(apportion(e, 100).empty());
}

TEST(CorpusStats, ThreeToOne) {
  StatsAccumulator acc;
  acc.add_file(LanguageId::named("Python"), 3000);
  acc.add_file(LanguageId::named("Java"), 1000);
  const auto s = acc.finish();
  ASSERT_EQ(s.rows.size(), 2u);
  std::map<std::string, std::uint64_t> prop;
  for (const auto& r : s.rows) prop[r.language] = r.proportion_centi;
  EXPECT_EQ(prop["Python"], 7500u);
  EXPECT_EQ(prop["Java"], 2500u);
  EXPECT_EQ(s.total.language, "Total");
  EXPECT_EQ(s.total.files, 2u);
  EXPECT_EQ(s.total.bytes, 4000u);
}

TEST(CorpusStats, SingleLanguage) {
  StatsAccumulator acc;
  for (int i = 0; i < 5; ++i) acc.add_file(LanguageId::named("Python"), 10);
  const auto s = acc.finish();
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(s.rows[0].proportion_centi, 10000u);
  const auto table = s.render_table();
  const auto header = table.substr(0, table.find('\n'));
  for (auto col : {"Language", "Size (GB)", "Files (k)", "Prop. (%)"}) EXPECT_NE(header.find(col), std::string::npos);
  EXPECT_NE(table.find("100.00"), std::string::npos);
  EXPECT_NE(table.find("| Total"), std::string::npos);
}

TEST(CorpusStats, EmptyCorpus) {
  const auto s = StatsAccumulator().finish();
  EXPECT_TRUE(s.rows.empty());
  EXPECT_EQ(s.total.files, 0u);
  EXPECT_EQ(s.total.proportion_centi, 0u);
  EXPECT_NO_THROW(s.render_table());
}

TEST(CorpusStats, TotalsEqualColumnSumsOnRandomCorpora) {
  std::mt19937_64 rng(8);
  const auto names = LanguageId::all_names();
  for (int round = 0; round < 200; ++round) {
    StatsAccumulator acc;
    const int files = 1 + static_cast<int>(rng() % 500);
    for (int i = 0; i < files; ++i) {
      acc.add_file(LanguageId::named(names[rng() % names.size()]), rng() % 50'000'000);
    }
    const auto s = acc.finish();
    EXPECT_EQ(sum_prop(s), 10000u);
    std::uint64_t bytes = 0, nfiles = 0, size = 0;
    for (const auto& r : s.rows) {
      bytes += r.bytes;
      nfiles += r.files;
      size += r.size_centi_gb;
    }
    EXPECT_EQ(bytes, s.total.bytes);
    EXPECT_EQ(nfiles, s.total.files);
    EXPECT_EQ(size, s.total.size_centi_gb);
  }
}

TEST(CorpusStats, SizeInCentiGigabytes) {
  StatsAccumulator acc;
  acc.add_file(LanguageId::named("Go"), 1'234'567'890);
  const auto s = acc.finish();
  EXPECT_EQ(s.total.size_centi_gb, 123u);  // 1.23 GB
  const auto j = s.to_json();
  EXPECT_EQ(j.at("total").at("size_gb"), "1.23");
  EXPECT_EQ(j.at("total").at("files_k"), "0.001");
  EXPECT_EQ(j.at("total").at("proportion"), "100.00");
}

TEST(StageCounters, BalanceAndJson) {
  StageCounters c;
  c.stage = "filter";
  c.unit = "files";
  c.input = 10;
  c.output = 7;
  c.drops = {{"max_line_len", 2}, {"xml_header", 1}};
  c.info = {{"bytes", 99}};
  EXPECT_EQ(c.dropped(), 3u);
  EXPECT_TRUE(c.balanced());
  const auto back = StageCounters::from_json(c.to_json());
  EXPECT_EQ(back.drops, c.drops);
  EXPECT_EQ(back.info, c.info);
  EXPECT_EQ(back.input, 10u);
  c.output = 8;
  EXPECT_FALSE(c.balanced());
}

TEST(CorpusStats, SampleAccountsEachFile) {
  RepoSample s;
  s.ordered_paths = {"a.py", "b.java", "c.py"};
  s.languages = {LanguageId::named("Python"), LanguageId::named("Java"), LanguageId::named("Python")};
  s.file_bytes = {10, 20, 30};
  StatsAccumulator acc;
  acc.add(s);
  const auto st = acc.finish();
  EXPECT_EQ(st.total.files, 3u);
  EXPECT_EQ(st.total.bytes, 60u);
}
