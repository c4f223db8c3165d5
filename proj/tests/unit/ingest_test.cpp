#include <gtest/gtest.h>

#include <fstream>

#include "repocorpus/ingest.hpp"
#include "test_util.hpp"

using namespace repocorpus;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

} // namespace

TEST(Ingest, DirectoryOfRepositories) {
  const auto dir = testsupport::scratch_dir("ingest-dir");
  write(dir / "zeta/main.py", "print(1)\n");
  write(dir / "alpha/src/b.py", "x = 1\n");
  write(dir / "alpha/src/a.py", "y = 2\n");
  write(dir / "alpha/.hidden/c.py", "z = 3\n");
  write(dir / "alpha/notes.weird", "?\n");
  write(dir / "alpha/bad.py", std::string("\xFF\xFE", 2));
  write(dir / ".git/config", "x\n");
  const std::vector<fs::path> inputs = {dir};
  const auto r = ingest_inputs(inputs, ExtensionMap::builtin());
  ASSERT_EQ(r.files.size(), 3u);
  EXPECT_EQ(r.files[0].repo_id, "alpha");
  EXPECT_EQ(r.files[0].path, "src/a.py");
  EXPECT_EQ(r.files[1].path, "src/b.py");
  EXPECT_EQ(r.files[2].repo_id, "zeta");
  EXPECT_EQ(r.counters.input, 5u);
  EXPECT_EQ(r.counters.output, 3u);
  EXPECT_EQ(r.counters.drops.at("unsupported_language"), 1u);
  EXPECT_EQ(r.counters.drops.at("decode_error"), 1u);
  EXPECT_TRUE(r.counters.balanced());
}

TEST(Ingest, JsonlInputAndDuplicates) {
  const auto dir = testsupport::scratch_dir("ingest-jsonl");
  write(dir / "files.jsonl",
        R"({"repo_id":"r2","path":"a.go","content":"package a\n"})" "\n"
        R"({"repo_id":"r1","path":"./x/../b.py","content":"b = 1\n"})" "\n"
        R"({"repo_id":"r1","path":"b.py","content":"again\n"})" "\n"
        R"({"repo_id":"r1","path":"../escape.py","content":"no\n"})" "\n");
  const std::vector<fs::path> inputs = {dir / "files.jsonl"};
  const auto r = ingest_inputs(inputs, ExtensionMap::builtin());
  ASSERT_EQ(r.files.size(), 2u);
  EXPECT_EQ(r.files[0].repo_id, "r1");
  EXPECT_EQ(r.files[0].path, "b.py");
  EXPECT_EQ(r.counters.drops.at("duplicate_path"), 1u);
  EXPECT_EQ(r.counters.drops.at("bad_path"), 1u);
  EXPECT_TRUE(r.counters.balanced());
}

TEST(Ingest, MissingInputIsAnError) {
  const std::vector<fs::path> inputs = {"/no/such/input"};
  EXPECT_THROW(ingest_inputs(inputs, ExtensionMap::builtin()), IngestError);
}

TEST(Ingest, EmptyDirectory) {
  const std::vector<fs::path> inputs = {testsupport::scratch_dir("ingest-empty")};
  const auto r = ingest_inputs(inputs, ExtensionMap::builtin());
  EXPECT_TRUE(r.files.empty());
  EXPECT_EQ(r.counters.input, 0u);
}

TEST(TestSets, BenchmarkDefaultsToStem) {
  const auto dir = testsupport::scratch_dir("testsets");
  write(dir / "mbpp.jsonl", R"({"text":"a b c"})" "\n" R"({"text":"d e f","benchmark":"GSM8K"})" "\n\n");
  const std::vector<fs::path> files = {dir / "mbpp.jsonl"};
  const auto t = load_test_sets(files);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].benchmark, "mbpp");
  EXPECT_EQ(t[1].benchmark, "GSM8K");
  write(dir / "bad.jsonl", "not json\n");
  const std::vector<fs::path> bad = {dir / "bad.jsonl"};
  EXPECT_THROW(load_test_sets(bad), IngestError);
}
