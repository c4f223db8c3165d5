#include "repocorpus/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "repocorpus/dependency.hpp"
#include "repocorpus/shard_io.hpp"
#include "repocorpus/text.hpp"

namespace repocorpus {
namespace fs = std::filesystem;
namespace {

struct RawFile {
  std::string repo_id;
  std::string path;
  std::string content;
};

bool hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return !name.empty() && name[0] == '.';
}

void walk_repo(const fs::path& root, const std::string& repo_id, std::vector<RawFile>& out) {
  std::vector<std::string> rel;
  fs::recursive_directory_iterator it(root), end;
  for (; it != end; ++it) {
    if (hidden(it->path())) {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file()) continue;
    rel.push_back(fs::relative(it->path(), root).generic_string());
  }
  std::sort(rel.begin(), rel.end());
  for (auto& r : rel) out.push_back({repo_id, r, read_file(root / r)});
}

void read_directory(const fs::path& dir, std::vector<RawFile>& out) {
  std::vector<fs::path> repos;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && !hidden(entry.path())) repos.push_back(entry.path());
  }
  std::sort(repos.begin(), repos.end());
  for (const auto& repo : repos) walk_repo(repo, repo.filename().string(), out);
}

void read_jsonl(const fs::path& file, std::vector<RawFile>& out) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestError(fmt::format("cannot open {}", file.string()));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("repo_id").get<std::string>(), j.at("path").get<std::string>(),
                     j.at("content").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw IngestError(fmt::format("{}:{}: {}", file.string(), lineno, e.what()));
    }
  }
}

} // namespace

IngestResult ingest_inputs(std::span<const fs::path> inputs, const ExtensionMap& map) {
  std::vector<RawFile> raw;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      read_directory(input, raw);
    } else if (fs::is_regular_file(input)) {
      read_jsonl(input, raw);
    } else {
      throw IngestError(fmt::format("input does not exist: {}", input.string()));
    }
  }
  // Group by repo while keeping each repo's walk order.
  std::stable_sort(raw.begin(), raw.end(), [](const RawFile& a, const RawFile& b) { return a.repo_id < b.repo_id; });

  IngestResult result;
  auto& c = result.counters;
  c.stage = "ingest";
  c.unit = "files";
  c.input = raw.size();
  c.drops = {{"decode_error", 0}, {"unsupported_language", 0}, {"duplicate_path", 0}, {"bad_path", 0}};

  std::set<std::pair<std::string, std::string>> seen;
  for (auto& r : raw) {
    auto norm = normalize_path(r.path);
    if (!norm || norm->empty() || r.repo_id.empty()) {
      ++c.drops["bad_path"];
      continue;
    }
    if (!is_valid_utf8(r.content)) {
      ++c.drops["decode_error"];
      continue;
    }
    auto lang = detect_language(*norm, map);
    if (!lang) {
      ++c.drops["unsupported_language"];
      continue;
    }
    if (!seen.emplace(r.repo_id, *norm).second) {
      ++c.drops["duplicate_path"];
      continue;
    }
    result.files.push_back({std::move(r.repo_id), std::move(*norm), lang, std::move(r.content)});
  }
  c.output = result.files.size();
  return result;
}

std::vector<TestString> load_test_sets(std::span<const fs::path> files) {
  std::vector<TestString> out;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IngestError(fmt::format("cannot open test set {}", file.string()));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        out.push_back({j.at("text").get<std::string>(), j.value("benchmark", file.stem().string())});
      } catch (const nlohmann::json::exception& e) {
        throw IngestError(fmt::format("{}:{}: {}", file.string(), lineno, e.what()));
      }
    }
  }
  return out;
}

} // namespace repocorpus
