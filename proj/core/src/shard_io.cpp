#include "repocorpus/shard_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "repocorpus/text.hpp"

namespace repocorpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw ShardError("sha256 failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ShardError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::string sha256_file(const fs::path& file) { return sha256_hex(read_file(file)); }

void write_file_atomic(const fs::path& file, std::string_view bytes) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ShardError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ShardError("short write to " + tmp.string());
  }
  fs::rename(tmp, file);
}

json shard_list_to_json(const std::vector<ShardInfo>& shards) {
  json arr = json::array();
  for (const auto& s : shards) arr.push_back({{"file", s.file}, {"records", s.records}, {"sha256", s.sha256}});
  return arr;
}

std::vector<ShardInfo> shard_list_from_json(const json& doc) {
  std::vector<ShardInfo> out;
  for (const auto& s : doc) {
    out.push_back({s.at("file").get<std::string>(), s.at("records").get<std::size_t>(),
                   s.at("sha256").get<std::string>()});
  }
  return out;
}

ShardWriter::ShardWriter(fs::path dir, std::size_t records_per_shard, std::string extension, std::string prefix)
    : dir_(std::move(dir)), per_shard_(records_per_shard), extension_(std::move(extension)), prefix_(std::move(prefix)) {
  if (per_shard_ == 0) throw std::invalid_argument("records per shard must be positive");
  fs::create_directories(dir_);
}

void ShardWriter::write_json(const json& record) {
  buffer_ += record.dump();
  buffer_ += '\n';
  if (++buffered_ == per_shard_) flush_shard();
}

void ShardWriter::write_raw(std::string_view bytes) {
  buffer_.append(bytes);
  if (++buffered_ == per_shard_) flush_shard();
}

void ShardWriter::flush_shard() {
  ShardInfo info;
  info.file = fmt::format("{}-{:05d}{}", prefix_, shards_.size(), extension_);
  info.records = buffered_;
  info.sha256 = sha256_hex(buffer_);
  write_file_atomic(dir_ / info.file, buffer_);
  shards_.push_back(std::move(info));
  buffer_.clear();
  buffered_ = 0;
}

std::vector<ShardInfo> ShardWriter::finish() {
  if (buffered_ > 0) flush_shard();
  return std::move(shards_);
}

void verify_shards(const fs::path& dir, const std::vector<ShardInfo>& shards) {
  for (const auto& s : shards) {
    const fs::path p = dir / s.file;
    if (!fs::is_regular_file(p)) throw ShardError("missing shard " + p.string());
    if (sha256_file(p) != s.sha256) throw ShardError("checksum mismatch for " + p.string());
  }
}

std::vector<json> read_jsonl_shards(const fs::path& dir, const std::vector<ShardInfo>& shards) {
  std::vector<json> out;
  for (const auto& s : shards) {
    const std::string bytes = read_file(dir / s.file);
    if (sha256_hex(bytes) != s.sha256) throw ShardError("checksum mismatch for " + (dir / s.file).string());
    std::size_t pos = 0;
    std::size_t records = 0;
    while (pos < bytes.size()) {
      auto nl = bytes.find('\n', pos);
      if (nl == std::string::npos) nl = bytes.size();
      if (nl > pos) {
        out.push_back(json::parse(std::string_view(bytes).substr(pos, nl - pos)));
        ++records;
      }
      pos = nl + 1;
    }
    if (records != s.records) {
      throw ShardError(fmt::format("{}: expected {} records, found {}", s.file, s.records, records));
    }
  }
  return out;
}

namespace {

json language_json(std::optional<LanguageId> lang) { return lang ? json(lang->name()) : json(nullptr); }

std::optional<LanguageId> language_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return LanguageId::named(j.get<std::string>());
}

} // namespace

json source_file_to_json(const SourceFile& f) {
  return {{"repo_id", f.repo_id}, {"path", f.path}, {"language", language_json(f.language)}, {"content", f.content}};
}

SourceFile source_file_from_json(const json& j) {
  SourceFile f;
  f.repo_id = j.at("repo_id").get<std::string>();
  f.path = j.at("path").get<std::string>();
  f.language = language_from(j.at("language"));
  f.content = j.at("content").get<std::string>();
  return f;
}

json repo_sample_to_json(const RepoSample& s) {
  json langs = json::array();
  for (const auto& l : s.languages) langs.push_back(language_json(l));
  return {{"repo_id", s.repo_id}, {"ordered_paths", s.ordered_paths}, {"languages", langs},
          {"file_bytes", s.file_bytes}, {"char_count", s.char_count}, {"text", s.text}};
}

RepoSample repo_sample_from_json(const json& j) {
  RepoSample s;
  s.repo_id = j.at("repo_id").get<std::string>();
  s.ordered_paths = j.at("ordered_paths").get<std::vector<std::string>>();
  for (const auto& l : j.at("languages")) s.languages.push_back(language_from(l));
  s.file_bytes = j.at("file_bytes").get<std::vector<std::uint64_t>>();
  s.char_count = j.at("char_count").get<std::size_t>();
  s.text = j.at("text").get<std::string>();
  if (s.languages.size() != s.ordered_paths.size() || s.file_bytes.size() != s.ordered_paths.size()) {
    throw ShardError("repo sample " + s.repo_id + ": per-file arrays differ in length");
  }
  return s;
}

} // namespace repocorpus
