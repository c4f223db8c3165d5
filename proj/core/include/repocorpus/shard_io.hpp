#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "repocorpus/repo_sample.hpp"
#include "repocorpus/source_file.hpp"

namespace repocorpus {

class ShardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& file);

/// Writes `bytes` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& file, std::string_view bytes);
std::string read_file(const std::filesystem::path& file);

struct ShardInfo {
  std::string file;  // name relative to the shard directory
  std::size_t records = 0;
  std::string sha256;
};

nlohmann::json shard_list_to_json(const std::vector<ShardInfo>& shards);
std::vector<ShardInfo> shard_list_from_json(const nlohmann::json& doc);

// Rolls records into numbered files "<prefix>-00000<ext>" once a shard holds
// `records_per_shard` records, checksumming each shard as it is closed.
class ShardWriter {
public:
  ShardWriter(std::filesystem::path dir, std::size_t records_per_shard, std::string extension = ".jsonl",
              std::string prefix = "shard");

  void write_json(const nlohmann::json& record);
  /// One record's raw bytes; the caller supplies any terminator.
  void write_raw(std::string_view bytes);
  std::vector<ShardInfo> finish();

private:
  void flush_shard();

  std::filesystem::path dir_;
  std::size_t per_shard_;
  std::string extension_;
  std::string prefix_;
  std::string buffer_;
  std::size_t buffered_ = 0;
  std::vector<ShardInfo> shards_;
};

/// Verifies every checksum before returning any data; throws ShardError on a
/// missing or altered shard.
void verify_shards(const std::filesystem::path& dir, const std::vector<ShardInfo>& shards);
std::vector<nlohmann::json> read_jsonl_shards(const std::filesystem::path& dir, const std::vector<ShardInfo>& shards);

nlohmann::json source_file_to_json(const SourceFile& f);
SourceFile source_file_from_json(const nlohmann::json& j);
nlohmann::json repo_sample_to_json(const RepoSample& s);
RepoSample repo_sample_from_json(const nlohmann::json& j);

} // namespace repocorpus
