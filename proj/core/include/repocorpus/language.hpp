#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json_fwd.hpp>

namespace repocorpus {

// One of the 87 languages retained in the cleaned corpus. The set is closed:
// a LanguageId can only be obtained for a name in that list.
class LanguageId {
public:
  static constexpr std::size_t kCount = 87;

  static std::optional<LanguageId> from_name(std::string_view name);
  /// Like from_name but throws std::invalid_argument on an unknown name.
  static LanguageId named(std::string_view name);
  static std::span<const std::string_view> all_names();

  std::string_view name() const;
  std::uint8_t index() const { return index_; }

  friend bool operator==(LanguageId, LanguageId) = default;
  friend auto operator<=>(LanguageId, LanguageId) = default;

private:
  explicit LanguageId(std::uint8_t index) : index_(index) {}
  std::uint8_t index_;
};

class ExtensionMapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Path -> language table. Extensions are matched case-insensitively and
// include the leading dot (".py"); basenames match exactly ("Makefile").
class ExtensionMap {
public:
  ExtensionMap() = default;

  /// The table shipped in core/data/extension_map.json, compiled in.
  static const ExtensionMap& builtin();
  static ExtensionMap from_json(const nlohmann::json& doc);
  static ExtensionMap load(const std::filesystem::path& file);

  void add_extension(std::string ext, LanguageId lang);
  void add_basename(std::string basename, LanguageId lang);

  std::optional<LanguageId> by_extension(std::string_view ext) const;
  std::optional<LanguageId> by_basename(std::string_view basename) const;

  std::size_t size() const { return extensions_.size() + basenames_.size(); }
  nlohmann::json to_json() const;

private:
  std::unordered_map<std::string, LanguageId> extensions_;
  std::unordered_map<std::string, LanguageId> basenames_;
};

/// Basename match first, then the lowercased final extension. Pure.
std::optional<LanguageId> detect_language(std::string_view path, const ExtensionMap& map);

} // namespace repocorpus
