#include "repocorpus/language.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

namespace repocorpus {

// Defined in the generated extension_map_data.cpp.
extern const char* const kBuiltinExtensionMapJson;

namespace {

constexpr std::array<std::string_view, LanguageId::kCount> kLanguageNames = {
    "Ada", "Agda", "Alloy", "ANTLR", "AppleScript", "Assembly", "Augeas", "AWK",
    "Batchfile", "Bluespec", "C", "C#", "Clojure", "CMake", "CoffeeScript", "Common Lisp",
    "C++", "CSS", "CUDA", "Dart", "Dockerfile", "Elixir", "Elm", "Emacs Lisp",
    "Erlang", "F#", "Fortran", "GLSL", "Go", "Groovy", "Haskell", "HTML",
    "Idris", "Isabelle", "Java", "Java Server Pages", "JavaScript", "JSON", "Julia",
    "Jupyter Notebook", "Kotlin", "Lean", "Literate Agda", "Literate CoffeeScript",
    "Literate Haskell", "Lua", "Makefile", "Maple", "Mathematica", "MATLAB", "OCaml",
    "Pascal", "Perl", "PHP", "PowerShell", "Prolog", "Protocol Buffer", "Python", "R",
    "Racket", "RMarkdown", "Ruby", "Rust", "SAS", "Scala", "Scheme", "Shell",
    "Smalltalk", "Solidity", "Sparql", "SQL", "Stan", "Standard ML", "Stata",
    "SystemVerilog", "TCL", "Tcsh", "Tex", "Thrift", "TypeScript", "Verilog", "VHDL",
    "Visual Basic", "XSLT", "Yacc", "YAML", "Zig",
};

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

LanguageId require_language(const std::string& name, std::string_view context) {
  auto lang = LanguageId::from_name(name);
  if (!lang) {
    throw ExtensionMapError("extension map: unknown language '" + name + "' for " +
                            std::string(context));
  }
  return *lang;
}

} // namespace

std::optional<LanguageId> LanguageId::from_name(std::string_view name) {
  for (std::size_t i = 0; i < kLanguageNames.size(); ++i) {
    if (kLanguageNames[i] == name) return LanguageId(static_cast<std::uint8_t>(i));
  }
  return std::nullopt;
}

LanguageId LanguageId::named(std::string_view name) {
  if (auto lang = from_name(name)) return *lang;
  throw std::invalid_argument("unknown language: " + std::string(name));
}

std::span<const std::string_view> LanguageId::all_names() { return kLanguageNames; }

std::string_view LanguageId::name() const { return kLanguageNames[index_]; }

const ExtensionMap& ExtensionMap::builtin() {
  static const ExtensionMap map = from_json(nlohmann::json::parse(kBuiltinExtensionMapJson));
  return map;
}

ExtensionMap ExtensionMap::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ExtensionMapError("extension map: top level must be an object");
  ExtensionMap map;
  try {
    if (auto it = doc.find("extensions"); it != doc.end()) {
      for (const auto& [ext, name] : it->items()) {
        if (ext.size() < 2 || ext.front() != '.') {
          throw ExtensionMapError("extension map: extension keys start with '.': '" + ext + "'");
        }
        map.add_extension(ext, require_language(name.get<std::string>(), ext));
      }
    }
    if (auto it = doc.find("basenames"); it != doc.end()) {
      for (const auto& [base, name] : it->items()) {
        map.add_basename(base, require_language(name.get<std::string>(), base));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ExtensionMapError(std::string("extension map: ") + e.what());
  }
  return map;
}

ExtensionMap ExtensionMap::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ExtensionMapError("cannot open extension map " + file.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ExtensionMapError(file.string() + ": " + e.what());
  }
}

void ExtensionMap::add_extension(std::string ext, LanguageId lang) {
  extensions_.insert_or_assign(ascii_lower(ext), lang);
}

void ExtensionMap::add_basename(std::string basename, LanguageId lang) {
  basenames_.insert_or_assign(std::move(basename), lang);
}

std::optional<LanguageId> ExtensionMap::by_extension(std::string_view ext) const {
  if (auto it = extensions_.find(ascii_lower(ext)); it != extensions_.end()) return it->second;
  return std::nullopt;
}

std::optional<LanguageId> ExtensionMap::by_basename(std::string_view basename) const {
  if (auto it = basenames_.find(std::string(basename)); it != basenames_.end()) return it->second;
  return std::nullopt;
}

nlohmann::json ExtensionMap::to_json() const {
  // std::map for a stable key order.
  std::map<std::string, std::string> ext;
  std::map<std::string, std::string> base;
  for (const auto& [k, v] : extensions_) ext.emplace(k, v.name());
  for (const auto& [k, v] : basenames_) base.emplace(k, v.name());
  return {{"extensions", ext}, {"basenames", base}};
}

std::optional<LanguageId> detect_language(std::string_view path, const ExtensionMap& map) {
  const auto slash = path.find_last_of('/');
  const std::string_view basename = slash == std::string_view::npos ? path : path.substr(slash + 1);
  if (basename.empty()) return std::nullopt;
  if (auto lang = map.by_basename(basename)) return lang;
  const auto dot = basename.find_last_of('.');
  // Dotfiles such as ".bashrc" carry no extension.
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  return map.by_extension(basename.substr(dot));
}

} // namespace repocorpus
