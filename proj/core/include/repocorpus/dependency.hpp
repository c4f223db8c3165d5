#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "repocorpus/language.hpp"
#include "repocorpus/source_file.hpp"

namespace repocorpus {

// Lets string-keyed maps be probed with a string_view without allocating.
struct TransparentStringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, TransparentStringHash, std::equal_to<>>;

// Lookup structure over one repository's file paths, used to resolve import
// strings to files.
class PathIndex {
public:
  explicit PathIndex(std::span<const std::string> paths);

  bool contains(std::string_view path) const;
  const std::vector<std::string>& paths() const { return paths_; }

  /// Paths equal to `suffix` or ending in "/" + suffix, shortest first.
  std::vector<std::string_view> match_suffix(std::string_view suffix) const;
  /// Paths whose last component is `basename`, shortest first.
  std::vector<std::string_view> match_basename(std::string_view basename) const;
  /// Files directly inside the longest directory `d` for which `import_path`
  /// equals d or ends with "/" + d. Only files with extension `ext`.
  std::vector<std::string_view> match_package_dir(std::string_view import_path, std::string_view ext) const;
  /// Files directly inside directories equal to or ending with `dir_suffix`.
  std::vector<std::string_view> files_in_dir_suffix(std::string_view dir_suffix, std::string_view ext) const;

private:
  std::vector<std::string> paths_;
  StringMap<std::size_t> index_;
  StringMap<std::vector<std::size_t>> by_basename_;
  StringMap<std::vector<std::size_t>> by_dir_;
};

/// Lexically normalises a '/'-separated path ("a/./b/../c" -> "a/c").
/// Returns nullopt when ".." climbs above the root.
std::optional<std::string> normalize_path(std::string_view path);

std::string_view parent_dir(std::string_view path);

/// Languages with import patterns: Python, C, C++, CUDA, C#, Java,
/// JavaScript, TypeScript and Go.
bool supports_dependency_extraction(std::optional<LanguageId> lang);

/// Repo files `file` references through its language's import syntax, in
/// first-reference order, without duplicates or `file` itself. Unresolvable
/// references are dropped; unsupported languages yield no edges.
std::vector<std::string> extract_dependencies(const SourceFile& file, const PathIndex& repo);

// `dependent` depends on `dependency`: edge dependency -> dependent.
struct DependencyPair {
  std::string dependent;
  std::string dependency;
};

class DependencyGraph {
public:
  /// Throws std::invalid_argument on duplicate node paths or on an edge
  /// endpoint outside `nodes`. Repeated pairs count once.
  static DependencyGraph build(std::vector<std::string> nodes, std::span<const DependencyPair> edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::optional<std::size_t> index_of(std::string_view path) const;

  /// Files that depend on node `i`.
  std::span<const std::size_t> dependents(std::size_t i) const {
    return std::span<const std::size_t>(targets_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::size_t in_degree(std::size_t i) const { return in_degree_[i]; }

  std::vector<std::string> dependents_of(std::string_view path) const;
  std::size_t in_degree_of(std::string_view path) const;

  /// One "dependency -> dependent" line per edge, in node order.
  std::string dump_edges() const;

private:
  std::vector<std::string> nodes_;
  // Graphs up to this size resolve paths by linear scan and skip by_name_.
  static constexpr std::size_t kSmallGraph = 16;
  std::vector<std::size_t> by_name_;  // node indices sorted by path
  // Adjacency in compressed form: dependents of i are
  // targets_[offsets_[i] .. offsets_[i + 1]), in first-insertion order.
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> targets_;
  std::vector<std::size_t> in_degree_;
  std::size_t edge_count_ = 0;
};

DependencyGraph build_graph(std::span<const SourceFile> files, std::span<const DependencyPair> edges);

/// Connected components of the undirected graph, each listing its nodes in
/// input order; components ordered by their smallest node index.
std::vector<std::vector<std::size_t>> connected_components(const DependencyGraph& graph);

/// Cycle-tolerant sort: within each component, repeatedly select the
/// unselected node with minimal current in-degree (ties: input order) and
/// decrement the in-degree of its dependents. One sequence per component.
std::vector<std::vector<std::size_t>> topological_sort_indices(const DependencyGraph& graph);
std::vector<std::vector<std::string>> topological_sort(const DependencyGraph& graph);

} // namespace repocorpus
