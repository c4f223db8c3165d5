#include "repocorpus/dependency.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "repocorpus/text.hpp"

namespace repocorpus {
namespace {

std::string_view basename_of(std::string_view path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::string join_path(std::string_view dir, std::string_view rel) {
  if (dir.empty()) return std::string(rel);
  std::string out(dir);
  out += '/';
  out += rel;
  return out;
}

std::string dotted_to_path(std::string_view dotted) {
  std::string out(dotted);
  std::replace(out.begin(), out.end(), '.', '/');
  return out;
}

void sort_shortest_first(std::vector<std::string_view>& v) {
  std::sort(v.begin(), v.end(), [](std::string_view a, std::string_view b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
}

bool has_extension(std::string_view path, std::string_view ext) {
  return ext.empty() || path.ends_with(ext);
}

// Iterates lines of `text`, stripping a trailing '\r'.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line);
    pos = nl + 1;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s + ",") {
    if (c == ',') {
      auto toks = split_whitespace(cur);
      // "a.b as c" -> "a.b"
      if (!toks.empty()) out.emplace_back(toks.front());
      cur.clear();
    } else if (c != '(' && c != ')' && c != '\\') {
      cur.push_back(c);
    }
  }
  return out;
}

enum class Family { none, python, c, csharp, java, js, go };

Family family_of(std::optional<LanguageId> lang) {
  if (!lang) return Family::none;
  const auto n = lang->name();
  if (n == "Python") return Family::python;
  if (n == "C" || n == "C++" || n == "CUDA") return Family::c;
  if (n == "C#") return Family::csharp;
  if (n == "Java") return Family::java;
  if (n == "JavaScript" || n == "TypeScript") return Family::js;
  if (n == "Go") return Family::go;
  return Family::none;
}

class Collector {
public:
  Collector(const SourceFile& file, const PathIndex& repo) : self_(file.path), repo_(repo) {}

  void add(std::string_view path) {
    if (path == self_ || !repo_.contains(path)) return;
    if (seen_.insert(std::string(path)).second) out_.emplace_back(path);
  }
  // Adds the first candidate that exists; returns whether one did.
  bool add_first_existing(std::initializer_list<std::string> candidates) {
    for (const auto& c : candidates) {
      auto norm = normalize_path(c);
      if (norm && repo_.contains(*norm)) {
        add(*norm);
        return true;
      }
    }
    return false;
  }
  bool add_best(const std::vector<std::string_view>& ranked) {
    for (const auto p : ranked) {
      if (p != self_) {
        add(p);
        return true;
      }
    }
    return false;
  }
  void add_all(const std::vector<std::string_view>& paths) {
    for (const auto p : paths) add(p);
  }

  std::vector<std::string> take() { return std::move(out_); }

private:
  std::string_view self_;
  const PathIndex& repo_;
  std::unordered_set<std::string> seen_;
  std::vector<std::string> out_;
};

void resolve_python_module(Collector& out, const PathIndex& repo, std::string_view file_dir,
                           std::string_view module) {
  std::size_t dots = 0;
  while (dots < module.size() && module[dots] == '.') ++dots;
  const std::string rel = dotted_to_path(module.substr(dots));
  if (dots > 0) {
    std::string base(file_dir);
    for (std::size_t up = 1; up < dots; ++up) base = std::string(parent_dir(base));
    if (rel.empty()) return;
    out.add_first_existing({join_path(base, rel + ".py"), join_path(base, rel + "/__init__.py")});
    return;
  }
  if (rel.empty()) return;
  if (out.add_first_existing({join_path(file_dir, rel + ".py"), rel + ".py", rel + "/__init__.py"})) return;
  if (!out.add_best(repo.match_suffix(rel + ".py"))) out.add_best(repo.match_suffix(rel + "/__init__.py"));
}

void extract_python(const SourceFile& file, const PathIndex& repo, Collector& out) {
  static const std::regex kImport(R"re(^\s*import\s+([\w.,\s]+))re");
  static const std::regex kFrom(R"re(^\s*from\s+(\.*[\w.]*)\s+import\s+(.+))re");
  const std::string_view dir = parent_dir(file.path);
  for_each_line(file.content, [&](std::string_view line) {
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_search(line.begin(), line.end(), m, kFrom)) {
      const std::string module = m[1].str();
      // "from pkg import mod" may name a submodule; try that first.
      for (const auto& name : split_list(m[2].str())) {
        if (name == "*") continue;
        const std::string sub = module.back() == '.' ? module + name : module + "." + name;
        resolve_python_module(out, repo, dir, sub);
      }
      resolve_python_module(out, repo, dir, module);
    } else if (std::regex_search(line.begin(), line.end(), m, kImport)) {
      for (const auto& name : split_list(m[1].str())) resolve_python_module(out, repo, dir, name);
    }
  });
}

void extract_c(const SourceFile& file, const PathIndex& repo, Collector& out) {
  static const std::regex kInclude(R"re(^\s*#\s*include\s*[<"]([^>"]+)[>"])re");
  const std::string_view dir = parent_dir(file.path);
  for_each_line(file.content, [&](std::string_view line) {
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(line.begin(), line.end(), m, kInclude)) return;
    const std::string target = m[1].str();
    if (out.add_first_existing({join_path(dir, target), target})) return;
    if (out.add_best(repo.match_suffix(target))) return;
    out.add_best(repo.match_basename(basename_of(target)));
  });
}

void extract_csharp(const SourceFile& file, const PathIndex& repo, Collector& out) {
  static const std::regex kUsing(R"re(^\s*(?:global\s+)?using\s+(?:static\s+)?(?:\w+\s*=\s*)?([\w.]+)\s*;)re");
  for_each_line(file.content, [&](std::string_view line) {
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(line.begin(), line.end(), m, kUsing)) return;
    std::string ns = dotted_to_path(m[1].str());
    // Namespaces rarely mirror the full folder path; drop leading components
    // until something matches.
    while (!ns.empty()) {
      if (out.add_best(repo.match_suffix(ns + ".cs"))) return;
      auto files = repo.files_in_dir_suffix(ns, ".cs");
      if (!files.empty()) {
        out.add_all(files);
        return;
      }
      const auto slash = ns.find('/');
      if (slash == std::string::npos) return;
      ns.erase(0, slash + 1);
    }
  });
}

void extract_java(const SourceFile& file, const PathIndex& repo, Collector& out) {
  static const std::regex kImport(R"re(^\s*import\s+(static\s+)?([\w.]+?)(\.\*)?\s*;)re");
  for_each_line(file.content, [&](std::string_view line) {
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(line.begin(), line.end(), m, kImport)) return;
    const std::string path = dotted_to_path(m[2].str());
    if (m[3].matched) {
      out.add_all(repo.files_in_dir_suffix(path, ".java"));
      return;
    }
    if (out.add_best(repo.match_suffix(path + ".java"))) return;
    // static member import: a.b.C.member
    if (m[1].matched) {
      const std::string_view owner = parent_dir(path);
      if (!owner.empty()) out.add_best(repo.match_suffix(std::string(owner) + ".java"));
    }
  });
}

void extract_js(const SourceFile& file, const PathIndex& repo, Collector& out) {
  static const std::regex kFrom(R"re((?:^|[\s;}])(?:import|export)\b[^'"]*?['"]([^'"]+)['"])re");
  static const std::regex kCall(R"re(\b(?:require|import)\s*\(\s*['"]([^'"]+)['"]\s*\))re");
  static constexpr std::string_view kExts[] = {".ts", ".tsx", ".d.ts", ".js", ".jsx", ".mjs", ".cjs"};
  const std::string_view dir = parent_dir(file.path);
  auto resolve = [&](const std::string& spec) {
    if (!spec.starts_with("./") && !spec.starts_with("../") && !spec.starts_with("/")) return;
    const std::string base = spec.starts_with("/") ? spec.substr(1) : join_path(dir, spec);
    const auto norm = normalize_path(base);
    if (!norm) return;
    if (repo.contains(*norm)) {
      out.add(*norm);
      return;
    }
    for (const auto ext : kExts) {
      if (repo.contains(*norm + std::string(ext))) {
        out.add(*norm + std::string(ext));
        return;
      }
    }
    for (const auto ext : kExts) {
      const std::string index = *norm + "/index" + std::string(ext);
      if (repo.contains(index)) {
        out.add(index);
        return;
      }
    }
  };
  for_each_line(file.content, [&](std::string_view line) {
    for (const auto* re : {&kFrom, &kCall}) {
      for (std::regex_iterator<std::string_view::const_iterator> it(line.begin(), line.end(), *re), end;
           it != end; ++it) {
        resolve((*it)[1].str());
      }
    }
  });
}

void extract_go(const SourceFile& file, const PathIndex& repo, Collector& out) {
  static const std::regex kSingle(R"re(^\s*import\s+(?:[\w.]+\s+)?"([^"]+)")re");
  static const std::regex kBlockStart(R"re(^\s*import\s*\()re");
  static const std::regex kBlockItem(R"re(^\s*(?:[\w.]+\s+)?"([^"]+)")re");
  bool in_block = false;
  for_each_line(file.content, [&](std::string_view line) {
    std::match_results<std::string_view::const_iterator> m;
    if (in_block) {
      if (line.find(')') != std::string_view::npos && line.find('"') == std::string_view::npos) {
        in_block = false;
      } else if (std::regex_search(line.begin(), line.end(), m, kBlockItem)) {
        out.add_all(repo.match_package_dir(m[1].str(), ".go"));
      }
      return;
    }
    if (std::regex_search(line.begin(), line.end(), m, kBlockStart)) {
      in_block = true;
    } else if (std::regex_search(line.begin(), line.end(), m, kSingle)) {
      out.add_all(repo.match_package_dir(m[1].str(), ".go"));
    }
  });
}

} // namespace

PathIndex::PathIndex(std::span<const std::string> paths) : paths_(paths.begin(), paths.end()) {
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    index_.emplace(paths_[i], i);
    by_basename_[std::string(basename_of(paths_[i]))].push_back(i);
    by_dir_[std::string(parent_dir(paths_[i]))].push_back(i);
  }
}

bool PathIndex::contains(std::string_view path) const { return index_.contains(path); }

std::vector<std::string_view> PathIndex::match_suffix(std::string_view suffix) const {
  std::vector<std::string_view> out;
  if (suffix.empty()) return out;
  auto it = by_basename_.find(std::string(basename_of(suffix)));
  if (it == by_basename_.end()) return out;
  for (const auto i : it->second) {
    const std::string_view p = paths_[i];
    if (p == suffix || (p.size() > suffix.size() && p.ends_with(suffix) && p[p.size() - suffix.size() - 1] == '/')) {
      out.push_back(p);
    }
  }
  sort_shortest_first(out);
  return out;
}

std::vector<std::string_view> PathIndex::match_basename(std::string_view basename) const {
  std::vector<std::string_view> out;
  if (auto it = by_basename_.find(std::string(basename)); it != by_basename_.end()) {
    for (const auto i : it->second) out.push_back(paths_[i]);
  }
  sort_shortest_first(out);
  return out;
}

std::vector<std::string_view> PathIndex::match_package_dir(std::string_view import_path,
                                                           std::string_view ext) const {
  const std::string* best_dir = nullptr;
  for (const auto& [dir, files] : by_dir_) {
    if (dir.empty()) continue;
    const bool match = import_path == dir ||
                       (import_path.size() > dir.size() && import_path.ends_with(dir) &&
                        import_path[import_path.size() - dir.size() - 1] == '/');
    if (match && (!best_dir || dir.size() > best_dir->size() || (dir.size() == best_dir->size() && dir < *best_dir))) {
      best_dir = &dir;
    }
  }
  std::vector<std::string_view> out;
  if (!best_dir) return out;
  for (const auto i : by_dir_.at(*best_dir)) {
    if (has_extension(paths_[i], ext)) out.push_back(paths_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string_view> PathIndex::files_in_dir_suffix(std::string_view dir_suffix,
                                                             std::string_view ext) const {
  std::vector<std::string_view> out;
  if (dir_suffix.empty()) return out;
  for (const auto& [dir, files] : by_dir_) {
    const bool match = dir == dir_suffix || (dir.size() > dir_suffix.size() && dir.ends_with(dir_suffix) &&
                                             dir[dir.size() - dir_suffix.size() - 1] == '/');
    if (!match) continue;
    for (const auto i : files) {
      if (has_extension(paths_[i], ext)) out.push_back(paths_[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> normalize_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    auto slash = path.find('/', pos);
    if (slash == std::string_view::npos) slash = path.size();
    const std::string_view part = path.substr(pos, slash - pos);
    pos = slash + 1;
    if (part.empty() || part == ".") continue;
    if (part == "..") {
      if (parts.empty()) return std::nullopt;
      parts.pop_back();
    } else {
      parts.push_back(part);
    }
  }
  std::string out;
  for (const auto part : parts) {
    if (!out.empty()) out += '/';
    out += part;
  }
  return out;
}

std::string_view parent_dir(std::string_view path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string_view::npos ? std::string_view{} : path.substr(0, slash);
}

bool supports_dependency_extraction(std::optional<LanguageId> lang) { return family_of(lang) != Family::none; }

std::vector<std::string> extract_dependencies(const SourceFile& file, const PathIndex& repo) {
  Collector out(file, repo);
  switch (family_of(file.language)) {
    case Family::python: extract_python(file, repo, out); break;
    case Family::c: extract_c(file, repo, out); break;
    case Family::csharp: extract_csharp(file, repo, out); break;
    case Family::java: extract_java(file, repo, out); break;
    case Family::js: extract_js(file, repo, out); break;
    case Family::go: extract_go(file, repo, out); break;
    case Family::none: break;
  }
  return out.take();
}

DependencyGraph DependencyGraph::build(std::vector<std::string> nodes, std::span<const DependencyPair> edges) {
  DependencyGraph g;
  g.nodes_ = std::move(nodes);
  const std::size_t n = g.nodes_.size();
  if (n <= kSmallGraph) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (g.nodes_[i] == g.nodes_[j]) throw std::invalid_argument("duplicate file path in graph: " + g.nodes_[i]);
      }
    }
  } else {
    g.by_name_.resize(n);
    std::iota(g.by_name_.begin(), g.by_name_.end(), 0);
    std::sort(g.by_name_.begin(), g.by_name_.end(),
              [&](std::size_t x, std::size_t y) { return g.nodes_[x] < g.nodes_[y]; });
    for (std::size_t k = 1; k < n; ++k) {
      if (g.nodes_[g.by_name_[k]] == g.nodes_[g.by_name_[k - 1]]) {
        throw std::invalid_argument("duplicate file path in graph: " + g.nodes_[g.by_name_[k]]);
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> resolved;  // (dependency, dependent)
  resolved.reserve(edges.size());
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    const auto a = g.index_of(e.dependent);
    const auto b = g.index_of(e.dependency);
    if (!a || !b) {
      throw std::invalid_argument("dependency edge references unknown file: " +
                                  (!a ? e.dependent : e.dependency));
    }
    resolved.emplace_back(*b, *a);
    ++g.offsets_[*b + 1];
  }
  // Stable bucket fill, then drop repeated pairs within each bucket in place
  // (the first occurrence keeps its position).
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> scratch(2 * n);
  const auto fill = scratch.begin();
  const auto seen_for = scratch.begin() + static_cast<std::ptrdiff_t>(n);
  std::copy(g.offsets_.begin(), g.offsets_.end() - 1, fill);
  std::fill(seen_for, scratch.end(), kNone);
  g.targets_.resize(resolved.size());
  for (const auto& [b, a] : resolved) g.targets_[fill[b]++] = a;

  g.in_degree_.assign(n, 0);
  std::size_t write = 0;
  std::size_t begin = 0;
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t end = g.offsets_[b + 1];
    g.offsets_[b] = write;
    for (std::size_t k = begin; k < end; ++k) {
      const auto a = g.targets_[k];
      if (seen_for[a] == b) continue;
      seen_for[a] = b;
      g.targets_[write++] = a;
      ++g.in_degree_[a];
    }
    begin = end;
  }
  g.targets_.resize(write);
  g.offsets_[n] = g.targets_.size();
  g.edge_count_ = g.targets_.size();
  return g;
}

std::optional<std::size_t> DependencyGraph::index_of(std::string_view path) const {
  if (nodes_.size() <= kSmallGraph) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i] == path) return i;
    }
    return std::nullopt;
  }
  auto it = std::lower_bound(by_name_.begin(), by_name_.end(), path,
                             [&](std::size_t i, std::string_view p) { return nodes_[i] < p; });
  if (it != by_name_.end() && nodes_[*it] == path) return *it;
  return std::nullopt;
}

std::vector<std::string> DependencyGraph::dependents_of(std::string_view path) const {
  std::vector<std::string> out;
  if (auto i = index_of(path)) {
    for (const auto j : dependents(*i)) out.push_back(nodes_[j]);
  }
  return out;
}

std::size_t DependencyGraph::in_degree_of(std::string_view path) const {
  auto i = index_of(path);
  return i ? in_degree_[*i] : 0;
}

std::string DependencyGraph::dump_edges() const {
  std::string out;
  for (std::size_t b = 0; b < nodes_.size(); ++b) {
    for (const auto a : dependents(b)) {
      out += nodes_[b];
      out += " -> ";
      out += nodes_[a];
      out += '\n';
    }
  }
  return out;
}

DependencyGraph build_graph(std::span<const SourceFile> files, std::span<const DependencyPair> edges) {
  std::vector<std::string> nodes;
  nodes.reserve(files.size());
  for (const auto& f : files) nodes.push_back(f.path);
  return DependencyGraph::build(std::move(nodes), edges);
}

std::vector<std::vector<std::size_t>> connected_components(const DependencyGraph& graph) {
  const std::size_t n = graph.size();
  // parent[0, n) for union-find, then slot[n, 2n) maps a root to its
  // component number.
  std::vector<std::size_t> buf(2 * n);
  const auto parent = buf.begin();
  const auto slot = buf.begin() + static_cast<std::ptrdiff_t>(n);
  std::iota(parent, slot, 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t b = 0; b < n; ++b) {
    for (const auto a : graph.dependents(b)) {
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  // The root is the smallest index of its component, so roots appear in
  // increasing order and number the components by their smallest index.
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    parent[i] = find(i);
    if (parent[i] == i) slot[i] = count++;
  }
  std::vector<std::vector<std::size_t>> components(count);
  if (count == n) {
    for (std::size_t i = 0; i < n; ++i) components[i].push_back(i);
    return components;
  }
  std::vector<std::size_t> sizes(count, 0);
  for (std::size_t i = 0; i < n; ++i) ++sizes[slot[parent[i]]];
  for (std::size_t c = 0; c < count; ++c) components[c].reserve(sizes[c]);
  for (std::size_t i = 0; i < n; ++i) components[slot[parent[i]]].push_back(i);
  return components;
}

std::vector<std::vector<std::size_t>> topological_sort_indices(const DependencyGraph& graph) {
  constexpr std::size_t kLinearScanLimit = 32;
  std::vector<long> degree(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) degree[i] = static_cast<long>(graph.in_degree(i));

  // Components list their nodes in input order, so "ties broken by input
  // order" is the smaller node index. Each component vector is rewritten in
  // place into its emission order.
  auto result = connected_components(graph);
  for (auto& component : result) {
    const std::size_t k = component.size();
    if (k <= kLinearScanLimit) {
      // Small components: a plain scan for the minimum is faster than
      // maintaining an ordered set.
      for (std::size_t pos = 0; pos < k; ++pos) {
        std::size_t best = pos;
        for (std::size_t q = pos + 1; q < k; ++q) {
          const auto i = component[q];
          const auto b = component[best];
          if (degree[i] < degree[b] || (degree[i] == degree[b] && i < b)) best = q;
        }
        std::swap(component[pos], component[best]);
        for (const auto node : graph.dependents(component[pos])) --degree[node];
      }
      continue;
    }
    // (current in-degree, index): begin() is the argmin.
    std::set<std::pair<long, std::size_t>> frontier;
    for (const auto i : component) frontier.emplace(degree[i], i);
    std::vector<bool> selected(graph.size(), false);
    std::size_t pos = 0;
    while (!frontier.empty()) {
      const auto file = frontier.begin()->second;
      frontier.erase(frontier.begin());
      selected[file] = true;
      component[pos++] = file;
      for (const auto node : graph.dependents(file)) {
        if (!selected[node]) frontier.erase({degree[node], node});
        --degree[node];
        if (!selected[node]) frontier.emplace(degree[node], node);
      }
    }
  }
  return result;
}

std::vector<std::vector<std::string>> topological_sort(const DependencyGraph& graph) {
  std::vector<std::vector<std::string>> out;
  for (const auto& seq : topological_sort_indices(graph)) {
    auto& names = out.emplace_back();
    names.reserve(seq.size());
    for (const auto i : seq) names.push_back(graph.nodes()[i]);
  }
  return out;
}

} // namespace repocorpus
