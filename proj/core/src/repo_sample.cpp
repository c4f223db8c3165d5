#include "repocorpus/repo_sample.hpp"

#include "repocorpus/comment_style.hpp"
#include "repocorpus/text.hpp"

namespace repocorpus {

RepoSample concatenate_with_paths(const std::string& repo_id, std::span<const SourceFile> ordered) {
  RepoSample sample;
  sample.repo_id = repo_id;
  std::size_t reserve = 0;
  for (const auto& f : ordered) reserve += f.content.size() + f.path.size() + 16;
  sample.text.reserve(reserve);

  for (const auto& f : ordered) {
    const CommentStyle style = comment_style_for(f.language);
    sample.text += style.open;
    sample.text += ' ';
    sample.text += f.path;
    if (!style.close.empty()) {
      sample.text += ' ';
      sample.text += style.close;
    }
    sample.text += '\n';
    sample.text += f.content;
    if (!f.content.empty() && f.content.back() != '\n') sample.text += '\n';
    sample.text += '\n';

    sample.ordered_paths.push_back(f.path);
    sample.languages.push_back(f.language);
    sample.file_bytes.push_back(f.byte_size());
  }
  sample.char_count = count_code_points(sample.text);
  return sample;
}

OrderedRepo order_repository(const std::string& repo_id, std::span<const SourceFile> files) {
  std::vector<std::string> paths;
  paths.reserve(files.size());
  for (const auto& f : files) paths.push_back(f.path);
  const PathIndex index(paths);

  OrderStats stats;
  stats.files = files.size();
  std::vector<DependencyPair> edges;
  for (const auto& f : files) {
    if (!supports_dependency_extraction(f.language)) {
      ++stats.unsupported_files;
      continue;
    }
    for (auto& dep : extract_dependencies(f, index)) edges.push_back({f.path, std::move(dep)});
  }

  DependencyGraph graph = DependencyGraph::build(std::move(paths), edges);
  const auto sequences = topological_sort_indices(graph);
  stats.edges = graph.edge_count();
  stats.components = sequences.size();

  std::vector<SourceFile> ordered;
  ordered.reserve(files.size());
  for (const auto& seq : sequences) {
    for (const auto i : seq) ordered.push_back(files[i]);
  }
  return {concatenate_with_paths(repo_id, ordered), std::move(graph), stats};
}

} // namespace repocorpus
