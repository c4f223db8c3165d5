#pragma once

// Reference implementations used as test oracles. They are written for
// clarity, straight from the definitions, and share no code with the library.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "graphs.hpp"

namespace testsupport {

// The sort written out naively: an in-degree dictionary, an adjacency list, the
// disconnected subgraphs, then repeated argmin selection over each subgraph
// with the decrement applied to every neighbour of the chosen file. Ties go to
// the node listed first.
inline std::vector<std::vector<int>> naive_sort_oracle(int n, const std::vector<Edge>& edges) {
  std::map<int, std::vector<int>> graphs;
  std::map<int, int> in_degree;
  for (int f = 0; f < n; ++f) in_degree[f] = 0;
  std::set<Edge> added;
  for (const auto& [b, a] : edges) {  // a depends on b: edge b -> a
    if (!added.insert({b, a}).second) continue;
    graphs[b].push_back(a);
    in_degree[a] += 1;
  }

  std::vector<std::vector<int>> undirected(n);
  for (const auto& [b, a] : added) {
    undirected[a].push_back(b);
    undirected[b].push_back(a);
  }
  std::vector<int> seen(n, 0);
  std::vector<std::vector<int>> subgraphs;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> members;
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (int w : undirected[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    subgraphs.push_back(members);
  }

  std::vector<std::vector<int>> sequences;
  for (const auto& subgraph : subgraphs) {
    std::vector<int> results;
    while (results.size() < subgraph.size()) {
      int file = -1;
      for (int candidate : subgraph) {
        if (std::find(results.begin(), results.end(), candidate) != results.end()) continue;
        if (file == -1 || in_degree[candidate] < in_degree[file]) file = candidate;
      }
      results.push_back(file);
      for (int node : graphs[file]) in_degree[node] -= 1;
    }
    sequences.push_back(results);
  }
  return sequences;
}

// Shingle set of a text made of single-space-separated lowercase words.
inline std::set<std::string> word_shingles(const std::string& text, std::size_t width) {
  std::vector<std::string> words;
  std::istringstream in(text);
  for (std::string w; in >> w;) words.push_back(w);
  std::set<std::string> out;
  if (words.size() < width) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) s += (i ? " " : "") + words[i];
    out.insert(s);
    return out;
  }
  for (std::size_t i = 0; i + width <= words.size(); ++i) {
    std::string s = words[i];
    for (std::size_t k = 1; k < width; ++k) s += " " + words[i + k];
    out.insert(s);
  }
  return out;
}

template <typename T>
double exact_jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

} // namespace testsupport
