#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "repocorpus/dependency.hpp"

using namespace repocorpus;

namespace {

SourceFile file(const char* lang, std::string path, std::string content) {
  return {"r", std::move(path), LanguageId::named(lang), std::move(content)};
}

std::vector<std::string> deps(const SourceFile& f, const std::vector<std::string>& repo_paths) {
  PathIndex index(repo_paths);
  return extract_dependencies(f, index);
}

using Strings = std::vector<std::string>;

} // namespace

TEST(NormalizePath, Lexical) {
  EXPECT_EQ(normalize_path("a/./b/../c"), "a/c");
  EXPECT_EQ(normalize_path("./a"), "a");
  EXPECT_EQ(normalize_path("a//b/"), "a/b");
  EXPECT_EQ(normalize_path("../a"), std::nullopt);
  EXPECT_EQ(parent_dir("a/b/c.py"), "a/b");
  EXPECT_EQ(parent_dir("c.py"), "");
}

TEST(PathIndex, SuffixAndBasenameRanking) {
  const Strings paths = {"x/y/util.h", "util.h", "lib/util.h", "src/main.c"};
  PathIndex idx(paths);
  const auto s = idx.match_suffix("util.h");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], "util.h");
  EXPECT_EQ(s[1], "lib/util.h");
  EXPECT_TRUE(idx.match_suffix("til.h").empty());
  EXPECT_EQ(idx.match_basename("main.c").size(), 1u);
}

TEST(ExtractDependencies, Python) {
  const Strings repo = {"pkg/__init__.py", "pkg/a.py", "pkg/b.py", "pkg/sub/c.py", "main.py", "other.py"};
  const auto f = file("Python", "main.py",
                      "import os\n"
                      "import pkg.a as alias, other\n"
                      "from pkg import b\n"
                      "from pkg.sub.c import thing\n"
                      "import pkg.a\n");
  // "from pkg import b" names both the submodule and the package itself.
  EXPECT_EQ(deps(f, repo), (Strings{"pkg/a.py", "other.py", "pkg/b.py", "pkg/__init__.py", "pkg/sub/c.py"}));

  const auto rel = file("Python", "pkg/sub/c.py", "from .. import a\nfrom ..b import x\nfrom . import c\n");
  EXPECT_EQ(deps(rel, repo), (Strings{"pkg/a.py", "pkg/b.py"}));

  const auto pkg = file("Python", "main.py", "import pkg\n");
  EXPECT_EQ(deps(pkg, repo), (Strings{"pkg/__init__.py"}));
}

TEST(ExtractDependencies, CFamily) {
  const Strings repo = {"include/ring.h", "src/ring.c", "src/main.c", "src/local.h"};
  const auto f = file("C", "src/main.c",
                      "#include <stdio.h>\n"
                      "#include \"local.h\"\n"
                      "#  include \"ring.h\"\n"
                      "#include \"missing.h\"\n");
  EXPECT_EQ(deps(f, repo), (Strings{"src/local.h", "include/ring.h"}));
}

TEST(ExtractDependencies, Java) {
  const Strings repo = {"src/com/acme/Util.java", "src/com/acme/Main.java", "src/com/acme/model/User.java"};
  const auto f = file("Java", "src/com/acme/Main.java",
                      "package com.acme;\n"
                      "import java.util.List;\n"
                      "import com.acme.Util;\n"
                      "import static com.acme.model.User.create;\n");
  EXPECT_EQ(deps(f, repo), (Strings{"src/com/acme/Util.java", "src/com/acme/model/User.java"}));
}

TEST(ExtractDependencies, JavaScriptAndTypeScript) {
  const Strings repo = {"src/app.js", "src/util.js", "src/lib/index.js", "src/types.ts", "src/main.ts"};
  const auto js = file("JavaScript", "src/app.js",
                       "const u = require('./util');\n"
                       "import lib from \"./lib\";\n"
                       "import React from 'react';\n");
  EXPECT_EQ(deps(js, repo), (Strings{"src/util.js", "src/lib/index.js"}));
  const auto ts = file("TypeScript", "src/main.ts", "import { T } from './types';\nexport * from './app';\n");
  EXPECT_EQ(deps(ts, repo), (Strings{"src/types.ts", "src/app.js"}));
}

TEST(ExtractDependencies, Go) {
  const Strings repo = {"go.mod", "cmd/main.go", "internal/store/store.go", "internal/store/cache.go",
                        "internal/store/store_test.go"};
  const auto f = file("Go", "cmd/main.go",
                      "package main\n"
                      "import (\n"
                      "  \"fmt\"\n"
                      "  \"example.com/app/internal/store\"\n"
                      ")\n");
  const auto got = deps(f, repo);
  EXPECT_EQ(got.size(), 3u);
  EXPECT_NE(std::find(got.begin(), got.end(), "internal/store/store.go"), got.end());
}

TEST(ExtractDependencies, UnsupportedLanguageAndSelf) {
  const Strings repo = {"a.rb", "b.rb", "a.py"};
  EXPECT_TRUE(deps(file("Ruby", "a.rb", "require_relative 'b'\n"), repo).empty());
  EXPECT_TRUE(deps(file("Python", "a.py", "import a\n"), repo).empty());
  EXPECT_FALSE(supports_dependency_extraction(LanguageId::named("Ruby")));
  EXPECT_TRUE(supports_dependency_extraction(LanguageId::named("Go")));
  EXPECT_FALSE(supports_dependency_extraction(std::nullopt));
}

TEST(DependencyGraph, InDegreesFromPairs) {
  // b and c import a; c also imports b.
  const std::vector<DependencyPair> edges = {{"b", "a"}, {"c", "a"}, {"c", "b"}, {"c", "a"}};
  const auto g = DependencyGraph::build({"a", "b", "c"}, edges);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.in_degree_of("a"), 0u);
  EXPECT_EQ(g.in_degree_of("b"), 1u);
  EXPECT_EQ(g.in_degree_of("c"), 2u);
  EXPECT_EQ(g.dependents_of("a"), (Strings{"b", "c"}));
  EXPECT_EQ(g.dependents_of("b"), (Strings{"c"}));
  EXPECT_EQ(g.dump_edges(), "a -> b\na -> c\nb -> c\n");
}

TEST(DependencyGraph, RejectsBadInput) {
  const std::vector<DependencyPair> none;
  EXPECT_THROW(DependencyGraph::build({"a", "a"}, none), std::invalid_argument);
  const std::vector<DependencyPair> dangling = {{"a", "zz"}};
  EXPECT_THROW(DependencyGraph::build({"a"}, dangling), std::invalid_argument);
}

TEST(DependencyGraph, LargeGraphLookup) {
  std::vector<std::string> nodes;
  for (int i = 40; i > 0; --i) nodes.push_back("f" + std::to_string(i));
  std::vector<DependencyPair> edges = {{"f1", "f40"}, {"f2", "f1"}};
  const auto g = DependencyGraph::build(nodes, edges);
  EXPECT_EQ(g.index_of("f40"), 0u);
  EXPECT_EQ(g.index_of("f1"), 39u);
  EXPECT_EQ(g.index_of("nope"), std::nullopt);
  EXPECT_EQ(g.in_degree_of("f1"), 1u);
  EXPECT_EQ(g.in_degree_of("f2"), 1u);
}
