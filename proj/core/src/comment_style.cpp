#include "repocorpus/comment_style.hpp"

#include <utility>

namespace repocorpus {
namespace {

constexpr CommentStyle kSlash{"//", ""};

constexpr std::pair<std::string_view, CommentStyle> kStyles[] = {
    // script family
    {"AWK", {"#", ""}}, {"CMake", {"#", ""}}, {"CoffeeScript", {"#", ""}},
    {"Dockerfile", {"#", ""}}, {"Elixir", {"#", ""}}, {"Julia", {"#", ""}},
    {"Literate CoffeeScript", {"#", ""}}, {"Makefile", {"#", ""}}, {"Maple", {"#", ""}},
    {"Perl", {"#", ""}}, {"PowerShell", {"#", ""}}, {"Python", {"#", ""}}, {"R", {"#", ""}},
    {"Ruby", {"#", ""}}, {"Shell", {"#", ""}}, {"Sparql", {"#", ""}}, {"TCL", {"#", ""}},
    {"Tcsh", {"#", ""}}, {"YAML", {"#", ""}},
    // double dash
    {"Ada", {"--", ""}}, {"Agda", {"--", ""}}, {"AppleScript", {"--", ""}}, {"Elm", {"--", ""}},
    {"Haskell", {"--", ""}}, {"Idris", {"--", ""}}, {"Lean", {"--", ""}},
    {"Literate Agda", {"--", ""}}, {"Literate Haskell", {"--", ""}}, {"Lua", {"--", ""}},
    {"SQL", {"--", ""}}, {"VHDL", {"--", ""}},
    // lisps and assembly
    {"Assembly", {";", ""}}, {"Clojure", {";", ""}}, {"Common Lisp", {";", ""}},
    {"Emacs Lisp", {";", ""}}, {"Racket", {";", ""}}, {"Scheme", {";", ""}},
    // percent
    {"Erlang", {"%", ""}}, {"MATLAB", {"%", ""}}, {"Prolog", {"%", ""}}, {"Tex", {"%", ""}},
    // block-only or unusual
    {"Augeas", {"(*", "*)"}}, {"Isabelle", {"(*", "*)"}}, {"Mathematica", {"(*", "*)"}},
    {"OCaml", {"(*", "*)"}}, {"Standard ML", {"(*", "*)"}}, {"CSS", {"/*", "*/"}},
    {"HTML", {"<!--", "-->"}}, {"Java Server Pages", {"<!--", "-->"}},
    {"RMarkdown", {"<!--", "-->"}}, {"XSLT", {"<!--", "-->"}},
    {"Fortran", {"!", ""}}, {"Visual Basic", {"'", ""}},
};

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

} // namespace

CommentStyle comment_style_for(std::optional<LanguageId> lang) {
  if (!lang) return kSlash;
  for (const auto& [name, style] : kStyles) {
    if (name == lang->name()) return style;
  }
  if (lang->name() == "Batchfile") return {"::", ""};
  return kSlash;
}

bool is_comment_line(std::string_view line, const CommentStyle& style) {
  const std::string_view t = trim_left(line);
  if (t.starts_with(style.open)) return true;
  if (style.open == "//") return t.starts_with("/*") || t.starts_with("*");
  return false;
}

} // namespace repocorpus
