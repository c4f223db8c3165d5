#include <gtest/gtest.h>

#include <string>

#include "filter_cases.hpp"
#include "repocorpus/quality_filter.hpp"

using namespace repocorpus;
using testsupport::make_file;
using testsupport::repeat;
using testsupport::words;

namespace {

std::optional<FilterRule> fired(const SourceFile& f, const FilterThresholds& t = {}) {
  const auto v = evaluate_file(f, t);
  EXPECT_EQ(v.accepted, !v.rule_fired.has_value());
  return v.rule_fired;
}

} // namespace

TEST(QualityFilter, LongLineRejected) {
  const auto f = make_file("Python", "a.py", words(1500) + "\n");
  EXPECT_EQ(fired(f), FilterRule::max_line_len);
}

TEST(QualityFilter, DigitsRejectedOnAlphabeticFraction) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "1234567890\n";
  EXPECT_EQ(fired(make_file("Python", "d.py", text)), FilterRule::alphabetic_fraction);
}

TEST(QualityFilter, XsltWithXmlHeaderAccepted) {
  const std::string text =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<xsl:stylesheet version=\"1.0\" xmlns:xsl=\"http://www.w3.org/1999/XSL/Transform\">\n"
      "  <xsl:template match=\"/\"><html><body>hello</body></html></xsl:template>\n"
      "</xsl:stylesheet>\n";
  EXPECT_EQ(fired(make_file("XSLT", "page.xsl", text)), std::nullopt);
  EXPECT_EQ(fired(make_file("Java", "Page.java", text)), FilterRule::xml_header);
}

TEST(QualityFilter, HtmlWithEnoughVisibleText) {
  // 250 visible code points out of 800.
  std::string text = "<div>" + words(250) + "</div>\n";
  while (text.size() < 800) {
    const std::size_t n = std::min<std::size_t>(800 - text.size(), 50);
    text += n >= 8 ? "<!--" + words(n - 8) + "-->\n" : repeat('\n', n);
  }
  ASSERT_EQ(text.size(), 800u);
  EXPECT_EQ(extract_visible_text(text).size(), 250u);
  EXPECT_TRUE(filter_html(text).accepted);
}

TEST(QualityFilter, BoundaryCases) {
  for (const auto& c : testsupport::filter_boundary_cases()) {
    EXPECT_EQ(fired(c.file), c.expected) << c.name;
  }
}

TEST(QualityFilter, RuleOrderReportsFirstFiringRule) {
  // Both line-length rules fire; the longest-line rule is checked first.
  const auto f = make_file("Python", "a.py", words(1500));
  const auto s = compute_file_stats(f.content);
  EXPECT_GT(s.avg_line_len, 100.0);
  EXPECT_EQ(apply_base_filters(f, s).rule_fired, FilterRule::max_line_len);
  // Average and alphabetic both fire; average first.
  const auto g = make_file("Python", "b.py", repeat('1', 150));
  EXPECT_EQ(apply_base_filters(g, compute_file_stats(g.content)).rule_fired, FilterRule::avg_line_len);
}

TEST(QualityFilter, DataFileRulesOnlyForDataLanguages) {
  EXPECT_THROW(filter_data_file("{}", LanguageId::named("Python")), std::invalid_argument);
  EXPECT_EQ(filter_data_file("{}", LanguageId::named("JSON")).rule_fired, FilterRule::data_too_small);
  // A tiny Python file is not a data file.
  EXPECT_EQ(fired(make_file("Python", "t.py", "total = compute(items)\n")), std::nullopt);
}

TEST(QualityFilter, HtmlCommentsAndScriptsAreInvisible) {
  EXPECT_EQ(extract_visible_text("<p>a  b</p><!-- hidden --><script>var x;</script><style>p{}</style>c"), "a b c");
  EXPECT_EQ(extract_visible_text("<p>open <b>bold"), "open bold");
  EXPECT_EQ(extract_visible_text("<!-- never closed"), "");
  EXPECT_EQ(extract_visible_text(""), "");
}

TEST(QualityFilter, RepeatedTokenHeuristic) {
  // 11 tokens; "filler" covers 10 * 6 = 60 of 80 code points.
  std::string text = "start";
  for (int i = 0; i < 10; ++i) text += " filler";
  text += "\n";
  text += repeat('x', 4);
  EXPECT_EQ(fired(make_file("Python", "r.py", text)), FilterRule::repeated_token);

  FilterThresholds off;
  off.quality_heuristics = false;
  EXPECT_EQ(fired(make_file("Python", "r.py", text), off), std::nullopt);

  // Fewer than 10 tokens: never applies.
  EXPECT_TRUE(screen_heuristics("aaaa aaaa aaaa", LanguageId::named("Python")).accepted);
}

TEST(QualityFilter, RepeatedTokenShareIsStrict) {
  // Token "ab" x 10 covers 20 of 40 code points: exactly one half, kept.
  std::string text;
  for (int i = 0; i < 10; ++i) text += "ab ";
  text += "cdefghijk";
  ASSERT_EQ(text.size(), 39u);
  text += "\n";
  EXPECT_TRUE(screen_heuristics(text, LanguageId::named("Python")).accepted);
  text.back() = 'z';
  text += "\n";  // 41 code points: still under
  EXPECT_TRUE(screen_heuristics(text, LanguageId::named("Python")).accepted);
  text = text.substr(0, 30) + "cdefghi";  // 37 code points, 20/37 > 0.5
  EXPECT_EQ(screen_heuristics(text, LanguageId::named("Python")).rule_fired, FilterRule::repeated_token);
}

TEST(QualityFilter, LongCodeLinesHeuristic) {
  // Ten code lines of 201 code points plus one short one: 10/11 > 0.9.
  std::string text;
  for (int i = 0; i < 10; ++i) text += words(201) + "\n";
  text += "x\n";
  EXPECT_EQ(screen_heuristics(text, LanguageId::named("Python")).rule_fired, FilterRule::long_code_lines);
  // Nine of ten is exactly 0.9: kept.
  std::string nine;
  for (int i = 0; i < 9; ++i) nine += words(201) + "\n";
  nine += "x\n";
  EXPECT_TRUE(screen_heuristics(nine, LanguageId::named("Python")).accepted);
  // Comment and blank lines are not code lines.
  std::string commented = text + "# note\n\n# more\n";
  EXPECT_FALSE(screen_heuristics(commented, LanguageId::named("Python")).accepted);
  // Lines of exactly 200 are not long.
  std::string exact;
  for (int i = 0; i < 10; ++i) exact += words(200) + "\n";
  EXPECT_TRUE(screen_heuristics(exact, LanguageId::named("Python")).accepted);
}

TEST(QualityFilter, CustomThresholds) {
  FilterThresholds t;
  t.max_line_len = 10;
  EXPECT_EQ(fired(make_file("Python", "a.py", words(11) + "\n"), t), FilterRule::max_line_len);
  EXPECT_EQ(fired(make_file("Python", "a.py", words(10) + "\n"), t), std::nullopt);
}

TEST(QualityFilter, VerdictInvariant) {
  for (const auto& c : testsupport::filter_boundary_cases()) {
    const auto v = evaluate_file(c.file);
    EXPECT_EQ(v.accepted, !v.rule_fired.has_value());
    if (!v.accepted) EXPECT_FALSE(v.detail.empty());
  }
}
