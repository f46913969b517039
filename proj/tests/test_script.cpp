#include <gtest/gtest.h>

#include "oracles.hpp"
#include "splitlp/script/parser.hpp"
#include "splitlp/script/printer.hpp"

using namespace splitlp;
using namespace splitlp::script;

namespace {

std::string script_text(const std::string& name) { return oracle::read_file(std::string(SPLITLP_SCRIPTS_DIR) + "/" + name); }

template <class T>
const T& only(const Script& s, std::size_t i = 0) {
  return std::get<T>(s.statements.at(i).command);
}

ParseError parse_error_of(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError("none");
}

}  // namespace

TEST(Lexer, KindsAndPositions) {
  const auto toks = tokenize("type [29,11,10_2]{mu5 = 0};\n[a0] config 3,7 : {10};");
  ASSERT_GE(toks.size(), 20u);
  EXPECT_EQ(toks[0].kind, TokenKind::Keyword);
  EXPECT_EQ(toks[6].kind, TokenKind::Integer);
  EXPECT_EQ(toks[6].text, "10");
  EXPECT_EQ(toks[7].kind, TokenKind::Suffix2);
  EXPECT_EQ(toks[10].kind, TokenKind::Variable);
  EXPECT_EQ(toks[10].text, "mu5");
  const auto label = std::find_if(toks.begin(), toks.end(), [](const Token& t) { return t.kind == TokenKind::Label; });
  ASSERT_NE(label, toks.end());
  EXPECT_EQ(label->text, "a0");
  EXPECT_EQ(label->line, 2);
  EXPECT_EQ(label->column, 1);
  EXPECT_EQ(toks.back().kind, TokenKind::End);
}

TEST(Lexer, CommentsKeepTheirTerminator) {
  const auto toks = tokenize("(* a (nested-looking) note *); (* bare *)");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_TRUE(toks[0].terminated);
  EXPECT_EQ(toks[0].text, " a (nested-looking) note ");
  EXPECT_FALSE(toks[1].terminated);
}

TEST(Lexer, VariableSpellings) {
  EXPECT_TRUE(is_variable_spelling("x_0_3_3_4"));
  EXPECT_TRUE(is_variable_spelling("x0022222"));
  EXPECT_TRUE(is_variable_spelling("y14"));
  EXPECT_TRUE(is_variable_spelling("mu5"));
  EXPECT_FALSE(is_variable_spelling("x_"));
  EXPECT_FALSE(is_variable_spelling("x__1"));
  EXPECT_FALSE(is_variable_spelling("z3"));
  EXPECT_FALSE(is_variable_spelling("mu"));
}

TEST(Lexer, ErrorsCarryLineAndColumn) {
  try {
    tokenize("type [21,5,10];\n  config 3 : {1} @");
    FAIL() << "expected a lexer error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 18);
  }
  EXPECT_EQ(parse_error_of("(* never closed").line(), 1);
  EXPECT_EQ(parse_error_of("type [1,1,1];\nwibble;").line(), 2);
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  const auto e = parse_error_of("type [21,5,10];\nconfig 3,3 : {11, 10;");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 21);
  EXPECT_NE(std::string(e.what()).find("expected"), std::string::npos);
  EXPECT_EQ(parse_error_of("type [21,5];").column(), 11);
  EXPECT_EQ(parse_error_of("via lp [a] = [b] [c];").line(), 1);
  EXPECT_EQ(parse_error_of("kill weights ;").column(), 14);
  EXPECT_EQ(parse_error_of("group size 8;").column(), 12);
}

TEST(Parser, StatementShapes) {
  const auto s = parse_text(
      "type [29,11,10_2]{mu5 = 0};\n"
      "infer dual min >= 6;\n"
      "infer x0022222 != 0;\n"
      "show x_20 != 0;\n"
      "[b0] config 10,10,11 : {110,001} : {111} : {y14 = 0};\n"
      "via variable split [base] = [a0] or [b0];\n"
      "via nothing [current] = ;\n"
      "kill weights 16,18;\n"
      "no [25,8,10];\n"
      "automorphism 2,1,3;\n"
      "group size = 1008;\n");
  ASSERT_EQ(s.statements.size(), 11u);
  const auto& t = only<TypeCmd>(s, 0).type;
  EXPECT_EQ(t.str(), "[29,11,10_2]{mu5 = 0}");
  EXPECT_EQ(only<InferDualMinCmd>(s, 1).value, 6);
  const auto& f = only<InferFactCmd>(s, 2).fact;
  EXPECT_TRUE(f.compact);
  EXPECT_EQ(f.multiweight.entries, (std::vector<int>{0, 0, 2, 2, 2, 2, 2}));
  EXPECT_EQ(f.relation, CountRelation::NotEqual);
  EXPECT_EQ(only<ShowCmd>(s, 3).fact.multiweight.entries, std::vector<int>{20});
  const auto& c = only<ConfigCmd>(s, 4);
  EXPECT_EQ(c.label, std::optional<std::string>("b0"));
  EXPECT_EQ(c.parts, (std::vector<int>{10, 10, 11}));
  EXPECT_EQ(c.rows, (std::vector<std::string>{"110", "001"}));
  EXPECT_EQ(c.dual_rows, std::vector<std::string>{"111"});
  EXPECT_EQ(c.groups, 3);
  ASSERT_EQ(c.constraints.size(), 1u);
  EXPECT_EQ(c.constraints[0].str(), "y14 = 0");
  const auto& v = only<ViaCmd>(s, 5);
  EXPECT_EQ(v.method, ViaMethod::VariableSplit);
  EXPECT_EQ(v.target, "base");
  EXPECT_EQ(v.branches, (std::vector<std::string>{"a0", "b0"}));
  EXPECT_TRUE(only<ViaCmd>(s, 6).branches.empty());
  EXPECT_EQ(only<KillWeightsCmd>(s, 7).weights, (std::vector<int>{16, 18}));
  EXPECT_EQ(only<NoCmd>(s, 8), (NoCmd{25, 8, 10, false}));
  EXPECT_EQ(only<AutomorphismCmd>(s, 9).images, (std::vector<int>{2, 1, 3}));
  EXPECT_EQ(only<GroupSizeCmd>(s, 10).order, 1008u);
  EXPECT_EQ(s.statements[4].line, 5);
}

TEST(Parser, ConfigShapeChecks) {
  const auto s = parse_text("config 1,2 : {10} : {11};");
  EXPECT_THROW(to_configuration(only<ConfigCmd>(s)), DomainError);  // meets the dual word in one coordinate
  const auto t = parse_text("config 2,2 : {10,10};");
  EXPECT_THROW(to_configuration(only<ConfigCmd>(t)), DomainError);
  const auto u = parse_text("config 2,2 : {101};");
  EXPECT_THROW(to_configuration(only<ConfigCmd>(u)), DomainError);
  const auto ok = to_configuration(only<ConfigCmd>(parse_text("[q] config 2,3 : {10} : {01};")));
  EXPECT_EQ(ok.length(), 5);
  EXPECT_EQ(ok.label, std::optional<std::string>("q"));
}

TEST(Parser, EmptyScript) {
  EXPECT_TRUE(parse_text("").statements.empty());
  EXPECT_TRUE(parse_text("  \n\t ").statements.empty());
}

TEST(Scripts, StatementCountsAndRoundTrip) {
  const std::vector<std::pair<std::string, std::size_t>> files{
      {"no_31_13_10.sp", 17}, {"classify_21_5_10.sp", 49}, {"codes_24_7_10.sp", 30}, {"no_29_11_10_even_mu5.sp", 17}};
  for (const auto& [name, count] : files) {
    const auto s = parse_text(script_text(name));
    EXPECT_EQ(s.statements.size(), count) << name;
    const std::string printed = print_script(s);
    const auto again = parse_text(printed);
    EXPECT_EQ(again, s) << name;
    EXPECT_EQ(print_script(again), printed) << name;
  }
}

TEST(Scripts, LineNumbersPointIntoTheSource) {
  const std::string text = script_text("classify_21_5_10.sp");
  const auto s = parse_text(text);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  for (const auto& st : s.statements) {
    ASSERT_GE(st.line, 1);
    ASSERT_LE(static_cast<std::size_t>(st.line), lines.size());
    EXPECT_FALSE(lines[static_cast<std::size_t>(st.line - 1)].find_first_not_of(" \t") == std::string::npos);
  }
}
