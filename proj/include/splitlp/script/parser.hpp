#ifndef SPLITLP_SCRIPT_PARSER_HPP
#define SPLITLP_SCRIPT_PARSER_HPP

// Recursive-descent parser for proof scripts.
//
//   script     := { statement }
//   statement  := comment
//               | "type" code_type ";"
//               | "infer" "dual" "min" ">=" INT ";"
//               | "infer" relation ";"
//               | "show" relation ";"
//               | [LABEL] "config" INT {"," INT} ":" group [":" group [":" cgroup]] ";"
//               | "via" ("lp" | "nothing" | "variable" "split") LABEL "=" [LABEL {"or" LABEL}] ";"
//               | "kill" "weights" INT {"," INT} ";"
//               | "no" params ";"
//               | "automorphism" INT {"," INT} ";"
//               | "group" "size" "=" INT ";"
//   code_type  := params ["{" relation {"," relation} "}"]
//   params     := "[" INT "," INT "," INT ["_2"] "]"
//   group      := "{" [INT {"," INT}] "}"       (0/1 block patterns)
//   cgroup     := "{" [relation {"," relation}] "}"
//   relation   := VARIABLE ("=" | "!=" | ">=") INT

#include <string>
#include <string_view>
#include <vector>

#include "splitlp/error.hpp"
#include "splitlp/script/ast.hpp"
#include "splitlp/script/lexer.hpp"

namespace splitlp::script {

/// Decodes a variable token into a side-constraint skeleton (relation unset).
inline SideConstraint decode_variable(const std::string& text) {
  SideConstraint c;
  if (text[0] == 'y') {
    c.kind = CountKind::Weight;
    c.weight = std::stoi(text.substr(1));
  } else if (text[0] == 'm') {
    c.kind = CountKind::DualWeight;
    c.weight = std::stoi(text.substr(2));
  } else {
    c.kind = CountKind::Variable;
    if (text.size() > 1 && text[1] == '_') {
      std::size_t i = 1;
      while (i < text.size()) {
        std::size_t j = i + 1;
        while (j < text.size() && text[j] != '_') ++j;
        c.multiweight.entries.push_back(std::stoi(text.substr(i + 1, j - i - 1)));
        i = j;
      }
    } else {
      c.compact = true;
      for (std::size_t i = 1; i < text.size(); ++i) c.multiweight.entries.push_back(text[i] - '0');
    }
  }
  return c;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Script parse_script() {
    Script s;
    while (peek().kind != TokenKind::End) s.statements.push_back(parse_statement());
    return s;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    const std::string got = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", found " + got, t.line, t.column);
  }

  bool at_punct(std::string_view p) const { return peek().kind == TokenKind::Punct && peek().text == p; }
  bool at_keyword(std::string_view k) const { return peek().kind == TokenKind::Keyword && peek().text == k; }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("'" + std::string(p) + "'");
    next();
  }

  void expect_keyword(std::string_view k) {
    if (!at_keyword(k)) fail("'" + std::string(k) + "'");
    next();
  }

  std::string expect_integer_text() {
    if (peek().kind != TokenKind::Integer) fail("integer");
    return next().text;
  }

  long long expect_integer() {
    const Token& t = peek();
    const std::string s = expect_integer_text();
    try {
      return std::stoll(s);
    } catch (const std::exception&) {
      throw ParseError("integer out of range '" + s + "'", t.line, t.column);
    }
  }

  int expect_int() {
    const Token& t = peek();
    const long long v = expect_integer();
    if (v > 1'000'000'000) throw ParseError("integer too large", t.line, t.column);
    return static_cast<int>(v);
  }

  std::string expect_label() {
    if (peek().kind != TokenKind::Label) fail("label such as [current]");
    return next().text;
  }

  SideConstraint parse_relation() {
    if (peek().kind != TokenKind::Variable) fail("variable (x..., y..., mu...)");
    SideConstraint c = decode_variable(next().text);
    if (at_punct("=")) {
      c.relation = CountRelation::Equal;
    } else if (at_punct("!=")) {
      c.relation = CountRelation::NotEqual;
    } else if (at_punct(">=")) {
      c.relation = CountRelation::AtLeast;
    } else {
      fail("'=', '!=' or '>='");
    }
    next();
    c.value = expect_integer();
    return c;
  }

  void parse_params(int& n, int& k, int& d, bool& even) {
    expect_punct("[");
    n = expect_int();
    expect_punct(",");
    k = expect_int();
    expect_punct(",");
    d = expect_int();
    even = false;
    if (peek().kind == TokenKind::Suffix2) {
      next();
      even = true;
    }
    expect_punct("]");
  }

  std::vector<std::string> parse_pattern_group() {
    std::vector<std::string> rows;
    expect_punct("{");
    if (!at_punct("}")) {
      rows.push_back(expect_integer_text());
      while (at_punct(",")) {
        next();
        rows.push_back(expect_integer_text());
      }
    }
    expect_punct("}");
    return rows;
  }

  std::vector<SideConstraint> parse_constraint_group() {
    std::vector<SideConstraint> cs;
    expect_punct("{");
    if (!at_punct("}")) {
      cs.push_back(parse_relation());
      while (at_punct(",")) {
        next();
        cs.push_back(parse_relation());
      }
    }
    expect_punct("}");
    return cs;
  }

  std::vector<int> parse_int_list() {
    std::vector<int> v{expect_int()};
    while (at_punct(",")) {
      next();
      v.push_back(expect_int());
    }
    return v;
  }

  Statement parse_statement() {
    Statement st;
    st.line = peek().line;
    const Token& t = peek();
    if (t.kind == TokenKind::Comment) {
      st.command = CommentCmd{t.text, t.terminated};
      next();
      return st;
    }
    if (t.kind == TokenKind::Label) {
      std::string label = next().text;
      if (!at_keyword("config")) fail("'config' after label [" + label + "]");
      auto cfg = parse_config();
      cfg.label = std::move(label);
      st.command = std::move(cfg);
      return st;
    }
    if (t.kind != TokenKind::Keyword) fail("a command");
    const std::string kw = t.text;
    if (kw == "type") {
      next();
      TypeCmd c;
      parse_params(c.type.n, c.type.k, c.type.d, c.type.even);
      if (at_punct("{")) c.type.constraints = parse_constraint_group();
      expect_punct(";");
      st.command = std::move(c);
    } else if (kw == "infer") {
      next();
      if (at_keyword("dual")) {
        next();
        expect_keyword("min");
        expect_punct(">=");
        st.command = InferDualMinCmd{expect_int()};
      } else {
        st.command = InferFactCmd{parse_relation()};
      }
      expect_punct(";");
    } else if (kw == "show") {
      next();
      st.command = ShowCmd{parse_relation()};
      expect_punct(";");
    } else if (kw == "config") {
      st.command = parse_config();
    } else if (kw == "via") {
      next();
      ViaCmd c;
      if (at_keyword("lp")) {
        next();
        c.method = ViaMethod::Lp;
      } else if (at_keyword("nothing")) {
        next();
        c.method = ViaMethod::Nothing;
      } else if (at_keyword("variable")) {
        next();
        expect_keyword("split");
        c.method = ViaMethod::VariableSplit;
      } else {
        fail("'lp', 'nothing' or 'variable split'");
      }
      c.target = expect_label();
      expect_punct("=");
      if (peek().kind == TokenKind::Label) {
        c.branches.push_back(next().text);
        while (at_keyword("or")) {
          next();
          c.branches.push_back(expect_label());
        }
      }
      expect_punct(";");
      st.command = std::move(c);
    } else if (kw == "kill") {
      next();
      expect_keyword("weights");
      st.command = KillWeightsCmd{parse_int_list()};
      expect_punct(";");
    } else if (kw == "no") {
      next();
      NoCmd c;
      parse_params(c.n, c.k, c.d, c.even);
      expect_punct(";");
      st.command = c;
    } else if (kw == "automorphism") {
      next();
      st.command = AutomorphismCmd{parse_int_list()};
      expect_punct(";");
    } else if (kw == "group") {
      next();
      expect_keyword("size");
      expect_punct("=");
      const long long v = expect_integer();
      if (v < 1) fail("positive group order");
      st.command = GroupSizeCmd{static_cast<std::uint64_t>(v)};
      expect_punct(";");
    } else {
      fail("a command");
    }
    return st;
  }

  ConfigCmd parse_config() {
    expect_keyword("config");
    ConfigCmd c;
    c.parts = parse_int_list();
    expect_punct(":");
    c.rows = parse_pattern_group();
    c.groups = 1;
    if (at_punct(":")) {
      next();
      c.dual_rows = parse_pattern_group();
      c.groups = 2;
      if (at_punct(":")) {
        next();
        c.constraints = parse_constraint_group();
        c.groups = 3;
      }
    }
    expect_punct(";");
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// The configuration a config statement describes, shape-checked.
inline Configuration to_configuration(const ConfigCmd& c) {
  Configuration cfg;
  cfg.partition = Partition(c.parts);
  for (const auto& r : c.rows) cfg.rows.push_back(parse_pattern(r));
  for (const auto& r : c.dual_rows) cfg.dual_rows.push_back(parse_pattern(r));
  cfg.constraints = c.constraints;
  cfg.label = c.label;
  cfg.validate();
  return cfg;
}

inline Script parse(std::vector<Token> tokens) { return Parser(std::move(tokens)).parse_script(); }

inline Script parse_text(std::string_view text) { return parse(tokenize(text)); }

}  // namespace splitlp::script

#endif  // SPLITLP_SCRIPT_PARSER_HPP
