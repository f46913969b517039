#ifndef SPLITLP_SCRIPT_LEXER_HPP
#define SPLITLP_SCRIPT_LEXER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "splitlp/error.hpp"

namespace splitlp::script {

enum class TokenKind {
  Keyword,
  Integer,   // digit string, text kept verbatim (also used for 0/1 block patterns)
  Suffix2,   // the "_2" evenness marker after d in a code type
  Variable,  // x_10_0, x0022222, y14, mu5
  Label,     // [a0], [current], [base]
  Punct,     // [ ] { } : ; , = != >=
  Comment,   // (* ... *) with an optional trailing ';'
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 1;
  int column = 1;
  bool terminated = false;  // comments only: closed with ';'
};

inline const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Integer: return "integer";
    case TokenKind::Suffix2: return "'_2'";
    case TokenKind::Variable: return "variable";
    case TokenKind::Label: return "label";
    case TokenKind::Punct: return "punctuation";
    case TokenKind::Comment: return "comment";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

inline const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> k{"type", "config", "show",    "infer",   "via",   "lp",   "nothing",
                                                 "variable", "split", "kill", "weights", "no", "automorphism", "group",
                                                 "size", "dual", "min", "or"};
  return k;
}

/// x followed by "_<digits>" groups, or by a digit string (one digit per
/// block); y<digits>; mu<digits>.
inline bool is_variable_spelling(std::string_view s) {
  auto all_digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (s.size() >= 2 && s[0] == 'y') return all_digits(s.substr(1));
  if (s.size() >= 3 && s.substr(0, 2) == "mu") return all_digits(s.substr(2));
  if (s.size() >= 2 && s[0] == 'x') {
    if (s[1] != '_') return all_digits(s.substr(1));
    std::size_t i = 1;
    while (i < s.size()) {
      if (s[i] != '_') return false;
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i + 1) return false;
      i = j;
    }
    return true;
  }
  return false;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (c == '(' && peek(1) == '*') {
        t.kind = TokenKind::Comment;
        advance(2);
        const std::size_t start = pos_;
        for (;;) {
          if (pos_ + 1 >= src_.size()) throw ParseError("unterminated comment", t.line, t.column);
          if (src_[pos_] == '*' && src_[pos_ + 1] == ')') break;
          advance(1);
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        advance(2);
        // A comment may be followed by ';', which belongs to it.
        const std::size_t save = pos_;
        const int sl = line_, sc = col_;
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == ';') {
          advance(1);
          t.terminated = true;
        } else {
          pos_ = save;
          line_ = sl;
          col_ = sc;
        }
      } else if (c == '[' && label_ahead()) {
        t.kind = TokenKind::Label;
        advance(1);
        const std::size_t start = pos_;
        while (src_[pos_] != ']') advance(1);
        t.text = std::string(src_.substr(start, pos_ - start));
        advance(1);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = TokenKind::Integer;
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '_' && !out.empty() && out.back().kind == TokenKind::Integer && peek(1) == '2' &&
                 !std::isdigit(static_cast<unsigned char>(peek(2)))) {
        t.kind = TokenKind::Suffix2;
        t.text = "_2";
        advance(2);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance(1);
        t.text = std::string(src_.substr(start, pos_ - start));
        if (keywords().count(t.text)) {
          t.kind = TokenKind::Keyword;
        } else if (is_variable_spelling(t.text)) {
          t.kind = TokenKind::Variable;
        } else {
          throw ParseError("unknown word '" + t.text + "'", t.line, t.column);
        }
      } else if ((c == '!' || c == '>') && peek(1) == '=') {
        t.kind = TokenKind::Punct;
        t.text = std::string(src_.substr(pos_, 2));
        advance(2);
      } else if (std::string_view("[]{}:;,=").find(c) != std::string_view::npos) {
        t.kind = TokenKind::Punct;
        t.text = std::string(1, c);
        advance(1);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t k) {
    for (std::size_t i = 0; i < k && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  bool label_ahead() const {
    std::size_t i = pos_ + 1;
    if (i >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[i]))) return false;
    while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_')) ++i;
    return i < src_.size() && src_[i] == ']';
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace splitlp::script

#endif  // SPLITLP_SCRIPT_LEXER_HPP
