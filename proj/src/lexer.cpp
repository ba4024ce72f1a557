#include "plens/lexer.hpp"

#include <array>
#include <cctype>

namespace plens {

namespace {

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

// Multi-character punctuators, longest first within each leading byte.
constexpr std::array<std::string_view, 30> kPuncts = {
    "===", "!==", ">>>", "...", "?.",  "=>", "->", "::", "==", "!=",
    "<=",  ">=",  "&&",  "||",  "??",  "++", "--", "+=", "-=", "*=",
    "/=",  "%=",  "&=",  "|=",  "^=",  "<<", ">>", "**", "~",  "@",
};

char decode_escape(char c) {
  switch (c) {
    case 'n': return '\n';
    case 't': return '\t';
    case 'r': return '\r';
    case '0': return '\0';
    case 'b': return '\b';
    case 'f': return '\f';
    default: return c;
  }
}

class Cursor {
 public:
  Cursor(std::string_view text, Language lang) : text_(text), lang_(lang) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token(out));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.begin = end.end = text_.size();
    out.push_back(end);
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        pos_ += 2;
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) ++pos_;
        if (!at_end()) pos_ += 2;
      } else {
        break;
      }
    }
  }

  Token next_token(const std::vector<Token>& so_far) {
    std::size_t start = pos_;
    char c = peek();

    if (is_ident_start(static_cast<unsigned char>(c))) return lex_ident(start);
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lex_number(start);
    }
    if (c == '"' || c == '\'') return lex_string(start, c);
    if (lang_ == Language::JsLike && c == '`') return lex_template(start);
    if (lang_ == Language::JsLike && c == '/' && regex_possible(so_far)) {
      return lex_regex(start);
    }
    return lex_punct(start);
  }

  Token lex_ident(std::size_t start) {
    while (!at_end() && is_ident_char(static_cast<unsigned char>(peek()))) ++pos_;
    Token t;
    t.kind = Token::Kind::Ident;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.begin = start;
    t.end = pos_;
    return t;
  }

  Token lex_number(std::size_t start) {
    // Permissive: digits plus hex/float/suffix characters; exactness of
    // numeric values is irrelevant downstream.
    ++pos_;
    while (!at_end()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++pos_;
      } else if ((c == '+' || c == '-') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
        ++pos_;
      } else {
        break;
      }
    }
    Token t;
    t.kind = Token::Kind::Number;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.begin = start;
    t.end = pos_;
    return t;
  }

  Token lex_string(std::size_t start, char quote) {
    ++pos_;
    std::string value;
    while (!at_end() && peek() != quote && peek() != '\n') {
      if (peek() == '\\' && pos_ + 1 < text_.size()) {
        value.push_back(decode_escape(peek(1)));
        pos_ += 2;
      } else {
        value.push_back(peek());
        ++pos_;
      }
    }
    if (!at_end() && peek() == quote) ++pos_;
    Token t;
    t.kind = Token::Kind::String;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.value = std::move(value);
    t.begin = start;
    t.end = pos_;
    return t;
  }

  // Template literals become a single string token carrying the raw inner
  // text; `${...}` holes are not evaluated.
  Token lex_template(std::size_t start) {
    ++pos_;
    std::string value;
    int hole_depth = 0;
    while (!at_end()) {
      char c = peek();
      if (c == '\\' && pos_ + 1 < text_.size()) {
        value.push_back(decode_escape(peek(1)));
        pos_ += 2;
        continue;
      }
      if (c == '`' && hole_depth == 0) {
        ++pos_;
        break;
      }
      if (c == '$' && peek(1) == '{') ++hole_depth;
      if (c == '}' && hole_depth > 0) --hole_depth;
      value.push_back(c);
      ++pos_;
    }
    Token t;
    t.kind = Token::Kind::String;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.value = std::move(value);
    t.begin = start;
    t.end = pos_;
    return t;
  }

  // `/` starts a regex literal only where an operand is expected.
  static bool regex_possible(const std::vector<Token>& so_far) {
    if (so_far.empty()) return true;
    const Token& prev = so_far.back();
    if (prev.kind == Token::Kind::Ident) {
      static const std::array<std::string_view, 6> kPrefix = {
          "return", "typeof", "case", "in", "of", "delete"};
      for (auto k : kPrefix) {
        if (prev.text == k) return true;
      }
      return false;
    }
    if (prev.kind == Token::Kind::Number || prev.kind == Token::Kind::String) return false;
    if (prev.is_punct(")") || prev.is_punct("]")) return false;
    return true;
  }

  Token lex_regex(std::size_t start) {
    ++pos_;
    bool in_class = false;
    while (!at_end() && peek() != '\n') {
      char c = peek();
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      if (c == '/' && !in_class) {
        ++pos_;
        break;
      }
      ++pos_;
    }
    while (!at_end() && is_ident_char(static_cast<unsigned char>(peek()))) ++pos_;  // flags
    Token t;
    t.kind = Token::Kind::String;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.value = t.text;
    t.begin = start;
    t.end = pos_;
    return t;
  }

  Token lex_punct(std::size_t start) {
    for (auto p : kPuncts) {
      if (text_.substr(pos_).rfind(p, 0) == 0) {
        pos_ += p.size();
        Token t;
        t.kind = Token::Kind::Punct;
        t.text = std::string(p);
        t.begin = start;
        t.end = pos_;
        return t;
      }
    }
    ++pos_;
    Token t;
    t.kind = Token::Kind::Punct;
    t.text = std::string(text_.substr(start, 1));
    t.begin = start;
    t.end = pos_;
    return t;
  }

  std::string_view text_;
  Language lang_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> lex(std::string_view text, Language lang) {
  return Cursor(text, lang).run();
}

}  // namespace plens
