#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "plens/source.hpp"

namespace plens {

struct Token {
  enum class Kind { Ident, String, Number, Punct, End };

  Kind kind = Kind::End;
  std::string text;   // identifier/punct spelling; raw spelling for literals
  std::string value;  // decoded string contents (String only)
  std::size_t begin = 0;
  std::size_t end = 0;

  bool is(Kind k) const { return kind == k; }
  bool is_punct(std::string_view p) const { return kind == Kind::Punct && text == p; }
  bool is_ident(std::string_view name) const { return kind == Kind::Ident && text == name; }
};

// Tokenizes the supported JS-like / Java-like surface. Never fails: bytes
// that fit no token class are emitted as single-character puncts.
std::vector<Token> lex(std::string_view text, Language lang);

}  // namespace plens
