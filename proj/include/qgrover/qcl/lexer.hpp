#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qgrover/qcl/diagnostics.hpp"

namespace qgrover::qcl {

enum class TokenKind {
  Identifier,
  Integer,
  String,
  Keyword,
  Operator,
  Punctuation,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  // Source slice; for strings, the decoded contents without quotes.
  std::string text;
  SourcePos pos;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_symbol(std::string_view t) const {
    return (kind == TokenKind::Operator || kind == TokenKind::Punctuation) && text == t;
  }
};

const char* to_string(TokenKind kind);

bool is_keyword(std::string_view word);

// Splits QCL-subset source into tokens. `//` comments run to end of line.
// The returned stream always ends with a single End token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace qgrover::qcl
