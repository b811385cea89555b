#include "qgrover/qcl/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace qgrover::qcl {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {
    "procedure", "int", "qureg", "quvoid", "for", "to",      "if",
    "else",      "until", "input", "print", "measure", "reset", "not",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (done()) break;
      out.push_back(next());
    }
    out.push_back(Token{TokenKind::End, "", pos_});
    return out;
  }

 private:
  bool done() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space_and_comments() {
    while (!done()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!done() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    const SourcePos start = pos_;
    const char c = peek();
    if (ident_start(c)) {
      std::string word;
      while (!done() && ident_char(peek())) {
        word += peek();
        advance();
      }
      const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
      return Token{kind, std::move(word), start};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      if (ident_start(peek())) throw LexError(pos_, "invalid character in integer literal");
      return Token{TokenKind::Integer, std::move(digits), start};
    }
    if (c == '"') return string_literal(start);
    if (c == '=' && peek(1) == '=') {
      advance();
      advance();
      return Token{TokenKind::Operator, "==", start};
    }
    static constexpr std::string_view kOperators = "=+-*/^!#";
    static constexpr std::string_view kPunctuation = ",;(){}[]";
    if (kOperators.find(c) != std::string_view::npos) {
      advance();
      return Token{TokenKind::Operator, std::string(1, c), start};
    }
    if (kPunctuation.find(c) != std::string_view::npos) {
      advance();
      return Token{TokenKind::Punctuation, std::string(1, c), start};
    }
    const unsigned char uc = static_cast<unsigned char>(c);
    std::string shown = (uc >= 0x20 && uc < 0x7f) ? std::string("'") + c + "'" : "byte " + std::to_string(uc);
    throw LexError(start, "illegal character " + shown);
  }

  Token string_literal(SourcePos start) {
    advance();  // opening quote
    std::string text;
    for (;;) {
      if (done() || peek() == '\n') throw LexError(start, "unterminated string literal");
      const char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (done()) throw LexError(start, "unterminated string literal");
        const char e = peek();
        switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          default: throw LexError(pos_, std::string("unknown escape \\") + e);
        }
        advance();
        continue;
      }
      text += c;
      advance();
    }
    return Token{TokenKind::String, std::move(text), start};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace qgrover::qcl
