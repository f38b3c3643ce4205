#include "lexer.hpp"

#include <cctype>

namespace akb::detail {

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::OccursIn: return "'occurs-in'";
    case Tok::Wildcard: return "'_'";
    case Tok::Rest: return "'_*'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Geq: return "'>='";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::DoubleColon: return "'::'";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Eq: return "'='";
    case Tok::At: return "'@'";
    case Tok::Implies: return "'=>'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::End: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : src_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (ident_start(c)) {
        std::size_t end = pos_;
        while (end < src_.size() && ident_char(src_[end])) ++end;
        t.text = std::string(src_.substr(pos_, end - pos_));
        t.kind = Tok::Ident;
        if (t.text == "occurs" && src_.substr(end, 3) == "-in" &&
            (end + 3 >= src_.size() || !ident_char(src_[end + 3]))) {
          t.kind = Tok::OccursIn;
          t.text = "occurs-in";
          end += 3;
        }
        advance(end - pos_);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t end = pos_;
        while (end < src_.size() && ident_char(src_[end])) ++end;
        t.text = std::string(src_.substr(pos_, end - pos_));
        for (char d : t.text)
          if (!std::isdigit(static_cast<unsigned char>(d)))
            fail(t, "malformed number '" + t.text + "'");
        t.kind = Tok::Number;
        advance(end - pos_);
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = string_literal(t);
      } else {
        t.kind = punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(ErrorCode::SyntaxError, SourceSpan{file_, at.line, at.column}, msg);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        return;
      }
    }
  }

  std::string string_literal(const Token& start) {
    std::string out;
    advance(1);
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '"') {
        advance(1);
        return out;
      }
      if (c == '\n') break;
      if (c == '\\') {
        if (pos_ + 1 >= src_.size()) break;
        const char e = src_[pos_ + 1];
        if (e != '"' && e != '\\') {
          Token here{Tok::String, {}, line_, col_};
          fail(here, std::string("unknown escape '\\") + e + "'");
        }
        out.push_back(e);
        advance(2);
        continue;
      }
      out.push_back(c);
      advance(1);
    }
    fail(start, "unterminated string");
  }

  Tok punct(const Token& at) {
    auto two = src_.substr(pos_, 2);
    struct Multi { std::string_view text; Tok kind; };
    static constexpr Multi multi[] = {
        {">=", Tok::Geq}, {"=>", Tok::Implies}, {"&&", Tok::AndAnd},
        {"||", Tok::OrOr}, {"::", Tok::DoubleColon}, {"_*", Tok::Rest},
    };
    for (const auto& m : multi) {
      if (two == m.text) {
        advance(2);
        return m.kind;
      }
    }
    Tok kind;
    switch (src_[pos_]) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '<': kind = Tok::Lt; break;
      case '>': kind = Tok::Gt; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semi; break;
      case ':': kind = Tok::Colon; break;
      case '.': kind = Tok::Dot; break;
      case '|': kind = Tok::Bar; break;
      case '+': kind = Tok::Plus; break;
      case '*': kind = Tok::Star; break;
      case '!': kind = Tok::Bang; break;
      case '?': kind = Tok::Question; break;
      case '=': kind = Tok::Eq; break;
      case '@': kind = Tok::At; break;
      case '_': kind = Tok::Wildcard; break;
      default:
        fail(at, std::string("unexpected character '") + src_[pos_] + "'");
    }
    advance(1);
    return kind;
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view text, const std::string& file) {
  return Lexer(text, file).run();
}

}  // namespace akb::detail
