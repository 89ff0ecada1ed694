#include "qorbit/parse.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace qorbit {

namespace {

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
  Kind kind;
  std::size_t pos;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    const char c = src_[i_];
    switch (c) {
      case '+': tok_.kind = Token::Kind::Plus; ++i_; return;
      case '-': tok_.kind = Token::Kind::Minus; ++i_; return;
      case '*': tok_.kind = Token::Kind::Star; ++i_; return;
      case '^': tok_.kind = Token::Kind::Caret; ++i_; return;
      case '(': tok_.kind = Token::Kind::LParen; ++i_; return;
      case ')': tok_.kind = Token::Kind::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.data() + i_;
      const char* end = src_.data() + src_.size();
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr == begin) throw ParseError("invalid number", i_);
      tok_.kind = Token::Kind::Number;
      tok_.number = value;
      i_ += static_cast<std::size_t>(ptr - begin);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      tok_.kind = Token::Kind::Ident;
      tok_.text.assign(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view src, const VariableSpace& space) : lex_(src), space_(space) {}

  ExpPolySymbol run() {
    ExpPolySymbol s = parse_expr();
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError("trailing input after expression", lex_.peek().pos);
    return s;
  }

 private:
  ExpPolySymbol parse_expr() {
    double sign = 1.0;
    if (lex_.peek().kind == Token::Kind::Plus) lex_.take();
    else if (lex_.peek().kind == Token::Kind::Minus) { lex_.take(); sign = -1.0; }
    ExpPolySymbol acc = parse_term().scaled(sign);
    while (true) {
      if (lex_.peek().kind == Token::Kind::Plus) {
        lex_.take();
        acc = acc + parse_term();
      } else if (lex_.peek().kind == Token::Kind::Minus) {
        lex_.take();
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  ExpPolySymbol parse_term() {
    ExpPolySymbol acc = parse_factor();
    while (lex_.peek().kind == Token::Kind::Star) {
      lex_.take();
      acc = acc * parse_factor();
    }
    return acc;
  }

  ExpPolySymbol parse_factor() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Number:
        return ExpPolySymbol::constant(space_, Complex(t.number, 0.0));
      case Token::Kind::LParen: {
        ExpPolySymbol inner = parse_expr();
        expect(Token::Kind::RParen, "expected ')'");
        return inner;
      }
      case Token::Kind::Ident: {
        if (t.text == "i") return ExpPolySymbol::constant(space_, Complex(0.0, 1.0));
        if (t.text == "exp") {
          expect(Token::Kind::LParen, "expected '(' after exp");
          std::map<std::string, Complex> lin;
          Complex constant(0.0);
          parse_linform(lin, constant);
          expect(Token::Kind::RParen, "expected ')' closing exp");
          return ExpPolySymbol::exponential(space_, lin, std::exp(constant));
        }
        if (space_.p_index(t.text) >= 0) {
          int power = 1;
          if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            const Token n = lex_.take();
            if (n.kind != Token::Kind::Number || n.number < 0 ||
                n.number != static_cast<double>(static_cast<int>(n.number)))
              throw ParseError("exponent must be a nonnegative integer", n.pos);
            power = static_cast<int>(n.number);
          }
          ExpPolySymbol v = ExpPolySymbol::constant(space_, 1.0);
          for (int k = 0; k < power; ++k)
            v = v * ExpPolySymbol::p_variable(space_, t.text);
          return v;
        }
        if (space_.pos_index(t.text) >= 0)
          throw ParseError("position variable '" + t.text + "' may only appear inside exp()",
                           t.pos);
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
      }
      default:
        throw ParseError("expected a factor", t.pos);
    }
  }

  void parse_linform(std::map<std::string, Complex>& lin, Complex& constant) {
    double sign = 1.0;
    if (lex_.peek().kind == Token::Kind::Plus) lex_.take();
    else if (lex_.peek().kind == Token::Kind::Minus) { lex_.take(); sign = -1.0; }
    parse_lterm(lin, constant, sign);
    while (true) {
      if (lex_.peek().kind == Token::Kind::Plus) {
        lex_.take();
        parse_lterm(lin, constant, 1.0);
      } else if (lex_.peek().kind == Token::Kind::Minus) {
        lex_.take();
        parse_lterm(lin, constant, -1.0);
      } else {
        return;
      }
    }
  }

  void parse_lterm(std::map<std::string, Complex>& lin, Complex& constant, double sign) {
    Complex coeff(sign, 0.0);
    bool saw_any = false;
    if (lex_.peek().kind == Token::Kind::Number) {
      coeff *= lex_.take().number;
      saw_any = true;
      if (lex_.peek().kind == Token::Kind::Star) lex_.take();
    }
    if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "i") {
      lex_.take();
      coeff *= Complex(0.0, 1.0);
      saw_any = true;
      if (lex_.peek().kind == Token::Kind::Star) lex_.take();
    }
    if (lex_.peek().kind == Token::Kind::Ident) {
      const Token v = lex_.take();
      if (space_.pos_index(v.text) < 0) {
        if (space_.p_index(v.text) >= 0)
          throw ParseError("p-variable '" + v.text + "' cannot appear inside exp()", v.pos);
        throw ParseError("unknown variable '" + v.text + "'", v.pos);
      }
      lin[v.text] += coeff;
      return;
    }
    if (!saw_any) throw ParseError("expected a linear-form term", lex_.peek().pos);
    constant += coeff;
  }

  void expect(Token::Kind kind, const char* message) {
    const Token t = lex_.take();
    if (t.kind != kind) throw ParseError(message, t.pos);
  }

  Lexer lex_;
  const VariableSpace& space_;
};

}  // namespace

ExpPolySymbol parse_symbol(std::string_view text, const VariableSpace& space) {
  return Parser(text, space).run();
}

}  // namespace qorbit
