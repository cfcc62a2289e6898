#include "convdom/expr.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <utility>

namespace convdom {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Colon,
  End,
};

struct Token {
  Token() = default;
  Token(Tok k, std::size_t at) : kind(k), offset(at) {}

  Tok kind = Tok::End;
  std::size_t offset = 0;
  double number = 0.0;
  std::string ident;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) return {Tok::End, at};
    const char c = text_[pos_];
    switch (c) {
      case '+': ++pos_; return {Tok::Plus, at};
      case '-': ++pos_; return {Tok::Minus, at};
      case '*': ++pos_; return {Tok::Star, at};
      case '/': ++pos_; return {Tok::Slash, at};
      case '^': ++pos_; return {Tok::Caret, at};
      case '(': ++pos_; return {Tok::LParen, at};
      case ')': ++pos_; return {Tok::RParen, at};
      case '{': ++pos_; return {Tok::LBrace, at};
      case '}': ++pos_; return {Tok::RBrace, at};
      case '[': ++pos_; return {Tok::LBracket, at};
      case ']': ++pos_; return {Tok::RBracket, at};
      case ',': ++pos_; return {Tok::Comma, at};
      case ';': ++pos_; return {Tok::Semicolon, at};
      case ':': ++pos_; return {Tok::Colon, at};
      default: break;
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() &&
                        is_digit(text_[pos_ + 1]))) {
      return lex_number(at);
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && is_ident_char(text_[end])) ++end;
      Token t{Tok::Ident, at};
      t.ident = std::string(text_.substr(pos_, end - pos_));
      pos_ = end;
      return t;
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", at,
                      {"token"});
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        ++pos_;
      else
        break;
    }
  }

  Token lex_number(std::size_t at) {
    std::size_t end = pos_;
    while (end < text_.size() && is_digit(text_[end])) ++end;
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) ++end;
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      if (exp < text_.size() && is_digit(text_[exp])) {
        end = exp;
        while (end < text_.size() && is_digit(text_[end])) ++end;
      } else {
        throw SyntaxError("malformed exponent in numeric literal", end,
                          {"digit"});
      }
    }
    const std::string_view lit = text_.substr(pos_, end - pos_);
    double value = 0.0;
    const auto res =
        std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (res.ec != std::errc{} || res.ptr != lit.data() + lit.size())
      throw SyntaxError("malformed numeric literal", at, {"number"});
    pos_ = end;
    Token t{Tok::Number, at};
    t.number = value;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

ExprPtr make_const(double v) {
  return std::make_shared<Expr>(Expr{ConstNode{v}});
}

const std::vector<std::string> kAtomExpected = {
    "number", "x", "pi", "e", "abs", "exp", "ln", "sqrt", "piecewise",
    "(",      "-"};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  ExprPtr parse_document() {
    ExprPtr e = parse_expr();
    if (cur_.kind != Tok::End)
      throw SyntaxError("trailing input after expression", cur_.offset,
                        {"end of input", "+", "-", "*", "/", "^"});
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw SyntaxError(std::string("expected ") + what, cur_.offset, {what});
    advance();
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const BinaryOp op =
          cur_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      ExprPtr rhs = parse_term();
      lhs = std::make_shared<Expr>(Expr{BinaryNode{op, lhs, rhs}});
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const BinaryOp op =
          cur_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      ExprPtr rhs = parse_factor();
      lhs = std::make_shared<Expr>(Expr{BinaryNode{op, lhs, rhs}});
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (cur_.kind == Tok::Minus) {
      advance();
      ExprPtr operand = parse_factor();
      // A minus sign in front of a literal is a negative constant.
      if (const auto* c = std::get_if<ConstNode>(&operand->node))
        return make_const(-c->value);
      return std::make_shared<Expr>(Expr{UnaryNode{UnaryOp::Neg, operand}});
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (cur_.kind == Tok::Caret) {
      advance();
      ExprPtr exponent = parse_factor();
      return std::make_shared<Expr>(
          Expr{BinaryNode{BinaryOp::Pow, base, exponent}});
    }
    return base;
  }

  ExprPtr parse_atom() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return make_const(v);
      }
      case Tok::LParen: {
        advance();
        ExprPtr inner = parse_expr();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident:
        return parse_ident();
      default:
        throw SyntaxError("expected an operand", cur_.offset, kAtomExpected);
    }
  }

  ExprPtr parse_ident() {
    const std::string name = cur_.ident;
    const std::size_t at = cur_.offset;
    advance();
    if (name == "x") return std::make_shared<Expr>(Expr{VarNode{}});
    if (name == "pi") return make_const(3.141592653589793238462643383279503);
    if (name == "e") return make_const(2.718281828459045235360287471352662);
    std::optional<UnaryOp> fn;
    if (name == "abs") fn = UnaryOp::Abs;
    else if (name == "exp") fn = UnaryOp::Exp;
    else if (name == "ln") fn = UnaryOp::Ln;
    else if (name == "sqrt") fn = UnaryOp::Sqrt;
    if (fn) {
      expect(Tok::LParen, "(");
      ExprPtr arg = parse_expr();
      expect(Tok::RParen, ")");
      return std::make_shared<Expr>(Expr{UnaryNode{*fn, arg}});
    }
    if (name == "piecewise") return parse_piecewise();
    throw UnknownIdentifier(name, at);
  }

  double parse_bound() {
    bool negate = false;
    if (cur_.kind == Tok::Minus) {
      negate = true;
      advance();
    }
    if (cur_.kind != Tok::Number)
      throw SyntaxError("expected numeric guard bound", cur_.offset,
                        {"number"});
    const double v = cur_.number;
    advance();
    return negate ? -v : v;
  }

  ExprPtr parse_piecewise() {
    expect(Tok::LBrace, "{");
    std::vector<Piece> pieces;
    std::vector<std::size_t> piece_offsets;
    for (;;) {
      piece_offsets.push_back(cur_.offset);
      expect(Tok::LBracket, "[");
      const double lo = parse_bound();
      expect(Tok::Comma, ",");
      const double hi = parse_bound();
      bool closed;
      if (cur_.kind == Tok::RParen) {
        closed = false;
        advance();
      } else if (cur_.kind == Tok::RBracket) {
        closed = true;
        advance();
      } else {
        throw SyntaxError("expected guard terminator", cur_.offset,
                          {")", "]"});
      }
      expect(Tok::Colon, ":");
      ExprPtr body = parse_expr();
      pieces.push_back(Piece{lo, hi, closed, body});
      if (cur_.kind == Tok::Semicolon) {
        advance();
        continue;
      }
      expect(Tok::RBrace, "}");
      break;
    }
    validate_pieces(pieces, piece_offsets);
    return std::make_shared<Expr>(Expr{PiecewiseNode{std::move(pieces)}});
  }

  // Guards must tile an interval: ascending, contiguous, half-open except
  // the final closed piece.
  static void validate_pieces(const std::vector<Piece>& pieces,
                              const std::vector<std::size_t>& offsets) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (!std::isfinite(pieces[i].lo) || !std::isfinite(pieces[i].hi) ||
          !(pieces[i].lo < pieces[i].hi))
        throw SyntaxError("piecewise guard requires lo < hi", offsets[i],
                          {"guard with lo < hi"});
      const bool last = i + 1 == pieces.size();
      if (!last && pieces[i].closed_hi)
        throw SyntaxError("only the final piecewise guard may be closed",
                          offsets[i], {")"});
      if (last && !pieces[i].closed_hi)
        throw SyntaxError("the final piecewise guard must be closed",
                          offsets[i], {"]"});
      if (!last && pieces[i + 1].lo != pieces[i].hi)
        throw SyntaxError("piecewise guards must be contiguous",
                          offsets[i + 1], {"guard starting at previous hi"});
    }
  }

  Lexer lexer_;
  Token cur_{Tok::End, 0};
};

// ---------------------------------------------------------------------------
// Evaluation

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Abs: return "abs";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Sqrt: return "sqrt";
  }
  return "?";
}

const char* binary_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
  }
  return "?";
}

[[noreturn]] void throw_non_finite(const char* op, double x) {
  throw NonFiniteValue(std::string("non-finite result of '") + op +
                       "' at x = " + format_double(x));
}

double eval_node(const Expr& e, double x) {
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return x;
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          const double v = eval_node(*node.operand, x);
          double r = 0.0;
          switch (node.op) {
            case UnaryOp::Neg: r = -v; break;
            case UnaryOp::Abs: r = std::fabs(v); break;
            case UnaryOp::Exp: r = std::exp(v); break;
            case UnaryOp::Ln: r = std::log(v); break;
            case UnaryOp::Sqrt: r = std::sqrt(v); break;
          }
          if (!std::isfinite(r)) throw_non_finite(unary_name(node.op), x);
          return r;
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          const double a = eval_node(*node.lhs, x);
          const double b = eval_node(*node.rhs, x);
          double r = 0.0;
          switch (node.op) {
            case BinaryOp::Add: r = a + b; break;
            case BinaryOp::Sub: r = a - b; break;
            case BinaryOp::Mul: r = a * b; break;
            case BinaryOp::Div: r = a / b; break;
            case BinaryOp::Pow: r = std::pow(a, b); break;
          }
          if (!std::isfinite(r)) throw_non_finite(binary_name(node.op), x);
          return r;
        } else {
          static_assert(std::is_same_v<T, PiecewiseNode>);
          for (const Piece& p : node.pieces) {
            const bool in = x >= p.lo && (p.closed_hi ? x <= p.hi : x < p.hi);
            if (in) return eval_node(*p.body, x);
          }
          throw OutOfDomain(x);
        }
      },
      e.node);
}

// ---------------------------------------------------------------------------
// Printing
//
// Precedence ladder used for minimal parenthesisation: additive 1,
// multiplicative 2, unary minus 3, power 4, atom 5. A negative constant
// prints with a leading minus, so it carries unary precedence.

int print_precedence(const Expr& e) {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return std::signbit(node.value) ? 3 : 5;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return 5;
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          return node.op == UnaryOp::Neg ? 3 : 5;
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          switch (node.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub: return 1;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 2;
            case BinaryOp::Pow: return 4;
          }
          return 5;
        } else {
          return 5;
        }
      },
      e.node);
}

void print_node(const Expr& e, int min_prec, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
  if (print_precedence(child) < min_prec) {
    out += '(';
    print_node(child, 0, out);
    out += ')';
  } else {
    print_node(child, 0, out);
  }
}

void print_node(const Expr& e, int /*min_prec*/, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          out += format_double(node.value);
        } else if constexpr (std::is_same_v<T, VarNode>) {
          out += 'x';
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          if (node.op == UnaryOp::Neg) {
            out += '-';
            print_child(*node.operand, 3, out);
          } else {
            out += unary_name(node.op);
            out += '(';
            print_node(*node.operand, 0, out);
            out += ')';
          }
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          const int prec = print_precedence(e);
          if (node.op == BinaryOp::Pow) {
            print_child(*node.lhs, 5, out);
            out += '^';
            print_child(*node.rhs, 3, out);
          } else {
            print_child(*node.lhs, prec, out);
            out += binary_name(node.op);
            print_child(*node.rhs, prec + 1, out);
          }
        } else {
          static_assert(std::is_same_v<T, PiecewiseNode>);
          out += "piecewise{";
          for (std::size_t i = 0; i < node.pieces.size(); ++i) {
            const Piece& p = node.pieces[i];
            if (i > 0) out += "; ";
            out += '[';
            out += format_double(p.lo);
            out += ',';
            out += format_double(p.hi);
            out += p.closed_hi ? ']' : ')';
            out += ": ";
            print_node(*p.body, 0, out);
          }
          out += '}';
        }
      },
      e.node);
}

bool equal_node(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, ConstNode>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, UnaryNode>) {
          return na.op == nb.op && equal_node(*na.operand, *nb.operand);
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          return na.op == nb.op && equal_node(*na.lhs, *nb.lhs) &&
                 equal_node(*na.rhs, *nb.rhs);
        } else {
          static_assert(std::is_same_v<T, PiecewiseNode>);
          if (na.pieces.size() != nb.pieces.size()) return false;
          for (std::size_t i = 0; i < na.pieces.size(); ++i) {
            const Piece& pa = na.pieces[i];
            const Piece& pb = nb.pieces[i];
            if (pa.lo != pb.lo || pa.hi != pb.hi ||
                pa.closed_hi != pb.closed_hi ||
                !equal_node(*pa.body, *pb.body))
              return false;
          }
          return true;
        }
      },
      a.node);
}

}  // namespace

FunctionExpr::FunctionExpr(ExprPtr root) : root_(std::move(root)) {
  assert(root_ != nullptr);
}

double FunctionExpr::operator()(double x) const { return evaluate(*this, x); }

FunctionExpr parse(std::string_view text) {
  if (text.empty())
    throw SyntaxError("empty expression", 0, kAtomExpected);
  Parser parser(text);
  return FunctionExpr(parser.parse_document());
}

double evaluate(const FunctionExpr& f, double x) {
  if (!std::isfinite(x))
    throw NonFiniteValue("evaluation input x is not finite");
  return eval_node(f.root(), x);
}

std::string pretty_print(const FunctionExpr& f) {
  std::string out;
  print_node(f.root(), 0, out);
  return out;
}

bool structurally_equal(const FunctionExpr& lhs, const FunctionExpr& rhs) {
  return equal_node(lhs.root(), rhs.root());
}

FunctionExpr constant(double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("constant must be finite");
  return FunctionExpr(make_const(value));
}

FunctionExpr variable() {
  return FunctionExpr(std::make_shared<Expr>(Expr{VarNode{}}));
}

FunctionExpr unary(UnaryOp op, const FunctionExpr& operand) {
  if (op == UnaryOp::Neg) {
    if (const auto* c = std::get_if<ConstNode>(&operand.root().node))
      return constant(-c->value);
  }
  return FunctionExpr(
      std::make_shared<Expr>(Expr{UnaryNode{op, operand.root_ptr()}}));
}

FunctionExpr binary(BinaryOp op, const FunctionExpr& lhs,
                    const FunctionExpr& rhs) {
  return FunctionExpr(std::make_shared<Expr>(
      Expr{BinaryNode{op, lhs.root_ptr(), rhs.root_ptr()}}));
}

FunctionExpr operator+(const FunctionExpr& lhs, const FunctionExpr& rhs) {
  return binary(BinaryOp::Add, lhs, rhs);
}

FunctionExpr operator-(const FunctionExpr& lhs, const FunctionExpr& rhs) {
  return binary(BinaryOp::Sub, lhs, rhs);
}

FunctionExpr operator*(const FunctionExpr& lhs, const FunctionExpr& rhs) {
  return binary(BinaryOp::Mul, lhs, rhs);
}

FunctionExpr operator*(double scale, const FunctionExpr& f) {
  return binary(BinaryOp::Mul, constant(scale), f);
}

FunctionExpr operator/(const FunctionExpr& f, double divisor) {
  return binary(BinaryOp::Div, f, constant(divisor));
}

FunctionExpr operator-(const FunctionExpr& f) {
  return unary(UnaryOp::Neg, f);
}

}  // namespace convdom
