#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "convdom/errors.hpp"

namespace convdom {

enum class UnaryOp { Neg, Abs, Exp, Ln, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// One guard of a piecewise expression: [lo, hi) for every piece except the
/// last, which is closed [lo, hi]. Guards are contiguous and ascending.
struct Piece {
  double lo;
  double hi;
  bool closed_hi;
  ExprPtr body;
};

struct ConstNode {
  double value;
};
struct VarNode {};
struct UnaryNode {
  UnaryOp op;
  ExprPtr operand;
};
struct BinaryNode {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct PiecewiseNode {
  std::vector<Piece> pieces;
};

struct Expr {
  std::variant<ConstNode, VarNode, UnaryNode, BinaryNode, PiecewiseNode> node;
};

/// A real-valued function of one real variable, held as an immutable
/// expression tree. Nodes are never mutated after construction, so values
/// may be copied and evaluated concurrently from any number of threads.
///
/// Expression grammar (whitespace insignificant, identifiers case-sensitive):
///
///   expr      = term { ("+" | "-") term }
///   term      = factor { ("*" | "/") factor }
///   factor    = "-" factor | power
///   power     = atom [ "^" factor ]                      (right-associative)
///   atom      = number | "x" | "pi" | "e"
///             | ("abs" | "exp" | "ln" | "sqrt") "(" expr ")"
///             | "(" expr ")" | piecewise
///   piecewise = "piecewise" "{" piece { ";" piece } "}"
///   piece     = "[" bound "," bound (")" | "]") ":" expr
///   bound     = [ "-" ] number
///
/// "^" binds above "*" "/", which bind above "+" "-"; unary minus binds
/// tighter than binary minus but looser than "^" (so -x^2 = -(x^2)).
class FunctionExpr {
 public:
  explicit FunctionExpr(ExprPtr root);

  const Expr& root() const { return *root_; }
  const ExprPtr& root_ptr() const { return root_; }

  /// Evaluates at x. Throws NonFiniteValue if any intermediate result is
  /// infinite or undefined, OutOfDomain if no piecewise guard covers the
  /// input of a piecewise subexpression.
  double operator()(double x) const;

 private:
  ExprPtr root_;
};

/// Parses expression text. Throws SyntaxError (with byte offset and
/// expected-token set) or UnknownIdentifier.
FunctionExpr parse(std::string_view text);

double evaluate(const FunctionExpr& f, double x);

/// Renders the tree so that parse(pretty_print(f)) is structurally
/// identical to f for any f produced by parse or by the builders below.
std::string pretty_print(const FunctionExpr& f);

/// Structural identity; constants compare by value.
bool structurally_equal(const FunctionExpr& lhs, const FunctionExpr& rhs);

// Builders. Negation of a constant folds to a negative constant, matching
// what the parser produces for a minus sign in front of a literal.
FunctionExpr constant(double value);
FunctionExpr variable();
FunctionExpr unary(UnaryOp op, const FunctionExpr& operand);
FunctionExpr binary(BinaryOp op, const FunctionExpr& lhs,
                    const FunctionExpr& rhs);

FunctionExpr operator+(const FunctionExpr& lhs, const FunctionExpr& rhs);
FunctionExpr operator-(const FunctionExpr& lhs, const FunctionExpr& rhs);
FunctionExpr operator*(const FunctionExpr& lhs, const FunctionExpr& rhs);
FunctionExpr operator*(double scale, const FunctionExpr& f);
FunctionExpr operator/(const FunctionExpr& f, double divisor);
FunctionExpr operator-(const FunctionExpr& f);

}  // namespace convdom
