#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

// Prediction formulas: strict comparisons of summed region surprisals across
// conditions, joined with & and |.
//
// Concrete syntax:
//   target  := "(" INT ";" IDENT ")"
//   arith   := target | NUMBER | arith ("+"|"-") arith | "(" arith ")"
//   cmp     := arith ("<"|">") arith
//   formula := cmp | formula "&" formula | formula "|" formula | "(" formula ")"
// Precedence (tightest first): + -, < >, &, |. Binary operators associate left.
namespace syngauntlet {

struct Target {
  int region = 0;  // 1-based
  std::string condition;

  auto operator<=>(const Target&) const = default;
};

struct Literal {
  double value = 0.0;  // bits

  bool operator==(const Literal&) const = default;
};

enum class ArithOp { Add, Sub };
enum class CmpOp { Less, Greater };
enum class BoolOp { And, Or };

struct ArithExpr;

struct ArithBinary {
  ArithOp op;
  std::shared_ptr<const ArithExpr> lhs;
  std::shared_ptr<const ArithExpr> rhs;
};

struct ArithExpr {
  std::variant<Target, Literal, ArithBinary> node;
};

struct Comparison {
  CmpOp op;
  ArithExpr lhs;
  ArithExpr rhs;
};

struct Formula;

struct BoolBinary {
  BoolOp op;
  std::shared_ptr<const Formula> lhs;
  std::shared_ptr<const Formula> rhs;
};

/// Boolean-valued formula; the root of every parsed prediction.
struct Formula {
  std::variant<Comparison, BoolBinary> node;
};

using PredictionAst = Formula;

bool operator==(const ArithExpr& a, const ArithExpr& b);
bool operator==(const Formula& a, const Formula& b);

// Builders, mostly for tests and the suite generators.
ArithExpr target(int region, std::string condition);
ArithExpr literal(double value);
ArithExpr operator+(ArithExpr lhs, ArithExpr rhs);
ArithExpr operator-(ArithExpr lhs, ArithExpr rhs);
Formula operator<(ArithExpr lhs, ArithExpr rhs);
Formula operator>(ArithExpr lhs, ArithExpr rhs);
Formula operator&&(Formula lhs, Formula rhs);
Formula operator||(Formula lhs, Formula rhs);

/// Throws ParseError carrying the 1-based column of the first offending character.
PredictionAst parse_prediction(std::string_view source);

/// Canonical text; parse_prediction(to_string(ast)) == ast.
std::string to_string(const PredictionAst& ast);
std::string to_string(const ArithExpr& expr);

std::set<Target> referenced_targets(const PredictionAst& ast);

/// Summed surprisal (bits) per (condition, region) for one item.
class SurprisalTable {
 public:
  void set(const std::string& condition, int region, double bits) { values_[{condition, region}] = bits; }

  std::optional<double> get(const std::string& condition, int region) const;
  /// Throws MissingTargetError.
  double at(const std::string& condition, int region) const;

  std::size_t size() const noexcept { return values_.size(); }
  const std::map<std::pair<std::string, int>, double>& entries() const noexcept { return values_; }

  /// Every entry multiplied by `factor`.
  SurprisalTable scaled(double factor) const;

  bool operator==(const SurprisalTable&) const = default;

 private:
  std::map<std::pair<std::string, int>, double> values_;
};

/// Strict comparisons, no epsilon. Both sides of & and | are always evaluated.
/// Throws MissingTargetError.
bool evaluate_prediction(const PredictionAst& ast, const SurprisalTable& table);
double evaluate_arith(const ArithExpr& expr, const SurprisalTable& table);

}  // namespace syngauntlet
