#include "syngauntlet/prediction.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "syngauntlet/error.hpp"
#include "syngauntlet/utf8.hpp"

namespace syngauntlet {

// --- structural equality ----------------------------------------------------

bool operator==(const ArithExpr& a, const ArithExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* t = std::get_if<Target>(&a.node)) return *t == std::get<Target>(b.node);
  if (const auto* l = std::get_if<Literal>(&a.node)) return *l == std::get<Literal>(b.node);
  const auto& x = std::get<ArithBinary>(a.node);
  const auto& y = std::get<ArithBinary>(b.node);
  return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* c = std::get_if<Comparison>(&a.node)) {
    const auto& d = std::get<Comparison>(b.node);
    return c->op == d.op && c->lhs == d.lhs && c->rhs == d.rhs;
  }
  const auto& x = std::get<BoolBinary>(a.node);
  const auto& y = std::get<BoolBinary>(b.node);
  return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
}

// --- builders ---------------------------------------------------------------

ArithExpr target(int region, std::string condition) { return ArithExpr{Target{region, std::move(condition)}}; }
ArithExpr literal(double value) { return ArithExpr{Literal{value}}; }

namespace {

ArithExpr arith_binary(ArithOp op, ArithExpr lhs, ArithExpr rhs) {
  return ArithExpr{ArithBinary{op, std::make_shared<const ArithExpr>(std::move(lhs)),
                               std::make_shared<const ArithExpr>(std::move(rhs))}};
}

Formula bool_binary(BoolOp op, Formula lhs, Formula rhs) {
  return Formula{BoolBinary{op, std::make_shared<const Formula>(std::move(lhs)),
                            std::make_shared<const Formula>(std::move(rhs))}};
}

}  // namespace

ArithExpr operator+(ArithExpr lhs, ArithExpr rhs) { return arith_binary(ArithOp::Add, std::move(lhs), std::move(rhs)); }
ArithExpr operator-(ArithExpr lhs, ArithExpr rhs) { return arith_binary(ArithOp::Sub, std::move(lhs), std::move(rhs)); }
Formula operator<(ArithExpr lhs, ArithExpr rhs) { return Formula{Comparison{CmpOp::Less, std::move(lhs), std::move(rhs)}}; }
Formula operator>(ArithExpr lhs, ArithExpr rhs) {
  return Formula{Comparison{CmpOp::Greater, std::move(lhs), std::move(rhs)}};
}
Formula operator&&(Formula lhs, Formula rhs) { return bool_binary(BoolOp::And, std::move(lhs), std::move(rhs)); }
Formula operator||(Formula lhs, Formula rhs) { return bool_binary(BoolOp::Or, std::move(lhs), std::move(rhs)); }

// --- lexer ------------------------------------------------------------------

namespace {

enum class Tok { LParen, RParen, Semicolon, Plus, Minus, Less, Greater, Amp, Pipe, Number, Ident, End };

struct Token {
  Tok kind;
  std::size_t column;  // 1-based
  std::string text;
};

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semicolon: return "';'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_ident_start(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'_'; }
bool is_ident_char(char32_t c) { return is_ident_start(c) || is_digit(c) || c == U'-'; }

// Identifiers may contain '-' (e.g. "sub_no-matrix"), so they are lexed only
// where the grammar expects one: right after "(" INT ";".
class Lexer {
 public:
  explicit Lexer(std::u32string chars) : chars_(std::move(chars)) {}

  Token next(bool want_ident) {
    while (pos_ < chars_.size() && utf8::is_space(chars_[pos_])) ++pos_;
    const std::size_t col = pos_ + 1;
    if (pos_ >= chars_.size()) return {Tok::End, col, {}};
    const char32_t c = chars_[pos_];
    if (want_ident && is_ident_start(c)) {
      std::string text;
      while (pos_ < chars_.size() && is_ident_char(chars_[pos_])) text.push_back(static_cast<char>(chars_[pos_++]));
      return {Tok::Ident, col, std::move(text)};
    }
    if (is_digit(c) || (c == U'.' && pos_ + 1 < chars_.size() && is_digit(chars_[pos_ + 1]))) return number(col);
    ++pos_;
    switch (c) {
      case U'(': return {Tok::LParen, col, "("};
      case U')': return {Tok::RParen, col, ")"};
      case U';': return {Tok::Semicolon, col, ";"};
      case U'+': return {Tok::Plus, col, "+"};
      case U'-': return {Tok::Minus, col, "-"};
      case U'<': return {Tok::Less, col, "<"};
      case U'>': return {Tok::Greater, col, ">"};
      case U'&': return {Tok::Amp, col, "&"};
      case U'|': return {Tok::Pipe, col, "|"};
      default: break;
    }
    if (is_ident_start(c)) throw ParseError(col, "identifier outside a region target");
    throw ParseError(col, "unexpected character '" + utf8::encode(std::u32string(1, c)) + "'");
  }

  std::size_t position() const noexcept { return pos_; }
  void reset(std::size_t pos) noexcept { pos_ = pos; }

 private:
  Token number(std::size_t col) {
    std::string text;
    auto digits = [&] {
      while (pos_ < chars_.size() && is_digit(chars_[pos_])) text.push_back(static_cast<char>(chars_[pos_++]));
    };
    digits();
    if (pos_ < chars_.size() && chars_[pos_] == U'.') {
      text.push_back('.');
      ++pos_;
      if (pos_ >= chars_.size() || !is_digit(chars_[pos_])) throw ParseError(pos_ + 1, "digit expected after '.'");
      digits();
    }
    if (pos_ < chars_.size() && (chars_[pos_] == U'e' || chars_[pos_] == U'E')) {
      text.push_back('e');
      ++pos_;
      if (pos_ < chars_.size() && (chars_[pos_] == U'+' || chars_[pos_] == U'-')) {
        text.push_back(static_cast<char>(chars_[pos_++]));
      }
      if (pos_ >= chars_.size() || !is_digit(chars_[pos_])) throw ParseError(pos_ + 1, "digit expected in exponent");
      digits();
    }
    return {Tok::Number, col, std::move(text)};
  }

  std::u32string chars_;
  std::size_t pos_ = 0;
};

// --- parser -----------------------------------------------------------------

// Parenthesised groups are ambiguous between arithmetic and boolean content,
// so the parser builds an untyped tree and checks types as it combines nodes.
using Expr = std::variant<ArithExpr, Formula>;

class Parser {
 public:
  explicit Parser(std::u32string chars) : lexer_(std::move(chars)) { advance(); }

  Formula parse() {
    const std::size_t col = tok_.column;
    Expr e = parse_or();
    if (tok_.kind != Tok::End) throw ParseError(tok_.column, std::string("unexpected ") + describe(tok_.kind));
    if (!std::holds_alternative<Formula>(e)) throw ParseError(col, "prediction must be a comparison, not arithmetic");
    return std::get<Formula>(std::move(e));
  }

 private:
  void advance(bool want_ident = false) { tok_ = lexer_.next(want_ident); }

  void expect(Tok kind, bool want_ident_after = false) {
    if (tok_.kind != kind) {
      throw ParseError(tok_.column, std::string("expected ") + describe(kind) + ", found " + describe(tok_.kind));
    }
    advance(want_ident_after);
  }

  static Formula as_formula(Expr e, std::size_t col, const char* op) {
    if (auto* f = std::get_if<Formula>(&e)) return std::move(*f);
    throw ParseError(col, std::string("operand of '") + op + "' must be a comparison");
  }

  static ArithExpr as_arith(Expr e, std::size_t col, const char* op) {
    if (auto* a = std::get_if<ArithExpr>(&e)) return std::move(*a);
    throw ParseError(col, std::string("operand of '") + op + "' must be arithmetic");
  }

  Expr parse_or() {
    std::size_t col = tok_.column;
    Expr lhs = parse_and();
    while (tok_.kind == Tok::Pipe) {
      advance();
      const std::size_t rcol = tok_.column;
      Expr rhs = parse_and();
      lhs = as_formula(std::move(lhs), col, "|") || as_formula(std::move(rhs), rcol, "|");
    }
    return lhs;
  }

  Expr parse_and() {
    std::size_t col = tok_.column;
    Expr lhs = parse_cmp();
    while (tok_.kind == Tok::Amp) {
      advance();
      const std::size_t rcol = tok_.column;
      Expr rhs = parse_cmp();
      lhs = as_formula(std::move(lhs), col, "&") && as_formula(std::move(rhs), rcol, "&");
    }
    return lhs;
  }

  Expr parse_cmp() {
    const std::size_t col = tok_.column;
    Expr lhs = parse_additive();
    if (tok_.kind != Tok::Less && tok_.kind != Tok::Greater) return lhs;
    const Tok op = tok_.kind;
    const char* sym = op == Tok::Less ? "<" : ">";
    advance();
    const std::size_t rcol = tok_.column;
    Expr rhs = parse_additive();
    ArithExpr l = as_arith(std::move(lhs), col, sym);
    ArithExpr r = as_arith(std::move(rhs), rcol, sym);
    if (tok_.kind == Tok::Less || tok_.kind == Tok::Greater) {
      throw ParseError(tok_.column, "comparisons do not chain");
    }
    return op == Tok::Less ? (std::move(l) < std::move(r)) : (std::move(l) > std::move(r));
  }

  Expr parse_additive() {
    const std::size_t col = tok_.column;
    Expr lhs = parse_primary();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const Tok op = tok_.kind;
      const char* sym = op == Tok::Plus ? "+" : "-";
      advance();
      const std::size_t rcol = tok_.column;
      Expr rhs = parse_primary();
      ArithExpr l = as_arith(std::move(lhs), col, sym);
      ArithExpr r = as_arith(std::move(rhs), rcol, sym);
      lhs = op == Tok::Plus ? std::move(l) + std::move(r) : std::move(l) - std::move(r);
    }
    return lhs;
  }

  Expr parse_primary() {
    if (tok_.kind == Tok::Number) {
      double value = 0.0;
      const auto& text = tok_.text;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError(tok_.column, "invalid number '" + text + "'");
      }
      advance();
      return literal(value);
    }
    if (tok_.kind != Tok::LParen) {
      throw ParseError(tok_.column, std::string("expected '(' or number, found ") + describe(tok_.kind));
    }
    // "(" INT ";" starts a target; anything else is a group.
    const std::size_t saved = lexer_.position();
    const Token open = tok_;
    advance();
    if (tok_.kind == Tok::Number) {
      const Token num = tok_;
      advance();
      if (tok_.kind == Tok::Semicolon) return parse_target_rest(num);
      lexer_.reset(saved);
      tok_ = open;
      advance();
    }
    Expr inner = parse_or();
    expect(Tok::RParen);
    return inner;
  }

  // Called with the region number consumed and the ';' current.
  Expr parse_target_rest(const Token& num) {
    const auto& text = num.text;
    int region = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), region);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError(num.column, "region index must be an integer");
    }
    if (region < 1) throw ParseError(num.column, "region index must be at least 1");
    advance(/*want_ident=*/true);
    if (tok_.kind != Tok::Ident) {
      throw ParseError(tok_.column, std::string("expected condition name, found ") + describe(tok_.kind));
    }
    std::string condition = tok_.text;
    advance();
    expect(Tok::RParen);
    return target(region, std::move(condition));
  }

  Lexer lexer_;
  Token tok_{Tok::End, 1, {}};
};

}  // namespace

PredictionAst parse_prediction(std::string_view source) {
  std::u32string chars;
  try {
    chars = utf8::decode(source);
  } catch (const std::invalid_argument&) {
    throw ParseError(1, "prediction is not valid UTF-8");
  }
  return Parser(std::move(chars)).parse();
}

// --- printing ---------------------------------------------------------------

namespace {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

void print(const ArithExpr& expr, std::string& out) {
  if (const auto* t = std::get_if<Target>(&expr.node)) {
    out += "(" + std::to_string(t->region) + ";" + t->condition + ")";
  } else if (const auto* l = std::get_if<Literal>(&expr.node)) {
    out += format_number(l->value);
  } else {
    const auto& b = std::get<ArithBinary>(expr.node);
    print(*b.lhs, out);
    out += b.op == ArithOp::Add ? " + " : " - ";
    const bool group = std::holds_alternative<ArithBinary>(b.rhs->node);
    if (group) out += "(";
    print(*b.rhs, out);
    if (group) out += ")";
  }
}

void print(const Formula& formula, std::string& out) {
  if (const auto* c = std::get_if<Comparison>(&formula.node)) {
    print(c->lhs, out);
    out += c->op == CmpOp::Less ? " < " : " > ";
    print(c->rhs, out);
    return;
  }
  const auto& b = std::get<BoolBinary>(formula.node);
  auto needs_group = [&](const Formula& child, bool right) {
    const auto* cb = std::get_if<BoolBinary>(&child.node);
    if (!cb) return false;
    if (b.op == BoolOp::And) return cb->op == BoolOp::Or || right;
    return right && cb->op == BoolOp::Or;
  };
  const bool gl = needs_group(*b.lhs, false);
  const bool gr = needs_group(*b.rhs, true);
  if (gl) out += "(";
  print(*b.lhs, out);
  if (gl) out += ")";
  out += b.op == BoolOp::And ? " & " : " | ";
  if (gr) out += "(";
  print(*b.rhs, out);
  if (gr) out += ")";
}

void collect(const ArithExpr& expr, std::set<Target>& out) {
  if (const auto* t = std::get_if<Target>(&expr.node)) {
    out.insert(*t);
  } else if (const auto* b = std::get_if<ArithBinary>(&expr.node)) {
    collect(*b->lhs, out);
    collect(*b->rhs, out);
  }
}

void collect(const Formula& formula, std::set<Target>& out) {
  if (const auto* c = std::get_if<Comparison>(&formula.node)) {
    collect(c->lhs, out);
    collect(c->rhs, out);
  } else {
    const auto& b = std::get<BoolBinary>(formula.node);
    collect(*b.lhs, out);
    collect(*b.rhs, out);
  }
}

}  // namespace

std::string to_string(const PredictionAst& ast) {
  std::string out;
  print(ast, out);
  return out;
}

std::string to_string(const ArithExpr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::set<Target> referenced_targets(const PredictionAst& ast) {
  std::set<Target> out;
  collect(ast, out);
  return out;
}

// --- evaluation -------------------------------------------------------------

std::optional<double> SurprisalTable::get(const std::string& condition, int region) const {
  auto it = values_.find({condition, region});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double SurprisalTable::at(const std::string& condition, int region) const {
  auto it = values_.find({condition, region});
  if (it == values_.end()) throw MissingTargetError(region, condition);
  return it->second;
}

SurprisalTable SurprisalTable::scaled(double factor) const {
  SurprisalTable out;
  for (const auto& [key, value] : values_) out.values_[key] = value * factor;
  return out;
}

double evaluate_arith(const ArithExpr& expr, const SurprisalTable& table) {
  if (const auto* t = std::get_if<Target>(&expr.node)) return table.at(t->condition, t->region);
  if (const auto* l = std::get_if<Literal>(&expr.node)) return l->value;
  const auto& b = std::get<ArithBinary>(expr.node);
  const double lhs = evaluate_arith(*b.lhs, table);
  const double rhs = evaluate_arith(*b.rhs, table);
  return b.op == ArithOp::Add ? lhs + rhs : lhs - rhs;
}

bool evaluate_prediction(const PredictionAst& ast, const SurprisalTable& table) {
  if (const auto* c = std::get_if<Comparison>(&ast.node)) {
    const double lhs = evaluate_arith(c->lhs, table);
    const double rhs = evaluate_arith(c->rhs, table);
    return c->op == CmpOp::Less ? lhs < rhs : lhs > rhs;
  }
  const auto& b = std::get<BoolBinary>(ast.node);
  const bool lhs = evaluate_prediction(*b.lhs, table);
  const bool rhs = evaluate_prediction(*b.rhs, table);
  return b.op == BoolOp::And ? (lhs && rhs) : (lhs || rhs);
}

}  // namespace syngauntlet
