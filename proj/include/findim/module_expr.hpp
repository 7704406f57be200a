#pragma once

// Module expressions:
//
//   expr   := sum
//   sum    := factor ("+" factor)*
//   factor := "omega^" int "(" expr ")" | atom
//   atom   := ("S"|"P"|"D"|"Q") "(" int ")" | "radq(" int ")" | ident "(" args ")"
//
// Named atoms: theta(i), K(i), Qsum(), mt(t) (ex54 only).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "findim/strat.hpp"

namespace findim {

struct ModuleExpr {
  enum class Kind { Sum, Omega, Simple, Projective, Standard, EpssQ, RadQ, Named };

  Kind kind = Kind::Sum;
  int k = 0;                       // index, radical power or syzygy power
  std::string name;                // Named
  std::vector<std::int64_t> args;  // Named
  std::vector<ModuleExpr> children;

  bool operator==(const ModuleExpr&) const = default;
};

/// Throws ParseError with the column of the offending character.
ModuleExpr parse_module_expr(std::string_view text);
std::string render_module_expr(const ModuleExpr& expr);

struct EvalContext {
  AlgebraPtr algebra;
  const StratSystem* system = nullptr;
  const Epss* epss = nullptr;
  std::string corpus_name;  // enables mt(t) when "ex54"
};

/// Throws IndexError, MissingContext or ParseError (unknown name).
Module eval_module_expr(const ModuleExpr& expr, const EvalContext& context);
Module eval_module_expr(std::string_view text, const EvalContext& context);

}  // namespace findim
