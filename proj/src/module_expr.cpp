#include "findim/module_expr.hpp"

#include <cctype>
#include <charconv>

#include "findim/corpus.hpp"
#include "findim/error.hpp"

namespace findim {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ModuleExpr parse() {
    ModuleExpr e = sum();
    skip();
    if (pos_ != text_.size()) fail("'+' or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw Error(ErrorCode::ParseError, "column " + std::to_string(pos_ + 1) + ": expected " + expected);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      if (pos_ == start && std::isdigit(static_cast<unsigned char>(text_[pos_]))) break;
      ++pos_;
    }
    if (pos_ == start) fail("a module name");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::int64_t integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("an integer");
    }
    return v;
  }
  int small_int() {
    const std::size_t start = pos_;
    const std::int64_t v = integer();
    if (v < 0 || v > 1000000) {
      pos_ = start;
      fail("a nonnegative integer");
    }
    return static_cast<int>(v);
  }

  ModuleExpr sum() {
    ModuleExpr first = factor();
    if (!accept('+')) return first;
    ModuleExpr out;
    out.kind = ModuleExpr::Kind::Sum;
    out.children.push_back(std::move(first));
    do {
      out.children.push_back(factor());
    } while (accept('+'));
    return out;
  }

  ModuleExpr factor() {
    const std::string name = ident();
    ModuleExpr out;
    if (name == "omega") {
      expect('^');
      out.kind = ModuleExpr::Kind::Omega;
      out.k = small_int();
      expect('(');
      out.children.push_back(sum());
      expect(')');
      return out;
    }
    expect('(');
    if (name == "S" || name == "P" || name == "D" || name == "Q" || name == "radq") {
      out.kind = name == "S"   ? ModuleExpr::Kind::Simple
                 : name == "P" ? ModuleExpr::Kind::Projective
                 : name == "D" ? ModuleExpr::Kind::Standard
                 : name == "Q" ? ModuleExpr::Kind::EpssQ
                               : ModuleExpr::Kind::RadQ;
      out.k = small_int();
      expect(')');
      return out;
    }
    out.kind = ModuleExpr::Kind::Named;
    out.name = name;
    if (!accept(')')) {
      do {
        out.args.push_back(integer());
      } while (accept(','));
      expect(')');
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int index_in(int i, std::size_t n, const std::string& what) {
  if (i < 1 || static_cast<std::size_t>(i) > n) {
    throw Error(ErrorCode::IndexError, what + "(" + std::to_string(i) + ") out of range 1.." + std::to_string(n));
  }
  return i;
}

int single_arg(const ModuleExpr& e) {
  if (e.args.size() != 1) throw Error(ErrorCode::ParseError, e.name + " takes one argument");
  return static_cast<int>(e.args.front());
}

Module eval(const ModuleExpr& e, const EvalContext& ctx) {
  const AlgebraPtr& alg = ctx.algebra;
  const auto n = static_cast<std::size_t>(alg->vertex_count());
  switch (e.kind) {
    case ModuleExpr::Kind::Sum: {
      std::vector<Module> parts;
      for (const auto& c : e.children) parts.push_back(eval(c, ctx));
      return direct_sum(parts, alg);
    }
    case ModuleExpr::Kind::Omega:
      return syzygy(eval(e.children.front(), ctx), e.k);
    case ModuleExpr::Kind::Simple:
      return simple(alg, index_in(e.k, n, "S"));
    case ModuleExpr::Kind::Projective:
      return projective(alg, index_in(e.k, n, "P"));
    case ModuleExpr::Kind::Standard:
      index_in(e.k, n, "D");
      return standard_modules(alg)[static_cast<std::size_t>(e.k - 1)];
    case ModuleExpr::Kind::EpssQ:
      if (!ctx.epss) throw Error(ErrorCode::MissingContext, "Q(i) needs an Ext-projective system");
      index_in(e.k, ctx.epss->q.size(), "Q");
      return ctx.epss->q[static_cast<std::size_t>(e.k - 1)];
    case ModuleExpr::Kind::RadQ:
      if (e.k < 1) throw Error(ErrorCode::IndexError, "radq(k) needs k >= 1");
      return radical_power_quotient(alg, e.k);
    case ModuleExpr::Kind::Named:
      break;
  }
  if (e.name == "theta") {
    if (!ctx.system) throw Error(ErrorCode::MissingContext, "theta(i) needs a stratifying system");
    const int i = index_in(single_arg(e), ctx.system->size(), "theta");
    return ctx.system->at(i);
  }
  if (e.name == "K") {
    if (!ctx.epss) throw Error(ErrorCode::MissingContext, "K(i) needs an Ext-projective system");
    const int i = index_in(single_arg(e), ctx.epss->k.size(), "K");
    return ctx.epss->k[static_cast<std::size_t>(i - 1)];
  }
  if (e.name == "Qsum") {
    if (!ctx.epss) throw Error(ErrorCode::MissingContext, "Qsum() needs an Ext-projective system");
    if (!e.args.empty()) throw Error(ErrorCode::ParseError, "Qsum takes no arguments");
    return ctx.epss->q_sum;
  }
  if (e.name == "mt") {
    if (ctx.corpus_name != "ex54") throw Error(ErrorCode::MissingContext, "mt(t) is defined on ex54 only");
    const Scalar p = alg->prime();
    return corpus_mt(alg, reduce_mod(single_arg(e), p));
  }
  throw Error(ErrorCode::ParseError, "unknown module name '" + e.name + "'");
}

}  // namespace

ModuleExpr parse_module_expr(std::string_view text) { return Parser(text).parse(); }

std::string render_module_expr(const ModuleExpr& e) {
  switch (e.kind) {
    case ModuleExpr::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " + ";
        out += render_module_expr(e.children[i]);
      }
      return out;
    }
    case ModuleExpr::Kind::Omega:
      return "omega^" + std::to_string(e.k) + "(" + render_module_expr(e.children.front()) + ")";
    case ModuleExpr::Kind::Simple: return "S(" + std::to_string(e.k) + ")";
    case ModuleExpr::Kind::Projective: return "P(" + std::to_string(e.k) + ")";
    case ModuleExpr::Kind::Standard: return "D(" + std::to_string(e.k) + ")";
    case ModuleExpr::Kind::EpssQ: return "Q(" + std::to_string(e.k) + ")";
    case ModuleExpr::Kind::RadQ: return "radq(" + std::to_string(e.k) + ")";
    case ModuleExpr::Kind::Named: break;
  }
  std::string out = e.name + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e.args[i]);
  }
  return out + ")";
}

Module eval_module_expr(const ModuleExpr& expr, const EvalContext& context) {
  if (!context.algebra) throw Error(ErrorCode::MissingContext, "no algebra");
  return eval(expr, context).with_label(render_module_expr(expr));
}

Module eval_module_expr(std::string_view text, const EvalContext& context) {
  return eval_module_expr(parse_module_expr(text), context);
}

}  // namespace findim
