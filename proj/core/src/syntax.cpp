#include "scopedeq/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace scopedeq {
namespace {

enum class Tok { Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (ident_char(c) && c != '\'') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::string_view("()|,;.:=-").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_nat(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

struct SItem;

struct STerm {
  Token head;
  bool parens = false;
  bool semicolon = false;
  std::vector<Token> pargs;
  std::vector<SItem> items;
};

struct SItem {
  std::vector<Token> binders;
  STerm body;
};

bool bare(const SItem& item) { return item.binders.empty() && !item.body.parens; }

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool at_ident(std::size_t ahead = 0) const { return peek(ahead).kind == Tok::Ident; }
  bool at_keyword(std::string_view kw) const { return at_ident() && peek().text == kw; }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.line, t.col);
  }

  Token expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    return toks_[pos_++];
  }
  Token expect_ident(const char* what) {
    if (!at_ident()) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }
  std::size_t expect_nat() {
    if (!at_ident() || !is_nat(peek().text)) fail("expected a natural number");
    const Token& t = toks_[pos_++];
    try {
      return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::exception&) {
      throw ParseError("number out of range", t.line, t.col);
    }
  }

  STerm term() {
    STerm t;
    t.head = expect_ident("a term");
    if (!at_punct("(")) return t;
    ++pos_;
    t.parens = true;
    if (at_punct(")")) {
      ++pos_;
      return t;
    }
    t.items.push_back(item());
    while (true) {
      if (at_punct(",")) {
        ++pos_;
        t.items.push_back(item());
      } else if (at_punct(";")) {
        const Token& semi = peek();
        if (t.semicolon) throw ParseError("second ';' in argument list", semi.line, semi.col);
        ++pos_;
        t.semicolon = true;
        for (const SItem& it : t.items) {
          if (!bare(it)) {
            throw ParseError("parameters before ';' must be plain names", it.body.head.line,
                             it.body.head.col);
          }
          t.pargs.push_back(it.body.head);
        }
        t.items.clear();
        if (!at_punct(")")) t.items.push_back(item());
      } else {
        break;
      }
    }
    expect_punct(")");
    return t;
  }

  SItem item() {
    SItem it;
    std::size_t n = 0;
    while (at_ident(n)) ++n;
    if (n > 0 && at_punct(".", n)) {
      for (std::size_t j = 0; j < n; ++j) it.binders.push_back(toks_[pos_ + j]);
      pos_ += n + 1;
    }
    it.body = term();
    return it;
  }

  // comps "|" params; the "| params" part may be omitted.
  struct SContext {
    std::vector<Token> names;
    CompContext arities;
    std::vector<Token> params;
  };

  SContext context(bool before_turnstile) {
    SContext c;
    if (at_punct("-")) {
      ++pos_;
    } else if (at_ident()) {
      while (true) {
        c.names.push_back(expect_ident("a variable name"));
        expect_punct(":");
        c.arities.push_back(expect_nat());
        if (!at_punct(",")) break;
        ++pos_;
      }
    }
    if (!at_punct("|")) return c;
    // "x:0 |- t": the parameter part is omitted.
    if (before_turnstile && at_punct("-", 1) && !at_punct("|", 2)) return c;
    ++pos_;
    if (at_punct("-")) {
      ++pos_;
    } else {
      while (true) {
        c.params.push_back(expect_ident("a parameter name"));
        if (!at_punct(",")) break;
        ++pos_;
      }
    }
    return c;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

NamedContext to_named(const Parser::SContext& c) {
  NamedContext out;
  std::set<std::string> seen;
  for (const Token& t : c.names) {
    if (!seen.insert(t.text).second) {
      throw DisciplineError("variable `" + t.text + "` declared twice", t.line, t.col);
    }
    out.names.push_back(t.text);
  }
  out.arities = c.arities;
  std::set<std::string> pseen;
  for (const Token& t : c.params) {
    if (!pseen.insert(t.text).second) {
      throw DisciplineError("parameter `" + t.text + "` declared twice", t.line, t.col);
    }
    out.params.push_back(t.text);
  }
  return out;
}

class Resolver {
 public:
  Resolver(const Signature& sig, const NamedContext& ctx) : sig_(sig), ctx_(ctx) {}

  Term resolve(const STerm& t, const std::vector<std::string>& stack,
               const std::vector<std::string>& consumed) const {
    const std::string& name = t.head.text;
    auto vit = std::find(ctx_.names.begin(), ctx_.names.end(), name);
    const ParamArity* op = sig_.find(name);
    if (vit != ctx_.names.end() && op != nullptr) {
      err(t.head, "`" + name + "` is both a variable and an operation");
    }
    if (vit != ctx_.names.end()) {
      return resolve_var(t, static_cast<std::size_t>(vit - ctx_.names.begin()), stack, consumed);
    }
    if (op != nullptr) return resolve_op(t, *op, stack, consumed);
    if (std::find(stack.begin(), stack.end(), name) != stack.end()) {
      err(t.head, "parameter `" + name + "` used as a term");
    }
    err(t.head, "unknown identifier `" + name + "`");
  }

 private:
  [[noreturn]] static void err(const Token& at, const std::string& what) {
    throw DisciplineError(what, at.line, at.col);
  }

  // `given` must be exactly the top `given.size()` entries of the stack.
  static void check_params(const std::vector<Token>& given, const std::vector<std::string>& stack,
                           const std::vector<std::string>& consumed) {
    for (const Token& g : given) {
      if (std::find(stack.begin(), stack.end(), g.text) != stack.end()) continue;
      if (std::find(consumed.begin(), consumed.end(), g.text) != consumed.end()) {
        err(g, "parameter `" + g.text + "` already consumed");
      }
      err(g, "parameter `" + g.text + "` unbound");
    }
    std::size_t p = given.size();
    for (std::size_t j = 0; j < p; ++j) {
      const std::string& want = stack[stack.size() - p + j];
      if (given[j].text != want) {
        err(given[j], "parameter `" + given[j].text + "` used out of order (expected `" + want + "`)");
      }
    }
  }

  Term resolve_var(const STerm& t, std::size_t index, const std::vector<std::string>& stack,
                   const std::vector<std::string>& consumed) const {
    std::vector<Token> given;
    if (t.semicolon && !t.items.empty()) {
      err(t.head, "variable `" + t.head.text + "` takes parameters only");
    }
    given = t.pargs;
    for (const SItem& it : t.items) {
      if (!bare(it)) err(it.body.head, "variable `" + t.head.text + "` takes parameters only");
      given.push_back(it.body.head);
    }
    std::size_t m = ctx_.arities[index];
    for (const Token& g : given) {
      if (std::find(stack.begin(), stack.end(), g.text) == stack.end()) check_params({g}, stack, consumed);
    }
    if (stack.size() != m) {
      err(t.head, "variable `" + t.head.text + "` of arity " + std::to_string(m) + " used with " +
                      std::to_string(stack.size()) + " open parameter(s)");
    }
    if (given.size() != m) {
      err(t.head, "variable `" + t.head.text + "` expects " + std::to_string(m) +
                      " parameter(s), given " + std::to_string(given.size()));
    }
    check_params(given, stack, consumed);
    return Term::var(index);
  }

  Term resolve_op(const STerm& t, const ParamArity& ar, const std::vector<std::string>& stack,
                  const std::vector<std::string>& consumed) const {
    const std::string& name = t.head.text;
    std::vector<Token> pargs;
    std::vector<const SItem*> conts;
    if (t.semicolon) {
      pargs = t.pargs;
      for (const SItem& it : t.items) conts.push_back(&it);
    } else {
      std::size_t taken = 0;
      if (ar.params > 0) {
        for (const SItem& it : t.items) {
          if (taken == ar.params || !bare(it)) break;
          pargs.push_back(it.body.head);
          ++taken;
        }
      }
      for (std::size_t j = taken; j < t.items.size(); ++j) conts.push_back(&t.items[j]);
    }
    if (pargs.size() != ar.params) {
      err(t.head, "operation `" + name + "` expects " + std::to_string(ar.params) +
                      " parameter(s), given " + std::to_string(pargs.size()));
    }
    if (conts.size() != ar.continuations()) {
      err(t.head, "operation `" + name + "` expects " + std::to_string(ar.continuations()) +
                      " continuation(s), given " + std::to_string(conts.size()));
    }
    for (const Token& g : pargs) {
      if (std::find(stack.begin(), stack.end(), g.text) == stack.end()) check_params({g}, stack, consumed);
    }
    if (stack.size() < ar.params) {
      err(t.head, "operation `" + name + "` needs " + std::to_string(ar.params) +
                      " open parameter(s), " + std::to_string(stack.size()) + " available");
    }
    check_params(pargs, stack, consumed);

    std::vector<std::string> base(stack.begin(), stack.end() - static_cast<std::ptrdiff_t>(ar.params));
    std::vector<std::string> used = consumed;
    for (const Token& g : pargs) used.push_back(g.text);

    std::vector<Term> out;
    for (std::size_t i = 0; i < conts.size(); ++i) {
      const SItem& it = *conts[i];
      if (it.binders.size() != ar.binders[i]) {
        err(it.binders.empty() ? it.body.head : it.binders.front(),
            "continuation " + std::to_string(i + 1) + " of `" + name + "` binds " +
                std::to_string(ar.binders[i]) + " parameter(s), given " + std::to_string(it.binders.size()));
      }
      std::vector<std::string> inner = base;
      std::vector<std::string> inner_used = used;
      for (const Token& b : it.binders) {
        if (std::find(inner.begin(), inner.end(), b.text) != inner.end()) {
          err(b, "parameter `" + b.text + "` shadows an open parameter");
        }
        inner.push_back(b.text);
        std::erase(inner_used, b.text);
      }
      out.push_back(resolve(it.body, inner, inner_used));
    }
    return Term::app(name, std::move(out));
  }

  const Signature& sig_;
  const NamedContext& ctx_;
};

// Stack position -> printable name, avoiding clashes with variables and operations.
class ParamNamer {
 public:
  ParamNamer(const Signature& sig, const std::vector<std::string>& var_names)
      : sig_(sig), vars_(var_names.begin(), var_names.end()) {}

  const std::string& operator()(std::size_t i) {
    while (names_.size() <= i) {
      std::string cand;
      do {
        std::size_t k = next_++;
        cand = std::string(1, static_cast<char>('a' + k % 26));
        if (k >= 26) cand += std::to_string(k / 26);
      } while (vars_.count(cand) || sig_.contains(cand));
      names_.push_back(cand);
    }
    return names_[i];
  }

 private:
  const Signature& sig_;
  std::set<std::string> vars_;
  std::vector<std::string> names_;
  std::size_t next_ = 0;
};

void print_rec(const Signature& sig, const std::vector<std::string>& vars, ParamNamer& pn,
               const Term& t, std::size_t d, std::string& out) {
  auto params = [&](std::size_t from, std::size_t to, const char* sep) {
    for (std::size_t i = from; i < to; ++i) {
      if (i > from) out += sep;
      out += pn(i);
    }
  };
  if (t.is_var()) {
    std::size_t i = t.var_index();
    out += i < vars.size() ? vars[i] : "#" + std::to_string(i);
    if (d > 0) {
      out += "(";
      params(0, d, ", ");
      out += ")";
    }
    return;
  }
  const ParamArity* ar = sig.find(t.op());
  std::size_t p = ar ? std::min(ar->params, d) : 0;
  out += t.op();
  if (p == 0 && t.conts().empty()) return;
  out += "(";
  params(d - p, d, ", ");
  if (p > 0 && !t.conts().empty()) out += "; ";
  for (std::size_t i = 0; i < t.conts().size(); ++i) {
    if (i > 0) out += ", ";
    std::size_t m = ar && i < ar->binders.size() ? ar->binders[i] : 0;
    std::size_t base = d - p;
    if (m > 0) {
      params(base, base + m, " ");
      out += ". ";
    }
    print_rec(sig, vars, pn, t.conts()[i], base + m, out);
  }
  out += ")";
}

}  // namespace

NamedContext parse_context(std::string_view text) {
  Parser p(text);
  auto c = p.context(false);
  if (!p.at_end()) p.fail("unexpected input after context");
  return to_named(c);
}

Judgement parse_term(std::string_view text, const Signature& sig, const NamedContext& ctx) {
  Parser p(text);
  if (p.at_end()) p.fail("expected a term");
  STerm st = p.term();
  if (!p.at_end()) p.fail("unexpected input after term");
  Term t = Resolver(sig, ctx).resolve(st, ctx.params, {});
  return Judgement(sig, ctx.arities, ctx.depth(), std::move(t));
}

Theory parse_theory(std::string_view text) {
  Parser p(text);
  Signature sig;
  struct PendingEq {
    Token at;
    Parser::SContext ctx;
    STerm lhs;
    STerm rhs;
  };
  std::vector<PendingEq> pending;
  while (!p.at_end()) {
    if (p.at_keyword("op")) {
      p.expect_ident("op");
      Token name = p.expect_ident("an operation name");
      if (name.text == "op" || name.text == "eq") {
        throw ParseError("`" + name.text + "` is reserved", name.line, name.col);
      }
      p.expect_punct(":");
      p.expect_punct("(");
      ParamArity ar;
      ar.params = p.expect_nat();
      p.expect_punct("|");
      if (p.at_punct("-")) {
        p.expect_punct("-");
      } else {
        while (true) {
          ar.binders.push_back(p.expect_nat());
          if (!p.at_punct(",")) break;
          p.expect_punct(",");
        }
      }
      p.expect_punct(")");
      if (sig.contains(name.text)) {
        throw ParseError("operation `" + name.text + "` declared twice", name.line, name.col);
      }
      sig.add(name.text, std::move(ar));
    } else if (p.at_keyword("eq")) {
      PendingEq eq;
      eq.at = p.expect_ident("eq");
      eq.ctx = p.context(true);
      p.expect_punct("|");
      p.expect_punct("-");
      eq.lhs = p.term();
      p.expect_punct("=");
      eq.rhs = p.term();
      pending.push_back(std::move(eq));
    } else {
      p.fail("expected 'op' or 'eq'");
    }
  }
  std::vector<Equation> eqns;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const PendingEq& pe = pending[i];
    NamedContext ctx = to_named(pe.ctx);
    Resolver r(sig, ctx);
    Term lhs = r.resolve(pe.lhs, ctx.params, {});
    Term rhs = r.resolve(pe.rhs, ctx.params, {});
    eqns.push_back(Equation{"eq" + std::to_string(i + 1), ctx.arities, ctx.names, ctx.depth(),
                            std::move(lhs), std::move(rhs)});
  }
  return Theory(std::move(sig), std::move(eqns));
}

ScopedSignature parse_scoped_signature(std::string_view text) {
  Parser p(text);
  ScopedSignature out;
  while (!p.at_end()) {
    bool scoped = p.at_keyword("scoped");
    if (!scoped && !p.at_keyword("alg")) p.fail("expected 'alg' or 'scoped'");
    p.expect_ident("a keyword");
    Token name = p.expect_ident("an operation name");
    p.expect_punct(":");
    std::size_t arity = p.expect_nat();
    if (out.algebraic.count(name.text) || out.scoped.count(name.text)) {
      throw ParseError("operation `" + name.text + "` declared twice", name.line, name.col);
    }
    (scoped ? out.scoped : out.algebraic).emplace(name.text, arity);
  }
  return out;
}

std::vector<std::string> parameter_names(const Signature& sig,
                                         const std::vector<std::string>& var_names,
                                         std::size_t depth) {
  ParamNamer pn(sig, var_names);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < depth; ++i) out.push_back(pn(i));
  return out;
}

std::string print_term(const Signature& sig, const std::vector<std::string>& var_names,
                       const CompContext& ctx, std::size_t depth, const Term& t) {
  (void)ctx;
  ParamNamer pn(sig, var_names);
  std::string out;
  print_rec(sig, var_names, pn, t, depth, out);
  return out;
}

std::string print_context(const Signature& sig, const std::vector<std::string>& var_names,
                          const CompContext& ctx, std::size_t depth) {
  std::string out;
  if (ctx.empty()) out += "-";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i > 0) out += ", ";
    out += (i < var_names.size() ? var_names[i] : "#" + std::to_string(i)) + ":" +
           std::to_string(ctx[i]);
  }
  out += " | ";
  if (depth == 0) out += "-";
  auto names = parameter_names(sig, var_names, depth);
  for (std::size_t i = 0; i < depth; ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  return out;
}

std::string print_judgement(const Signature& sig, const std::vector<std::string>& var_names,
                            const Judgement& j) {
  return print_context(sig, var_names, j.ctx(), j.depth()) + " |- " +
         print_term(sig, var_names, j.ctx(), j.depth(), j.body());
}

std::string print_equation(const Signature& sig, const Equation& eq) {
  return "eq " + print_context(sig, eq.var_names, eq.ctx, eq.depth) + " |- " +
         print_term(sig, eq.var_names, eq.ctx, eq.depth, eq.lhs) + " = " +
         print_term(sig, eq.var_names, eq.ctx, eq.depth, eq.rhs);
}

std::string print_signature(const Signature& sig) {
  std::string out;
  for (const auto& [name, ar] : sig) out += "op " + name + " : " + to_string(ar) + "\n";
  return out;
}

std::string print_theory(const Theory& thy) {
  std::string out = print_signature(thy.sig());
  for (const Equation& eq : thy.equations()) {
    out += "# " + eq.name + "\n";
    out += print_equation(thy.sig(), eq) + "\n";
  }
  return out;
}

}  // namespace scopedeq
