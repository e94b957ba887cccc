#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "scopedeq/builtin_models.hpp"
#include "scopedeq/builtin_theories.hpp"
#include "scopedeq/counting.hpp"
#include "scopedeq/equational_logic.hpp"
#include "scopedeq/error.hpp"
#include "scopedeq/model.hpp"
#include "scopedeq/param_theory.hpp"
#include "scopedeq/syntax.hpp"

namespace scopedeq::cli {
namespace {

// Bad flag values that CLI11 cannot catch.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedTheory {
  Theory theory;
  std::optional<std::string> builtin;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read `" + path + "`");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

LoadedTheory load_theory(const std::string& source) {
  if (is_builtin_theory(source)) return {builtin_theory(source), source};
  return {parse_theory(read_file(source)), std::nullopt};
}

ScopedSignature load_scoped_signature(const std::string& source) {
  for (const std::string& name : builtin_scoped_signature_names()) {
    if (source == name) return builtin_scoped_signature(source);
  }
  if (source == "catch") return builtin_scoped_signature(source);
  return parse_scoped_signature(read_file(source));
}

std::string term_text(const std::string& arg, std::istream& in) {
  if (arg != "-") return arg;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

ModelKind model_of(const LoadedTheory& t) {
  if (!t.builtin) throw UsageError("model-based commands need a builtin theory name");
  try {
    return model_for_theory(*t.builtin);
  } catch (const Error&) {
    throw UsageError("theory `" + *t.builtin + "` has no builtin free model");
  }
}

void require_truncated(const NamedContext& ctx) {
  for (std::size_t m : ctx.arities) {
    if (m != 0) throw UsageError("this command needs every context variable to have arity 0");
  }
}

std::string print_in(const Signature& sig, const NamedContext& ctx, const Term& t) {
  return print_term(sig, ctx.names, ctx.arities, ctx.depth(), t);
}

void print_trace(const Theory& thy, const NamedContext& ctx, const Judgement& start,
                 const DerivationTrace& trace, std::ostream& out) {
  out << "  " << print_in(thy.sig(), ctx, start.body()) << "\n";
  Term cur = start.body();
  for (const RewriteStep& s : trace.steps) {
    cur = apply_step(thy, start.ctx(), cur, start.depth(), s);
    out << "  = " << print_in(thy.sig(), ctx, cur) << "   [" << describe_step(thy, s) << "]\n";
  }
}

struct Flags {
  std::string theory;
  std::string ctx = "- | -";
  std::string term;
  std::string lhs;
  std::string rhs;
  std::size_t steps = 10;
  std::size_t max_nodes = SearchOptions{}.max_nodes;
  bool semantic = false;
  std::string scoped_sig;
  std::size_t gens = 1;
  std::size_t level = 0;
  std::size_t depth = 0;
  std::string base = "explicit_nondet";
  std::string sc = "once";
  std::size_t vars = 2;
  std::size_t size = 2;
  std::size_t offsets = 2;
  std::size_t cap = 3;
  std::size_t samples = ModelCheckBudget{}.samples;
  std::uint64_t seed = 1;
};

int cmd_check(const Flags& f, std::istream& in, std::ostream& out) {
  LoadedTheory t = load_theory(f.theory);
  NamedContext ctx = parse_context(f.ctx);
  try {
    Judgement j = parse_term(term_text(f.term, in), t.theory.sig(), ctx);
    out << "OK " << print_judgement(t.theory.sig(), ctx.names, j) << "\n";
    return kExitOk;
  } catch (const DisciplineError& e) {
    out << "violation: " << e.what() << "\n";
    return kExitNo;
  } catch (const TermError& e) {
    out << "violation: " << e.what() << "\n";
    return kExitNo;
  }
}

int cmd_eq(const Flags& f, std::ostream& out) {
  LoadedTheory t = load_theory(f.theory);
  NamedContext ctx = parse_context(f.ctx);
  Judgement lhs = parse_term(f.lhs, t.theory.sig(), ctx);
  Judgement rhs = parse_term(f.rhs, t.theory.sig(), ctx);
  SearchOptions opts;
  opts.step_bound = f.steps;
  opts.max_nodes = f.max_nodes;
  if (f.semantic) {
    ModelKind kind = model_of(t);
    require_truncated(ctx);
    if (!decide_equal_via_model(kind, t.theory.sig(), lhs, rhs)) {
      out << "UNEQUAL\n";
      return kExitNo;
    }
    EqualityResult r = derivably_equal(t.theory, lhs, rhs, opts);
    if (r.equal()) {
      out << "EQUAL in " << r.trace.steps.size() << " steps\n";
      print_trace(t.theory, ctx, lhs, r.trace, out);
    } else {
      out << "EQUAL (by the free model; no derivation within " << f.steps << " steps)\n";
    }
    return kExitOk;
  }
  EqualityResult r = derivably_equal(t.theory, lhs, rhs, opts);
  if (!r.equal()) {
    out << "UNKNOWN (no derivation within " << f.steps << " steps, " << r.explored
        << " terms explored)\n";
    return kExitUnknown;
  }
  out << "EQUAL in " << r.trace.steps.size() << " steps\n";
  print_trace(t.theory, ctx, lhs, r.trace, out);
  return kExitOk;
}

int cmd_normalize(const Flags& f, std::istream& in, std::ostream& out, bool print_value) {
  LoadedTheory t = load_theory(f.theory);
  ModelKind kind = model_of(t);
  NamedContext ctx = parse_context(f.ctx);
  require_truncated(ctx);
  Judgement j = parse_term(term_text(f.term, in), t.theory.sig(), ctx);
  SemValue v = eval_rho(kind, t.theory.sig(), j);
  if (print_value) {
    out << show_value(kind, v, ctx.names) << "\n";
  } else {
    Judgement nf = reify(kind, t.theory.sig(), ctx.names.size(), v);
    out << print_in(t.theory.sig(), ctx, nf.body()) << "\n";
  }
  return kExitOk;
}

int cmd_count(const Flags& f, std::ostream& out) {
  ScopedSignature s = load_scoped_signature(f.scoped_sig);
  std::uint64_t terms = count_free_terms(s, f.gens, f.level, f.depth);
  std::uint64_t fixed = count_fixedpoint(s, f.gens, f.level, f.depth);
  out << "free terms:  " << terms << "\n";
  out << "fixed point: " << fixed << "\n";
  out << (terms == fixed ? "MATCH" : "MISMATCH") << "\n";
  return terms == fixed ? kExitOk : kExitNo;
}

int cmd_encode(const Flags& f, std::ostream& out) {
  out << print_signature(encode_scoped_signature(load_scoped_signature(f.scoped_sig)));
  return kExitOk;
}

int cmd_genparam(const Flags& f, std::ostream& out) {
  ParamTheoryOptions o;
  o.base = f.base;
  o.scoped_name = f.sc;
  if (f.sc == "once") {
    o.oracle = once_oracle;
  } else if (f.sc == "scope") {
    o.oracle = scope_oracle;
  } else {
    throw UsageError("--sc must be once or scope");
  }
  if (f.base != "explicit_nondet") throw UsageError("--base must be explicit_nondet");
  o.var_count_bound = f.vars;
  o.size_bound = f.size;
  out << print_theory(generate_param_theory(o));
  return kExitOk;
}

int cmd_modelcheck(const Flags& f, std::ostream& out) {
  LoadedTheory t = load_theory(f.theory);
  ModelKind kind = model_of(t);
  SigmaStructure<SemValue> m = builtin_model(kind, {f.gens, f.cap});
  ModelCheckBudget b;
  b.max_offset = f.offsets;
  b.seed = f.seed;
  b.samples = f.samples;
  ModelCheckReport<SemValue> r = check_model(m, t.theory, b);
  if (r.empty()) {
    out << "OK " << r.environments << " environments (" << (r.exhaustive ? "exhaustive" : "partly sampled")
        << ")\n";
    return kExitOk;
  }
  for (const auto& v : r.violations) out << describe_violation(m, v) << "\n";
  return kExitNo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equational reasoning for scoped effects"};
  app.require_subcommand(1);
  Flags f;

  auto theory_opt = [&](CLI::App* sub) {
    sub->add_option("--theory", f.theory, "builtin theory name or theory file")->required();
  };
  auto ctx_opt = [&](CLI::App* sub) {
    sub->add_option("--ctx", f.ctx, "context, e.g. \"x:0, y:1 | a\"")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "check that a term is well-formed");
  theory_opt(check);
  ctx_opt(check);
  check->add_option("--term", f.term, "term, or - for stdin")->required();

  auto* eq = app.add_subcommand("eq", "search for a derivation of lhs = rhs");
  theory_opt(eq);
  ctx_opt(eq);
  eq->add_option("--lhs", f.lhs)->required();
  eq->add_option("--rhs", f.rhs)->required();
  eq->add_option("--steps", f.steps, "total rewrite steps")->capture_default_str();
  eq->add_option("--max-nodes", f.max_nodes, "terms explored before giving up")->capture_default_str();
  eq->add_flag("--semantic", f.semantic, "decide with the free model (arity-0 contexts)");

  auto* normalize = app.add_subcommand("normalize", "print the normal form of a term");
  theory_opt(normalize);
  ctx_opt(normalize);
  normalize->add_option("--term", f.term, "term, or - for stdin")->required();

  auto* eval = app.add_subcommand("eval", "print the value of a term in the free model");
  theory_opt(eval);
  ctx_opt(eval);
  eval->add_option("--term", f.term, "term, or - for stdin")->required();

  auto* count = app.add_subcommand("count", "compare the two term counts of a scoped signature");
  count->add_option("--scoped-sig", f.scoped_sig, "once, exceptions, cut, or a file")->required();
  count->add_option("--gens", f.gens)->capture_default_str();
  count->add_option("--level", f.level)->capture_default_str();
  count->add_option("--depth", f.depth)->capture_default_str();

  auto* encode = app.add_subcommand("encode", "print the parameterized signature");
  encode->add_option("--scoped-sig", f.scoped_sig, "once, exceptions, cut, or a file")->required();

  auto* genparam = app.add_subcommand("genparam", "generate equations for a scoped operation");
  genparam->add_option("--base", f.base)->capture_default_str();
  genparam->add_option("--sc", f.sc, "once or scope")->capture_default_str();
  genparam->add_option("--vars", f.vars)->capture_default_str();
  genparam->add_option("--size", f.size)->capture_default_str();

  auto* modelcheck = app.add_subcommand("modelcheck", "check a theory against its free model");
  theory_opt(modelcheck);
  modelcheck->add_option("--offsets", f.offsets)->capture_default_str();
  modelcheck->add_option("--gens", f.gens)->capture_default_str();
  modelcheck->add_option("--cap", f.cap, "list length cap")->capture_default_str();
  modelcheck->add_option("--samples", f.samples)->capture_default_str();
  modelcheck->add_option("--seed", f.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(f, in, out);
    if (eq->parsed()) return cmd_eq(f, out);
    if (normalize->parsed()) return cmd_normalize(f, in, out, false);
    if (eval->parsed()) return cmd_normalize(f, in, out, true);
    if (count->parsed()) return cmd_count(f, out);
    if (encode->parsed()) return cmd_encode(f, out);
    if (genparam->parsed()) return cmd_genparam(f, out);
    if (modelcheck->parsed()) return cmd_modelcheck(f, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TermError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SignatureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ModelError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace scopedeq::cli
