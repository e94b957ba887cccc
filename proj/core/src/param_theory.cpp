#include "scopedeq/param_theory.hpp"

#include <map>
#include <set>

#include "scopedeq/builtin_theories.hpp"
#include "scopedeq/error.hpp"

namespace scopedeq {

ListNF once_oracle(std::span<const ListNF> args) {
  if (args.empty() || args[0].empty()) return {};
  return {args[0].front()};
}

ListNF scope_oracle(std::span<const ListNF> args) {
  if (args.empty()) return {};
  return args[0];
}

ListNF eval_list_nf(const Term& t) {
  if (t.is_var()) return {t.var_index()};
  if (t.op() == "fail" && t.conts().empty()) return {};
  if (t.op() == "or" && t.conts().size() == 2) {
    ListNF out = eval_list_nf(t.conts()[0]);
    ListNF rest = eval_list_nf(t.conts()[1]);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  throw Error("`" + t.op() + "` is not an operation of explicit nondeterminism");
}

Term reify_list_nf(const ListNF& xs) {
  if (xs.empty()) return Term::app("fail");
  Term acc = Term::var(xs.back());
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = Term::app("or", {Term::var(xs[i]), acc});
  return acc;
}

Equation param_instance(const Signature& sig, std::string_view scoped_name, const ListOracle& oracle,
                        std::size_t n, std::span<const Term> tuple) {
  std::vector<Term> wrapped;
  for (std::size_t i = 0; i < n; ++i) wrapped.push_back(Term::app(std::string(kCloseOp), {Term::var(i)}));
  std::vector<Term> conts;
  std::vector<ListNF> values;
  for (const Term& t : tuple) {
    conts.push_back(graft(t, wrapped));
    values.push_back(eval_list_nf(t));
  }
  ListNF result = oracle(values);
  for (std::size_t v : result) {
    if (v >= n) throw Error("oracle produced a variable outside the context");
  }
  Term lhs = Term::app(std::string(scoped_name), std::move(conts));
  Term rhs = reify_list_nf(result);
  Equation eq{std::string(scoped_name) + "-instance", CompContext(n, 0), default_var_names(n), 0,
              std::move(lhs), std::move(rhs)};
  for (const Term* side : {&eq.lhs, &eq.rhs}) {
    auto problems = check_term(sig, eq.ctx, 0, *side);
    if (!problems.empty()) throw TermError("generated instance is ill-formed: " + problems.front());
  }
  return eq;
}

Theory generate_param_theory(const ParamTheoryOptions& o) {
  if (o.base != "explicit_nondet") throw Error("unsupported base theory `" + o.base + "`");
  Theory base = builtin_theory(o.base);
  ScopedSignature ss;
  for (const auto& [name, ar] : base.sig()) {
    if (ar.params != 0) throw Error("base operation `" + name + "` is not algebraic");
    ss.algebraic.emplace(name, ar.continuations());
  }
  ss.scoped.emplace(o.scoped_name, o.scoped_arity);
  Signature sig = encode_scoped_signature(ss);

  std::vector<Equation> eqs = base.equations();
  std::set<std::pair<Term, Term>> seen;
  std::size_t index = 0;
  for (std::size_t n = 0; n <= o.var_count_bound; ++n) {
    CompContext ctx(n, 0);
    // One representative per class: the first (smallest) term with that value.
    std::map<ListNF, Term> reps;
    std::vector<Term> ordered;
    for (const Term& t : enumerate_terms(base.sig(), ctx, 0, o.size_bound)) {
      ListNF v = eval_list_nf(t);
      if (reps.emplace(v, t).second) ordered.push_back(t);
    }
    std::vector<std::size_t> idx(o.scoped_arity, 0);
    if (ordered.empty()) continue;
    for (bool more = true; more;) {
      std::vector<Term> tuple;
      for (std::size_t i : idx) tuple.push_back(ordered[i]);
      Equation eq = param_instance(sig, o.scoped_name, o.oracle, n, tuple);
      if (seen.emplace(eq.lhs, eq.rhs).second) {
        eq.name = o.scoped_name + "-param-" + std::to_string(++index);
        eqs.push_back(std::move(eq));
      }
      more = false;
      for (std::size_t j = idx.size(); j-- > 0;) {
        if (++idx[j] < ordered.size()) {
          more = true;
          break;
        }
        idx[j] = 0;
      }
    }
  }
  return Theory(std::move(sig), std::move(eqs));
}

}  // namespace scopedeq
