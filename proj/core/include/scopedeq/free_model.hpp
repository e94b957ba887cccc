#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "scopedeq/error.hpp"
#include "scopedeq/signature.hpp"
#include "scopedeq/term.hpp"

namespace scopedeq {

// Element of the syntactic free model over generators G: a term whose i-th
// context variable stands for generator tags[i] (of level ctx[i]).
template <class G>
struct FreeElement {
  Judgement term;
  std::vector<G> tags;

  std::size_t level() const { return term.depth(); }

  friend bool operator==(const FreeElement&, const FreeElement&) = default;
};

// One summand X(left_level) x Y(right_level) of the Day tensor at level
// left_level + right_level.
template <class A, class B>
struct DayPair {
  std::size_t left_level = 0;
  std::size_t right_level = 0;
  A left{};
  B right{};

  friend bool operator==(const DayPair&, const DayPair&) = default;
  friend bool operator<(const DayPair& x, const DayPair& y) {
    return std::tie(x.left_level, x.right_level, x.left, x.right) <
           std::tie(y.left_level, y.right_level, y.left, y.right);
  }
};

// Canonical representative: unused variables dropped, variables with the same
// (tag, arity) merged, the rest ordered by (tag, arity).
template <class G>
FreeElement<G> canonicalize(const Signature& sig, const FreeElement<G>& e) {
  const CompContext& ctx = e.term.ctx();
  std::vector<std::size_t> used = free_vars(e.term.body());
  std::vector<std::pair<G, std::size_t>> keys;
  for (std::size_t v : used) keys.emplace_back(e.tags[v], ctx[v]);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::size_t> mapping(ctx.size(), 0);
  for (std::size_t v : used) {
    auto it = std::lower_bound(keys.begin(), keys.end(), std::make_pair(e.tags[v], ctx[v]));
    mapping[v] = static_cast<std::size_t>(it - keys.begin());
  }
  CompContext new_ctx;
  std::vector<G> new_tags;
  for (auto& [tag, arity] : keys) {
    new_ctx.push_back(arity);
    new_tags.push_back(tag);
  }
  return FreeElement<G>{Judgement(sig, std::move(new_ctx), e.term.depth(),
                                  rename_vars(e.term.body(), mapping)),
                        std::move(new_tags)};
}

// c in X(n) |-> (x:n | a_1..a_n ⊢ x(a_1..a_n)) tagged c.
template <class G>
FreeElement<G> free_unit(const Signature& sig, const G& g, std::size_t level) {
  return FreeElement<G>{Judgement(sig, {level}, level, Term::var(0)), {g}};
}

template <class T>
struct free_tag;
template <class H>
struct free_tag<FreeElement<H>> {
  using type = H;
};

// Grafts k(tag, level) at every generator leaf. k must return a FreeElement
// of the same level as the generator it replaces.
template <class G, class K>
auto free_bind(const Signature& sig, const FreeElement<G>& e, K&& k) {
  using Out = std::decay_t<std::invoke_result_t<K&, const G&, std::size_t>>;
  using H = typename free_tag<Out>::type;
  const CompContext& ctx = e.term.ctx();
  CompContext outer;
  std::vector<H> tags;
  std::vector<Term> args;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    Out img = k(e.tags[i], ctx[i]);
    if (img.level() != ctx[i]) {
      throw ModelError("bind: image of generator " + std::to_string(i) + " has level " +
                       std::to_string(img.level()) + ", expected " + std::to_string(ctx[i]));
    }
    std::vector<std::size_t> shift;
    for (std::size_t j = 0; j < img.term.ctx().size(); ++j) shift.push_back(outer.size() + j);
    args.push_back(rename_vars(img.term.body(), shift));
    for (std::size_t j = 0; j < img.term.ctx().size(); ++j) {
      outer.push_back(img.term.ctx()[j]);
      tags.push_back(img.tags[j]);
    }
  }
  Judgement grafted = substitute(sig, e.term, outer, 0, args);
  return canonicalize(sig, FreeElement<H>{std::move(grafted), std::move(tags)});
}

// Strength X(p) x F(Y)(n) -> F(X ⊗ Y)(p + n): weakens the term by p and
// pairs c with every generator.
template <class A, class B>
FreeElement<DayPair<A, B>> free_strength(const Signature& sig, const A& c, std::size_t p,
                                         const FreeElement<B>& e) {
  Judgement w = weaken(sig, e.term, p);
  std::vector<DayPair<A, B>> tags;
  for (std::size_t i = 0; i < e.tags.size(); ++i) {
    tags.push_back(DayPair<A, B>{p, e.term.ctx()[i], c, e.tags[i]});
  }
  return FreeElement<DayPair<A, B>>{std::move(w), std::move(tags)};
}

// sc(a. t_1[close(a, x)/x], ..., a. t_k[close(a, x)/x]) for level-0 arguments
// over arity-0 generators. Throws ModelError when sc is not (0 | 1^k), close
// is missing, or an argument is not of that shape.
template <class G>
FreeElement<G> lift_scoped_op(const Signature& sig, std::string_view sc,
                              std::span<const FreeElement<G>> args) {
  const ParamArity* ar = sig.find(sc);
  if (ar == nullptr) throw ModelError("unknown scoped operation `" + std::string(sc) + "`");
  if (ar->params != 0 || ar->continuations() != args.size() ||
      std::any_of(ar->binders.begin(), ar->binders.end(), [](std::size_t m) { return m != 1; })) {
    throw ModelError("`" + std::string(sc) + "` is not a scoped operation of arity " +
                     std::to_string(args.size()));
  }
  const ParamArity* close = sig.find(kCloseOp);
  if (close == nullptr || !(*close == ParamArity{1, {0}})) {
    throw ModelError("signature lacks close : (1 | 0)");
  }
  CompContext ctx;
  std::vector<G> tags;
  std::vector<Term> conts;
  for (const FreeElement<G>& a : args) {
    if (a.level() != 0) throw ModelError("scoped arguments must have level 0");
    std::vector<Term> wrapped;
    for (std::size_t j = 0; j < a.term.ctx().size(); ++j) {
      if (a.term.ctx()[j] != 0) throw ModelError("scoped arguments must use arity-0 generators");
      wrapped.push_back(Term::app(std::string(kCloseOp), {Term::var(ctx.size() + j)}));
    }
    conts.push_back(graft(a.term.body(), wrapped));
    for (std::size_t j = 0; j < a.term.ctx().size(); ++j) {
      ctx.push_back(0);
      tags.push_back(a.tags[j]);
    }
  }
  Judgement j(sig, std::move(ctx), 0, Term::app(std::string(sc), std::move(conts)));
  return canonicalize(sig, FreeElement<G>{std::move(j), std::move(tags)});
}

}  // namespace scopedeq
