#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scopedeq/signature.hpp"

namespace scopedeq {

// Arities of the computation variables x_1 ... x_n; positions are identities.
using CompContext = std::vector<std::size_t>;

// Child indices from the root; empty addresses the root.
using Position = std::vector<std::size_t>;

// Nameless term: Var(i) points into the computation context, App(op, conts)
// applies an operation. Parameters are not represented: a variable leaf
// consumes the whole stack, an operation consumes its top `params` entries.
//
// Immutable and cheaply copyable; structurally shared.
class Term {
 public:
  static Term var(std::size_t index);
  static Term app(std::string op, std::vector<Term> conts = {});

  bool is_var() const { return node_->is_var; }
  std::size_t var_index() const { return node_->index; }
  const std::string& op() const { return node_->op; }
  std::span<const Term> conts() const { return node_->conts; }

  // Number of App nodes.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b);
  // Var < App; vars by index; apps by op name, then children lexicographically.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var = false;
    std::size_t index = 0;
    std::string op;
    std::vector<Term> conts;
    std::size_t size = 0;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Empty iff `t` is derivable at Γ = ctx, |Δ| = depth: Var(i) needs
// depth == ctx[i]; App(O, conts) with O:(p | m_1..m_k) needs depth >= p,
// k continuations, and conts[i] well-formed at depth - p + m_i.
std::vector<std::string> check_term(const Signature& sig, const CompContext& ctx,
                                    std::size_t depth, const Term& t);

// Same verdict as check_term(...).empty(), without building the report.
bool well_formed(const Signature& sig, const CompContext& ctx, std::size_t depth, const Term& t);

// Γ | Δ ⊢ t with |Δ| = depth, checked on construction.
class Judgement {
 public:
  // Throws TermError listing the violations.
  Judgement(const Signature& sig, CompContext ctx, std::size_t depth, Term body);

  const CompContext& ctx() const { return ctx_; }
  std::size_t depth() const { return depth_; }
  const Term& body() const { return body_; }

  friend bool operator==(const Judgement&, const Judgement&) = default;

 private:
  CompContext ctx_;
  std::size_t depth_;
  Term body_;
};

// Simultaneous substitution. `target` lives over (x_1:m_1 .. x_l:m_l) at depth
// d; args[i] must be well-formed at (outer_ctx, outer_depth + m_i). The result
// lives over (outer_ctx, outer_depth + d). Throws TermError otherwise.
Judgement substitute(const Signature& sig, const Judgement& target, const CompContext& outer_ctx,
                     std::size_t outer_depth, std::span<const Term> args);

// Adds `extra` parameters at the bottom of the stack: every variable arity and
// the depth grow by `extra`; the nameless body is unchanged.
Judgement weaken(const Signature& sig, const Judgement& j, std::size_t extra);

// Replaces each Var(i) leaf by args[i] without any checking.
Term graft(const Term& t, std::span<const Term> args);

// Every well-formed term at (ctx, depth) with at most `size_bound` App nodes,
// ordered by size and then by operator<=>.
std::vector<Term> enumerate_terms(const Signature& sig, const CompContext& ctx,
                                  std::size_t depth, std::size_t size_bound);

// Subterm addressing. Throws TermError for an invalid position.
const Term& subterm_at(const Term& t, std::span<const std::size_t> pos);
Term replace_at(const Term& t, std::span<const std::size_t> pos, Term replacement);
// Stack depth at `pos` when the root sits at `root_depth`.
std::size_t depth_at(const Signature& sig, const Term& t, std::size_t root_depth,
                     std::span<const std::size_t> pos);

struct Site {
  Position position;
  std::size_t depth;
};
// All positions in preorder (root first, children left to right).
std::vector<Site> sites(const Signature& sig, const Term& t, std::size_t root_depth);

// Distinct subterms in preorder of first occurrence.
std::vector<Term> distinct_subterms(const Term& t);

// Variable indices occurring in t, ascending.
std::vector<std::size_t> free_vars(const Term& t);

// Var(i) -> Var(mapping[i]).
Term rename_vars(const Term& t, std::span<const std::size_t> mapping);

// Lisp-ish debugging form, e.g. "once(or(#0, fail))".
std::string debug_string(const Term& t);

}  // namespace scopedeq

template <>
struct std::hash<scopedeq::Term> {
  std::size_t operator()(const scopedeq::Term& t) const { return t.hash(); }
};
