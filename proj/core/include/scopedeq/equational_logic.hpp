#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scopedeq/term.hpp"
#include "scopedeq/theory.hpp"

namespace scopedeq {

// A substitution instance of an equation side: the subterm sits at local depth
// offset + eqn.depth, and captures[i] lives at offset + ctx[i]. Variables that
// do not occur in the matched side stay empty.
struct Match {
  std::size_t offset = 0;
  std::vector<std::optional<Term>> captures;
};

// Matches `pattern` (a side of an equation over ctx/depth) against `subject`
// sitting at `local_depth`. Repeated variables must capture equal subterms.
std::optional<Match> match_pattern(const Equation& eqn, const Term& pattern, const Term& subject,
                                   std::size_t local_depth);

// Matches eqn.lhs against the subterm of `subject` at `position`.
std::optional<Match> match_instance(const Theory& thy, const Equation& eqn, const Judgement& subject,
                                    const Position& position);

enum class Direction { Forward, Backward };  // lhs -> rhs, rhs -> lhs

struct RewriteStep {
  Position position;
  std::size_t equation = 0;
  Direction direction = Direction::Forward;
  std::size_t offset = 0;
  std::vector<std::optional<Term>> captures;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct DerivationTrace {
  std::vector<RewriteStep> steps;
};

// Applies one step; throws TermError if the source side of the cited equation
// does not match at the position with exactly the recorded captures.
Term apply_step(const Theory& thy, const CompContext& ctx, const Term& t, std::size_t root_depth,
                const RewriteStep& step);

// Replays the trace from `start`, returning the final term.
Term replay_trace(const Theory& thy, const Judgement& start, const DerivationTrace& trace);

// The same step read right to left (applies to the step's result).
RewriteStep invert_step(const RewriteStep& step);

// Every single-step rewrite of `t`, in the search order: positions in preorder,
// equations in declaration order, forward before backward. Variables only
// present on the produced side are filled from `pool` (terms well-formed at
// the required depth are used, in pool order).
struct Neighbor {
  Term term;
  RewriteStep step;
};
std::vector<Neighbor> rewrite_neighbors(const Theory& thy, const CompContext& ctx,
                                        std::size_t root_depth, const Term& t,
                                        const std::vector<Term>& pool);

struct SearchOptions {
  std::size_t step_bound = 10;
  // Visited terms over both directions; exceeding it yields Unknown.
  std::size_t max_nodes = 400000;
};

struct EqualityResult {
  enum class Kind { Equal, Unknown } kind = Kind::Unknown;
  DerivationTrace trace;
  std::size_t explored = 0;

  bool equal() const { return kind == Kind::Equal; }
};

// Bidirectional breadth-first search. Equal carries a trace turning lhs into
// rhs; Unknown means no derivation within the bounds. Throws TermError when the
// judgements do not share context and depth.
EqualityResult derivably_equal(const Theory& thy, const Judgement& lhs, const Judgement& rhs,
                               const SearchOptions& options);
EqualityResult derivably_equal(const Theory& thy, const Judgement& lhs, const Judgement& rhs,
                               std::size_t step_bound);

// Pool used by derivably_equal: distinct subterms of both endpoints followed
// by the constants of the signature.
std::vector<Term> instantiation_pool(const Signature& sig, const Term& a, const Term& b);

std::string describe_step(const Theory& thy, const RewriteStep& step);

}  // namespace scopedeq
