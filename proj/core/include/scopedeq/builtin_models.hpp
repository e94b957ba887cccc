#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scopedeq/model.hpp"
#include "scopedeq/term.hpp"
#include "scopedeq/theory.hpp"

namespace scopedeq {

// Generators of a truncated carrier are 0 .. gens-1; in terms, generator g is
// context variable g.
using Generator = std::size_t;

// Nested lists of depth level+1. At level 0 the entries are generators, above
// that they are ListVals of level-1. `star` is only used by the cut model.
struct ListVal {
  std::size_t level = 0;
  bool star = false;
  std::vector<Generator> gens;
  std::vector<ListVal> items;

  std::size_t length() const { return level == 0 ? gens.size() : items.size(); }

  friend bool operator==(const ListVal&, const ListVal&) = default;
  friend std::strong_ordering operator<=>(const ListVal& a, const ListVal& b);
};

// A generator, or the marker e_index (index <= level).
struct ExcVal {
  std::size_t level = 0;
  bool marker = false;
  std::size_t index = 0;

  friend bool operator==(const ExcVal&, const ExcVal&) = default;
  friend std::strong_ordering operator<=>(const ExcVal&, const ExcVal&) = default;
};

// A function on the state bit, stored as its two entries. Level 0 entries are
// (gen[s], bit[s]); higher entries are next[s], paired with bit[s] in the
// variant that remembers the state at close.
struct StateVal {
  std::size_t level = 0;
  std::array<Generator, 2> gen{};
  std::array<bool, 2> bit{};
  std::vector<StateVal> next;

  friend bool operator==(const StateVal&, const StateVal&) = default;
  friend std::strong_ordering operator<=>(const StateVal& a, const StateVal& b);
};

using SemValue = std::variant<ListVal, ExcVal, StateVal>;

std::size_t level_of(const SemValue& v);

enum class ModelKind {
  Once,        // nondeterminism with once: List^{n+1}
  Catch,       // exceptions: generators + e_0..e_n
  State,       // local state, close forgets the inner state
  StatePrime,  // local state, close remembers the inner state
  Cut,         // nondeterminism with cut and scope: (Idem . List)^{n+1}
};

std::string_view to_string(ModelKind kind);
// nondet_once -> Once, exceptions -> Catch, state_local -> State,
// state_local_noclose -> StatePrime, nondet_cut -> Cut. Throws Error otherwise.
ModelKind model_for_theory(std::string_view theory_name);
// Inverse of model_for_theory.
std::string_view theory_for_model(ModelKind kind);

struct ModelOptions {
  std::size_t gens = 2;
  // Maximum list length per layer in enumerations of list carriers.
  std::size_t list_cap = 3;
};

// Free model on the truncated carrier with `gens` generators.
SigmaStructure<SemValue> builtin_model(ModelKind kind, const ModelOptions& options = {});

SigmaStructure<SemValue> model_once(std::size_t gens, std::size_t list_cap = 3);
SigmaStructure<SemValue> model_catch(std::size_t gens);
SigmaStructure<SemValue> model_state(std::size_t gens);
SigmaStructure<SemValue> model_state_prime(std::size_t gens);
SigmaStructure<SemValue> model_cut(std::size_t gens, std::size_t list_cap = 3);

// Image of a generator: [g], g, or s |-> (g, s).
SemValue unit_value(ModelKind kind, Generator g);

// Interpretation at offset 0 with x_g |-> unit_value(g). The context must be
// truncated (all arities 0). Throws ModelError otherwise.
SemValue eval_rho(ModelKind kind, const Signature& sig, const Judgement& j);

// Normal form of v over `gens` arity-0 variables, at depth level_of(v).
Judgement reify(ModelKind kind, const Signature& sig, std::size_t gens, const SemValue& v);

// eval_rho(lhs) == eval_rho(rhs). Throws TermError on a context mismatch.
bool decide_equal_via_model(ModelKind kind, const Signature& sig, const Judgement& lhs,
                            const Judgement& rhs);

// Elements at `level` within the enumeration caps of `options`.
std::vector<SemValue> enumerate_values(ModelKind kind, std::size_t level, const ModelOptions& options);

struct RoundtripOptions {
  std::size_t level_bound = 1;
  std::size_t gens = 2;
  std::size_t list_cap = 2;
  // Terms with at most this many operations are pushed through reify . eval.
  std::size_t term_size = 2;
};

// Checks eval_rho . reify = id on enumerated values and that reify . eval_rho
// preserves the denotation and is idempotent on enumerated terms. Empty when
// both hold on the fragment.
std::vector<std::string> roundtrip_check(ModelKind kind, const RoundtripOptions& options);

// Compares the two local-state interpretations at offset 0 on every term over
// x_1:0..x_n:0 (n <= max_vars) with at most `size_bound` operations, under all
// environments. Empty when they agree.
std::vector<std::string> state_models_agree(std::size_t size_bound, std::size_t max_vars,
                                            std::size_t gens);

// "[1, 2]", "[[1], []]*", "e0", "1", "{0: (1, 0), 1: (2, 1)}"; higher state
// levels nest the tables. Generator g prints as names[g] when given, else as
// g+1.
std::string show_value(ModelKind kind, const SemValue& v, const std::vector<std::string>& names = {});

}  // namespace scopedeq
