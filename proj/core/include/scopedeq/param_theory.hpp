#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scopedeq/term.hpp"
#include "scopedeq/theory.hpp"

namespace scopedeq {

// Normal forms of explicit nondeterminism over x_1..x_n: lists of variable
// indices.
using ListNF = std::vector<std::size_t>;

// A scoped operation on the list monad: k argument lists to a list. Must be
// natural (only rearrange/copy/drop entries).
using ListOracle = std::function<ListNF(std::span<const ListNF>)>;

// once: head of the first argument, or empty.
ListNF once_oracle(std::span<const ListNF> args);
// scope without cut: the argument unchanged.
ListNF scope_oracle(std::span<const ListNF> args);

// Value of a term of explicit nondeterminism over arity-0 variables.
ListNF eval_list_nf(const Term& t);
// or(x_a, or(x_b, ... x_z)) / fail / x_a.
Term reify_list_nf(const ListNF& xs);

struct ParamTheoryOptions {
  std::string base = "explicit_nondet";
  std::string scoped_name = "once";
  std::size_t scoped_arity = 1;
  ListOracle oracle = once_oracle;
  std::size_t var_count_bound = 2;
  std::size_t size_bound = 2;
};

// The single instance
//   x_1:0..x_n:0 | - ⊢ sc(a. t_1[close(a, x_i)/x_i], ...) = reify(oracle(eval t_1, ...)).
// `sig` must contain or, fail, close and the scoped operation.
Equation param_instance(const Signature& sig, std::string_view scoped_name, const ListOracle& oracle,
                        std::size_t n, std::span<const Term> tuple);

// Base equations plus one instance per tuple of minimal representatives of
// the base-equality classes (terms over x_1..x_n with n <= var_count_bound
// and size <= size_bound). Instances repeating an earlier equation verbatim
// are dropped.
Theory generate_param_theory(const ParamTheoryOptions& options);

}  // namespace scopedeq
