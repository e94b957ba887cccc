#pragma once

#include <cstddef>
#include <cstdint>

#include "scopedeq/signature.hpp"
#include "scopedeq/term.hpp"

namespace scopedeq {

// Number of well-formed terms at (ctx, depth) with at most `size_bound` App
// nodes, by dynamic programming over the arity grammar. Throws Error on
// 64-bit overflow.
std::uint64_t count_terms(const Signature& sig, const CompContext& ctx, std::size_t depth,
                          std::size_t size_bound);

// Terms of the encoded signature at level n over `gens` arity-0 generators
// with at most `depth_bound` operations.
std::uint64_t count_free_terms(const ScopedSignature& s, std::size_t gens, std::size_t level,
                               std::size_t depth_bound);

// Elements at level n of the depth_bound-th approximant of
//   mu Y. up(A) + (Sigma + Sigma' . earlier + later) Y
// where Sigma(X)(n) = sum over algebraic o of X(n)^ar(o) and
// Sigma'(X)(n) = sum over scoped s of X(n)^ar(s), counting only elements
// built from at most depth_bound constructors.
std::uint64_t count_fixedpoint(const ScopedSignature& s, std::size_t gens, std::size_t level,
                               std::size_t depth_bound);

}  // namespace scopedeq
