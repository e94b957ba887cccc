#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scopedeq/signature.hpp"
#include "scopedeq/theory.hpp"

namespace scopedeq {

// nondet_once, exceptions, state_local, state_local_noclose, nondet_cut,
// explicit_nondet, global_state.
const std::vector<std::string>& builtin_theory_names();
bool is_builtin_theory(std::string_view name);
// Throws Error for an unknown name.
Theory builtin_theory(std::string_view name);

// The theory with equation `index` removed.
Theory without_equation(const Theory& thy, std::size_t index);

// Scoped signatures behind the encoded theories: once, exceptions, cut.
const std::vector<std::string>& builtin_scoped_signature_names();
ScopedSignature builtin_scoped_signature(std::string_view name);

}  // namespace scopedeq
