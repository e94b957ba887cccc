#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "scopedeq/error.hpp"
#include "scopedeq/signature.hpp"
#include "scopedeq/term.hpp"
#include "scopedeq/theory.hpp"

namespace scopedeq {

// Misuse of the parameter stack or of an identifier, detected while resolving
// surface names to the nameless core.
struct DisciplineError : ParseError {
  using ParseError::ParseError;
};

// Surface context "x:0, y:1 | a, b"; either side may be "-".
struct NamedContext {
  std::vector<std::string> names;
  CompContext arities;
  std::vector<std::string> params;

  std::size_t depth() const { return params.size(); }
};

NamedContext parse_context(std::string_view text);

// Grammar:
//   term  = IDENT [ "(" [ pargs ";" ] conts ")" ]
//   cont  = [ IDENT { IDENT } "." ] term
// `close(a, x)` is accepted for `close(a; x)` when the operation consumes
// parameters and no ';' is present.
Judgement parse_term(std::string_view text, const Signature& sig, const NamedContext& ctx);

//   theory = { decl | eqn }
//   decl   = "op" IDENT ":" "(" NAT "|" ( "-" | NAT { "," NAT } ) ")"
//   eqn    = "eq" ctx "|-" term "=" term
// '#' starts a comment running to the end of the line.
Theory parse_theory(std::string_view text);

//   scoped_sig = { ( "alg" | "scoped" ) IDENT ":" NAT }
ScopedSignature parse_scoped_signature(std::string_view text);

// Parameter names are regenerated per stack position (a, b, c, ...), skipping
// names taken by context variables or operations.
std::string print_term(const Signature& sig, const std::vector<std::string>& var_names,
                       const CompContext& ctx, std::size_t depth, const Term& t);
std::string print_judgement(const Signature& sig, const std::vector<std::string>& var_names,
                            const Judgement& j);
// The "ctx" part: "x:0, y:1 | a, b".
std::string print_context(const Signature& sig, const std::vector<std::string>& var_names,
                           const CompContext& ctx, std::size_t depth);
std::string print_equation(const Signature& sig, const Equation& eq);
std::string print_signature(const Signature& sig);
std::string print_theory(const Theory& thy);

// The names used for stack positions 0 .. depth-1.
std::vector<std::string> parameter_names(const Signature& sig,
                                         const std::vector<std::string>& var_names,
                                         std::size_t depth);

}  // namespace scopedeq
