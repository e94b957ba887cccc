#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scopedeq/signature.hpp"
#include "scopedeq/term.hpp"

namespace scopedeq {

// Γ | Δ ⊢ lhs = rhs with |Δ| = depth. `var_names` only matter for printing.
struct Equation {
  std::string name;
  CompContext ctx;
  std::vector<std::string> var_names;
  std::size_t depth = 0;
  Term lhs;
  Term rhs;
};

// A signature with equations; every equation is checked against the signature
// on construction (TermError otherwise).
class Theory {
 public:
  Theory(Signature sig, std::vector<Equation> equations);

  const Signature& sig() const { return sig_; }
  const std::vector<Equation>& equations() const { return equations_; }

 private:
  Signature sig_;
  std::vector<Equation> equations_;
};

// Names x1, x2, ... for a context without explicit names.
std::vector<std::string> default_var_names(std::size_t n);

}  // namespace scopedeq
