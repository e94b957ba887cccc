#include "scopedeq/theory.hpp"

#include "scopedeq/error.hpp"

namespace scopedeq {

Theory::Theory(Signature sig, std::vector<Equation> equations)
    : sig_(std::move(sig)), equations_(std::move(equations)) {
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    Equation& eq = equations_[i];
    if (eq.var_names.empty()) eq.var_names = default_var_names(eq.ctx.size());
    if (eq.var_names.size() != eq.ctx.size()) {
      throw TermError("equation " + std::to_string(i) + " (" + eq.name +
                      "): variable names do not match the context");
    }
    for (const Term* side : {&eq.lhs, &eq.rhs}) {
      auto problems = check_term(sig_, eq.ctx, eq.depth, *side);
      if (!problems.empty()) {
        throw TermError("equation " + std::to_string(i) + " (" + eq.name +
                        "): " + (side == &eq.lhs ? "left" : "right") + " side: " + problems.front());
      }
    }
  }
}

std::vector<std::string> default_var_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

}  // namespace scopedeq
