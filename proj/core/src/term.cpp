#include "scopedeq/term.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "scopedeq/error.hpp"

namespace scopedeq {
namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string position_string(const Position& pos) {
  std::string out = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i > 0) out += ".";
    out += std::to_string(pos[i]);
  }
  return out + "]";
}

void check_rec(const Signature& sig, const CompContext& ctx, std::size_t depth, const Term& t,
               Position& pos, std::vector<std::string>& report) {
  if (t.is_var()) {
    const std::size_t i = t.var_index();
    if (i >= ctx.size()) {
      report.push_back("at " + position_string(pos) + ": variable #" + std::to_string(i) +
                       " is outside a context of length " + std::to_string(ctx.size()));
    } else if (ctx[i] != depth) {
      report.push_back("at " + position_string(pos) + ": variable #" + std::to_string(i) +
                       " of arity " + std::to_string(ctx[i]) + " used with " +
                       std::to_string(depth) + " parameters on the stack");
    }
    return;
  }
  const ParamArity* arity = sig.find(t.op());
  if (arity == nullptr) {
    report.push_back("at " + position_string(pos) + ": unknown operation '" + t.op() + "'");
    return;
  }
  if (t.conts().size() != arity->continuations()) {
    report.push_back("at " + position_string(pos) + ": '" + t.op() + "' expects " +
                     std::to_string(arity->continuations()) + " continuations, got " +
                     std::to_string(t.conts().size()));
    return;
  }
  if (depth < arity->params) {
    report.push_back("at " + position_string(pos) + ": stack underflow, '" + t.op() +
                     "' consumes " + std::to_string(arity->params) + " parameters but " +
                     std::to_string(depth) + " are open");
    return;
  }
  for (std::size_t i = 0; i < t.conts().size(); ++i) {
    pos.push_back(i);
    check_rec(sig, ctx, depth - arity->params + arity->binders[i], t.conts()[i], pos, report);
    pos.pop_back();
  }
}

bool well_formed_rec(const Signature& sig, const CompContext& ctx, std::size_t depth,
                     const Term& t) {
  if (t.is_var()) return t.var_index() < ctx.size() && ctx[t.var_index()] == depth;
  const ParamArity* arity = sig.find(t.op());
  if (arity == nullptr || t.conts().size() != arity->continuations() || depth < arity->params) {
    return false;
  }
  for (std::size_t i = 0; i < t.conts().size(); ++i) {
    if (!well_formed_rec(sig, ctx, depth - arity->params + arity->binders[i], t.conts()[i])) {
      return false;
    }
  }
  return true;
}

Term graft_rec(const Term& t, std::span<const Term> args) {
  if (t.is_var()) return args[t.var_index()];
  std::vector<Term> conts;
  conts.reserve(t.conts().size());
  bool changed = false;
  for (const Term& c : t.conts()) {
    conts.push_back(graft_rec(c, args));
    changed = changed || !(conts.back() == c);
  }
  if (!changed) return t;
  return Term::app(t.op(), std::move(conts));
}

class Enumerator {
 public:
  Enumerator(const Signature& sig, const CompContext& ctx) : sig_(sig), ctx_(ctx) {}

  // Terms at `depth` with exactly `size` App nodes.
  const std::vector<Term>& exact(std::size_t depth, std::size_t size) {
    auto key = std::make_pair(depth, size);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Term> out;
    if (size == 0) {
      for (std::size_t i = 0; i < ctx_.size(); ++i) {
        if (ctx_[i] == depth) out.push_back(Term::var(i));
      }
    } else {
      for (const auto& [name, arity] : sig_) {
        if (depth < arity.params) continue;
        std::vector<std::size_t> child_depths;
        for (std::size_t m : arity.binders) child_depths.push_back(depth - arity.params + m);
        std::vector<Term> prefix;
        distribute(name, child_depths, 0, size - 1, prefix, out);
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void distribute(const std::string& op, const std::vector<std::size_t>& depths, std::size_t i,
                  std::size_t remaining, std::vector<Term>& prefix, std::vector<Term>& out) {
    if (i == depths.size()) {
      if (remaining == 0) out.push_back(Term::app(op, prefix));
      return;
    }
    const bool last = i + 1 == depths.size();
    for (std::size_t s = last ? remaining : 0; s <= remaining; ++s) {
      // Copy: the recursive call may grow memo_ and invalidate references.
      const std::vector<Term> options = exact(depths[i], s);
      for (const Term& child : options) {
        prefix.push_back(child);
        distribute(op, depths, i + 1, remaining - s, prefix, out);
        prefix.pop_back();
      }
    }
  }

  const Signature& sig_;
  const CompContext& ctx_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> memo_;
};

}  // namespace

Term Term::var(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->index = index;
  node->hash = mix(0x51ed270b27a1c3a5ULL, index);
  return Term(std::move(node));
}

Term Term::app(std::string op, std::vector<Term> conts) {
  auto node = std::make_shared<Node>();
  node->hash = std::hash<std::string>{}(op);
  node->size = 1;
  for (const Term& c : conts) {
    node->hash = mix(node->hash, c.hash());
    node->size += c.size();
  }
  node->op = std::move(op);
  node->conts = std::move(conts);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.var_index() == b.var_index();
  if (a.op() != b.op() || a.conts().size() != b.conts().size()) return false;
  for (std::size_t i = 0; i < a.conts().size(); ++i) {
    if (!(a.conts()[i] == b.conts()[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var()) {
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_var()) return a.var_index() <=> b.var_index();
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.conts().begin(), a.conts().end(),
                                                b.conts().begin(), b.conts().end());
}

bool well_formed(const Signature& sig, const CompContext& ctx, std::size_t depth, const Term& t) {
  return well_formed_rec(sig, ctx, depth, t);
}

std::vector<std::string> check_term(const Signature& sig, const CompContext& ctx,
                                    std::size_t depth, const Term& t) {
  std::vector<std::string> report;
  Position pos;
  check_rec(sig, ctx, depth, t, pos, report);
  return report;
}

Judgement::Judgement(const Signature& sig, CompContext ctx, std::size_t depth, Term body)
    : ctx_(std::move(ctx)), depth_(depth), body_(std::move(body)) {
  if (auto report = check_term(sig, ctx_, depth_, body_); !report.empty()) {
    throw TermError("ill-formed term: " + join(report, "; "));
  }
}

Term graft(const Term& t, std::span<const Term> args) { return graft_rec(t, args); }

Judgement substitute(const Signature& sig, const Judgement& target, const CompContext& outer_ctx,
                     std::size_t outer_depth, std::span<const Term> args) {
  const CompContext& ctx = target.ctx();
  if (args.size() != ctx.size()) {
    throw TermError("substitution expects " + std::to_string(ctx.size()) + " arguments, got " +
                    std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (auto report = check_term(sig, outer_ctx, outer_depth + ctx[i], args[i]); !report.empty()) {
      throw TermError("substitution argument " + std::to_string(i) + " is ill-formed at depth " +
                      std::to_string(outer_depth + ctx[i]) + ": " + join(report, "; "));
    }
  }
  return Judgement(sig, outer_ctx, outer_depth + target.depth(), graft(target.body(), args));
}

Judgement weaken(const Signature& sig, const Judgement& j, std::size_t extra) {
  CompContext ctx = j.ctx();
  std::vector<Term> args;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    ctx[i] += extra;
    args.push_back(Term::var(i));
  }
  return substitute(sig, j, ctx, extra, args);
}

std::vector<Term> enumerate_terms(const Signature& sig, const CompContext& ctx,
                                  std::size_t depth, std::size_t size_bound) {
  Enumerator e(sig, ctx);
  std::vector<Term> out;
  for (std::size_t s = 0; s <= size_bound; ++s) {
    std::vector<Term> layer = e.exact(depth, s);
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

const Term& subterm_at(const Term& t, std::span<const std::size_t> pos) {
  const Term* cur = &t;
  for (std::size_t i : pos) {
    if (cur->is_var() || i >= cur->conts().size()) throw TermError("invalid position");
    cur = &cur->conts()[i];
  }
  return *cur;
}

Term replace_at(const Term& t, std::span<const std::size_t> pos, Term replacement) {
  if (pos.empty()) return replacement;
  if (t.is_var() || pos.front() >= t.conts().size()) throw TermError("invalid position");
  std::vector<Term> conts(t.conts().begin(), t.conts().end());
  conts[pos.front()] = replace_at(conts[pos.front()], pos.subspan(1), std::move(replacement));
  return Term::app(t.op(), std::move(conts));
}

std::size_t depth_at(const Signature& sig, const Term& t, std::size_t root_depth,
                     std::span<const std::size_t> pos) {
  const Term* cur = &t;
  std::size_t depth = root_depth;
  for (std::size_t i : pos) {
    if (cur->is_var() || i >= cur->conts().size()) throw TermError("invalid position");
    const ParamArity& arity = sig.at(cur->op());
    if (depth < arity.params) throw TermError("stack underflow below '" + cur->op() + "'");
    depth = depth - arity.params + arity.binders.at(i);
    cur = &cur->conts()[i];
  }
  return depth;
}

namespace {
void sites_rec(const Signature& sig, const Term& t, std::size_t depth, Position& pos,
               std::vector<Site>& out) {
  out.push_back({pos, depth});
  if (t.is_var()) return;
  const ParamArity& arity = sig.at(t.op());
  for (std::size_t i = 0; i < t.conts().size(); ++i) {
    pos.push_back(i);
    sites_rec(sig, t.conts()[i], depth - arity.params + arity.binders.at(i), pos, out);
    pos.pop_back();
  }
}

void subterms_rec(const Term& t, std::vector<Term>& out, std::set<Term>& seen) {
  if (seen.insert(t).second) out.push_back(t);
  if (!t.is_var()) {
    for (const Term& c : t.conts()) subterms_rec(c, out, seen);
  }
}

void vars_rec(const Term& t, std::set<std::size_t>& out) {
  if (t.is_var()) {
    out.insert(t.var_index());
    return;
  }
  for (const Term& c : t.conts()) vars_rec(c, out);
}
}  // namespace

std::vector<Site> sites(const Signature& sig, const Term& t, std::size_t root_depth) {
  std::vector<Site> out;
  Position pos;
  sites_rec(sig, t, root_depth, pos, out);
  return out;
}

std::vector<Term> distinct_subterms(const Term& t) {
  std::vector<Term> out;
  std::set<Term> seen;
  subterms_rec(t, out, seen);
  return out;
}

std::vector<std::size_t> free_vars(const Term& t) {
  std::set<std::size_t> vars;
  vars_rec(t, vars);
  return {vars.begin(), vars.end()};
}

Term rename_vars(const Term& t, std::span<const std::size_t> mapping) {
  if (t.is_var()) return Term::var(mapping[t.var_index()]);
  std::vector<Term> conts;
  conts.reserve(t.conts().size());
  for (const Term& c : t.conts()) conts.push_back(rename_vars(c, mapping));
  return Term::app(t.op(), std::move(conts));
}

std::string debug_string(const Term& t) {
  if (t.is_var()) return "#" + std::to_string(t.var_index());
  if (t.conts().empty()) return t.op();
  std::vector<std::string> parts;
  for (const Term& c : t.conts()) parts.push_back(debug_string(c));
  return t.op() + "(" + join(parts, ", ") + ")";
}

}  // namespace scopedeq
