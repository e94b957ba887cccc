#include "scopedeq/equational_logic.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "scopedeq/error.hpp"

namespace scopedeq {
namespace {

bool match_rec(const Term& pattern, const Term& subject, std::vector<std::optional<Term>>& caps) {
  if (pattern.is_var()) {
    auto& slot = caps[pattern.var_index()];
    if (slot) return *slot == subject;
    slot = subject;
    return true;
  }
  if (subject.is_var() || subject.op() != pattern.op() ||
      subject.conts().size() != pattern.conts().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.conts().size(); ++i) {
    if (!match_rec(pattern.conts()[i], subject.conts()[i], caps)) return false;
  }
  return true;
}

const Term& source_side(const Equation& eq, Direction d) {
  return d == Direction::Forward ? eq.lhs : eq.rhs;
}
const Term& target_side(const Equation& eq, Direction d) {
  return d == Direction::Forward ? eq.rhs : eq.lhs;
}

// Grafting needs a term for every index; unused slots get a placeholder that
// never ends up in the result.
std::vector<Term> fill(const std::vector<std::optional<Term>>& caps) {
  std::vector<Term> out;
  out.reserve(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) out.push_back(caps[i] ? *caps[i] : Term::var(i));
  return out;
}

}  // namespace

std::optional<Match> match_pattern(const Equation& eqn, const Term& pattern, const Term& subject,
                                   std::size_t local_depth) {
  if (local_depth < eqn.depth) return std::nullopt;
  Match m;
  m.offset = local_depth - eqn.depth;
  m.captures.assign(eqn.ctx.size(), std::nullopt);
  if (!match_rec(pattern, subject, m.captures)) return std::nullopt;
  return m;
}

std::optional<Match> match_instance(const Theory& thy, const Equation& eqn, const Judgement& subject,
                                    const Position& position) {
  const Term& sub = subterm_at(subject.body(), position);
  std::size_t d = depth_at(thy.sig(), subject.body(), subject.depth(), position);
  return match_pattern(eqn, eqn.lhs, sub, d);
}

RewriteStep invert_step(const RewriteStep& step) {
  RewriteStep r = step;
  r.direction = step.direction == Direction::Forward ? Direction::Backward : Direction::Forward;
  return r;
}

Term apply_step(const Theory& thy, const CompContext& ctx, const Term& t, std::size_t root_depth,
                const RewriteStep& step) {
  if (step.equation >= thy.equations().size()) {
    throw TermError("step cites equation " + std::to_string(step.equation) + " which does not exist");
  }
  const Equation& eq = thy.equations()[step.equation];
  const Term& sub = subterm_at(t, step.position);
  std::size_t d = depth_at(thy.sig(), t, root_depth, step.position);
  auto m = match_pattern(eq, source_side(eq, step.direction), sub, d);
  if (!m) throw TermError("step does not match " + eq.name + " at the recorded position");
  if (m->offset != step.offset) throw TermError("step offset disagrees with the matched subterm");
  if (step.captures.size() != eq.ctx.size()) throw TermError("step captures have the wrong length");
  for (std::size_t i = 0; i < eq.ctx.size(); ++i) {
    if (m->captures[i]) {
      if (!step.captures[i] || !(*step.captures[i] == *m->captures[i])) {
        throw TermError("step capture for " + eq.var_names[i] + " disagrees with the subject");
      }
    }
  }
  std::vector<std::size_t> needed = free_vars(target_side(eq, step.direction));
  for (std::size_t i : needed) {
    if (!step.captures[i]) throw TermError("step leaves " + eq.var_names[i] + " uninstantiated");
    if (!m->captures[i] && !well_formed(thy.sig(), ctx, step.offset + eq.ctx[i], *step.captures[i])) {
      throw TermError("step instantiates " + eq.var_names[i] + " with an ill-formed term");
    }
  }
  Term replacement = graft(target_side(eq, step.direction), fill(step.captures));
  return replace_at(t, step.position, std::move(replacement));
}

Term replay_trace(const Theory& thy, const Judgement& start, const DerivationTrace& trace) {
  Term cur = start.body();
  for (const RewriteStep& s : trace.steps) cur = apply_step(thy, start.ctx(), cur, start.depth(), s);
  return cur;
}

namespace {

// Neighbor generation with the per-theory and per-pool work done once.
class NeighborGen {
 public:
  NeighborGen(const Theory& thy, const CompContext& ctx, const std::vector<Term>& pool)
      : thy_(thy), ctx_(ctx), pool_(pool) {
    for (const Equation& eq : thy.equations()) {
      fv_lhs_.push_back(free_vars(eq.lhs));
      fv_rhs_.push_back(free_vars(eq.rhs));
    }
  }

  // Calls visit(term, step) per neighbor in exploration order; stops early and
  // returns false once visit returns false.
  template <class Visit>
  bool each(std::size_t root_depth, const Term& t, Visit&& visit) {
    const auto& eqs = thy_.equations();
    for (const Site& site : sites(thy_.sig(), t, root_depth)) {
      const Term& sub = subterm_at(t, site.position);
      for (std::size_t e = 0; e < eqs.size(); ++e) {
        const Equation& eq = eqs[e];
        for (Direction dir : {Direction::Forward, Direction::Backward}) {
          const Term& pat = source_side(eq, dir);
          if (!pat.is_var() && (sub.is_var() || sub.op() != pat.op())) continue;
          auto m = match_pattern(eq, pat, sub, site.depth);
          if (!m) continue;
          const auto& target_vars = dir == Direction::Forward ? fv_rhs_[e] : fv_lhs_[e];
          open_.clear();
          choices_.clear();
          bool impossible = false;
          for (std::size_t v : target_vars) {
            if (m->captures[v]) continue;
            open_.push_back(v);
            choices_.push_back(&fillers_at(m->offset + eq.ctx[v]));
            if (choices_.back()->empty()) impossible = true;
          }
          if (impossible) continue;
          std::vector<std::size_t> idx(open_.size(), 0);
          for (bool more = true; more;) {
            RewriteStep step{site.position, e, dir, m->offset, m->captures};
            for (std::size_t j = 0; j < open_.size(); ++j) step.captures[open_[j]] = (*choices_[j])[idx[j]];
            Term repl = graft(target_side(eq, dir), fill(step.captures));
            if (!(repl == sub)) {
              if (!visit(replace_at(t, site.position, std::move(repl)), std::move(step))) return false;
            }
            more = false;
            for (std::size_t j = open_.size(); j-- > 0;) {
              if (++idx[j] < choices_[j]->size()) {
                more = true;
                break;
              }
              idx[j] = 0;
            }
          }
        }
      }
    }
    return true;
  }

 private:
  const std::vector<Term>& fillers_at(std::size_t depth) {
    auto it = fillers_.find(depth);
    if (it != fillers_.end()) return it->second;
    std::vector<Term> ok;
    for (const Term& c : pool_) {
      if (well_formed(thy_.sig(), ctx_, depth, c)) ok.push_back(c);
    }
    return fillers_.emplace(depth, std::move(ok)).first->second;
  }

  const Theory& thy_;
  const CompContext& ctx_;
  const std::vector<Term>& pool_;
  std::vector<std::vector<std::size_t>> fv_lhs_, fv_rhs_;
  std::map<std::size_t, std::vector<Term>> fillers_;
  std::vector<std::size_t> open_;
  std::vector<const std::vector<Term>*> choices_;
};

}  // namespace

std::vector<Neighbor> rewrite_neighbors(const Theory& thy, const CompContext& ctx,
                                        std::size_t root_depth, const Term& t,
                                        const std::vector<Term>& pool) {
  std::vector<Neighbor> out;
  NeighborGen gen(thy, ctx, pool);
  gen.each(root_depth, t, [&](Term&& u, RewriteStep&& step) {
    out.push_back({std::move(u), std::move(step)});
    return true;
  });
  return out;
}

std::vector<Term> instantiation_pool(const Signature& sig, const Term& a, const Term& b) {
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  auto push = [&](const Term& t) {
    if (seen.insert(t).second) out.push_back(t);
  };
  for (const Term& t : distinct_subterms(a)) push(t);
  for (const Term& t : distinct_subterms(b)) push(t);
  for (const auto& [name, ar] : sig) {
    if (ar.params == 0 && ar.binders.empty()) push(Term::app(name));
  }
  return out;
}

namespace {

struct Visit {
  std::optional<Term> parent;
  RewriteStep step;
};

struct SearchSide {
  std::unordered_map<Term, Visit, TermHash> seen;
  std::vector<Term> frontier;
  std::size_t layers = 0;
};

}  // namespace

EqualityResult derivably_equal(const Theory& thy, const Judgement& lhs, const Judgement& rhs,
                               const SearchOptions& options) {
  if (lhs.ctx() != rhs.ctx() || lhs.depth() != rhs.depth()) {
    throw TermError("derivable equality needs both sides over the same context and depth");
  }
  EqualityResult result;
  if (lhs.body() == rhs.body()) {
    result.kind = EqualityResult::Kind::Equal;
    return result;
  }
  const CompContext& ctx = lhs.ctx();
  std::vector<Term> pool = instantiation_pool(thy.sig(), lhs.body(), rhs.body());

  NeighborGen gen(thy, ctx, pool);
  SearchSide from_lhs, from_rhs;
  from_lhs.seen.emplace(lhs.body(), Visit{});
  from_lhs.frontier.push_back(lhs.body());
  from_rhs.seen.emplace(rhs.body(), Visit{});
  from_rhs.frontier.push_back(rhs.body());

  auto build = [&](const Term& meet) {
    std::vector<RewriteStep> head;
    for (Term cur = meet;;) {
      const Visit& v = from_lhs.seen.at(cur);
      if (!v.parent) break;
      head.push_back(v.step);
      cur = *v.parent;
    }
    std::reverse(head.begin(), head.end());
    for (Term cur = meet;;) {
      const Visit& v = from_rhs.seen.at(cur);
      if (!v.parent) break;
      head.push_back(invert_step(v.step));
      cur = *v.parent;
    }
    result.kind = EqualityResult::Kind::Equal;
    result.trace.steps = std::move(head);
  };

  while (from_lhs.layers + from_rhs.layers < options.step_bound) {
    bool forward = from_lhs.frontier.size() <= from_rhs.frontier.size();
    SearchSide& side = forward ? from_lhs : from_rhs;
    SearchSide& other = forward ? from_rhs : from_lhs;
    if (side.frontier.empty()) break;
    std::vector<Term> next;
    bool met = false, capped = false;
    for (const Term& u : side.frontier) {
      gen.each(lhs.depth(), u, [&](Term&& nb, RewriteStep&& step) {
        if (side.seen.count(nb)) return true;
        auto it = side.seen.emplace(std::move(nb), Visit{u, std::move(step)}).first;
        if (other.seen.count(it->first)) {
          build(it->first);
          met = true;
          return false;
        }
        next.push_back(it->first);
        if (from_lhs.seen.size() + from_rhs.seen.size() > options.max_nodes) {
          capped = true;
          return false;
        }
        return true;
      });
      if (met || capped) {
        result.explored = from_lhs.seen.size() + from_rhs.seen.size();
        return result;
      }
    }
    side.frontier = std::move(next);
    ++side.layers;
  }
  result.explored = from_lhs.seen.size() + from_rhs.seen.size();
  return result;
}

EqualityResult derivably_equal(const Theory& thy, const Judgement& lhs, const Judgement& rhs,
                               std::size_t step_bound) {
  SearchOptions opts;
  opts.step_bound = step_bound;
  return derivably_equal(thy, lhs, rhs, opts);
}

std::string describe_step(const Theory& thy, const RewriteStep& step) {
  std::string out = step.equation < thy.equations().size() ? thy.equations()[step.equation].name
                                                           : "eq?" + std::to_string(step.equation);
  out += step.direction == Direction::Forward ? " (left to right)" : " (right to left)";
  out += " at ";
  if (step.position.empty()) {
    out += "root";
  } else {
    for (std::size_t i = 0; i < step.position.size(); ++i) {
      if (i > 0) out += ".";
      out += std::to_string(step.position[i]);
    }
  }
  return out;
}

}  // namespace scopedeq
