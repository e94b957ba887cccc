#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scopedeq/error.hpp"
#include "scopedeq/graded.hpp"
#include "scopedeq/term.hpp"
#include "scopedeq/theory.hpp"

namespace scopedeq {

// A graded carrier with, for each O:(p | m_1..m_k) and level n, a function
// X(n+m_1) x ... x X(n+m_k) -> X(n+p).
template <class V>
struct SigmaStructure {
  Signature sig;
  GradedCarrier<V> carrier;
  // apply(op, n, args): args[i] sits at level n + m_i, the result at n + p.
  std::function<V(std::string_view op, std::size_t n, std::span<const V> args)> apply;
  // Level tag of an element; used to validate environments.
  std::function<std::size_t(const V&)> level_of;
  // Optional: draws an element of the given level, possibly outside the
  // enumerated (capped) fragment.
  std::function<V(std::size_t level, std::mt19937_64& rng)> sample;
  // Optional: rendering for reports.
  std::function<std::string(const V&)> show;
};

namespace detail {

template <class V>
V interpret_at(const SigmaStructure<V>& m, const Term& t, std::size_t n, std::size_t d,
               std::span<const V> env) {
  if (t.is_var()) return env[t.var_index()];
  const ParamArity& ar = m.sig.at(t.op());
  if (d < ar.params || t.conts().size() != ar.continuations()) {
    throw ModelError("term is ill-formed at operation `" + t.op() + "`");
  }
  std::size_t base = d - ar.params;
  std::vector<V> args;
  args.reserve(t.conts().size());
  for (std::size_t i = 0; i < t.conts().size(); ++i) {
    args.push_back(interpret_at(m, t.conts()[i], n, base + ar.binders[i], env));
  }
  return m.apply(t.op(), n + base, std::span<const V>(args));
}

}  // namespace detail

// Value of Γ | Δ ⊢ t at offset n: env[i] lives at level n + ctx[i], the
// result at n + depth. Throws ModelError on an environment mismatch.
template <class V>
V interpret(const SigmaStructure<V>& m, const CompContext& ctx, std::size_t depth, const Term& t,
            std::size_t n, std::span<const V> env) {
  if (env.size() != ctx.size()) {
    throw ModelError("environment has " + std::to_string(env.size()) + " entries for a context of " +
                     std::to_string(ctx.size()));
  }
  if (m.level_of) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (m.level_of(env[i]) != n + ctx[i]) {
        throw ModelError("environment entry " + std::to_string(i) + " has level " +
                         std::to_string(m.level_of(env[i])) + ", expected " +
                         std::to_string(n + ctx[i]));
      }
    }
  }
  return detail::interpret_at(m, t, n, depth, env);
}

template <class V>
V interpret(const SigmaStructure<V>& m, const Judgement& j, std::size_t n, std::span<const V> env) {
  return interpret(m, j.ctx(), j.depth(), j.body(), n, env);
}

struct ModelCheckBudget {
  std::size_t max_offset = 2;
  // Environments per (equation, offset) enumerated exhaustively; above this
  // the check samples.
  std::size_t exhaustive_limit = 200000;
  std::size_t samples = 4000;
  // Sampled environments added to exhaustive runs when the structure has a
  // sampler (reaches elements beyond the enumerated caps).
  std::size_t extra_samples = 500;
  // Levels larger than this are never realized; their elements are sampled.
  std::size_t realize_limit = 100000;
  std::uint64_t seed = 1;
  std::size_t max_reported = 16;
};

template <class V>
struct ModelViolation {
  std::size_t equation;
  std::string name;
  std::size_t offset;
  std::vector<V> env;
  V lhs;
  V rhs;
};

template <class V>
struct ModelCheckReport {
  std::vector<ModelViolation<V>> violations;
  std::size_t environments = 0;
  // True when every (equation, offset) pair was enumerated completely.
  bool exhaustive = true;

  bool empty() const { return violations.empty(); }
};

// Compares both sides of every equation at offsets 0..max_offset. Each
// (equation, offset) pair is checked on all environments when the product of
// the needed carrier levels is within budget, and on seeded random
// environments otherwise.
template <class V>
ModelCheckReport<V> check_model(const SigmaStructure<V>& m, const Theory& thy,
                                const ModelCheckBudget& budget) {
  ModelCheckReport<V> report;
  const auto& eqs = thy.equations();
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const Equation& eq = eqs[e];
    std::vector<bool> used(eq.ctx.size(), false);
    for (std::size_t v : free_vars(eq.lhs)) used[v] = true;
    for (std::size_t v : free_vars(eq.rhs)) used[v] = true;

    for (std::size_t n = 0; n <= budget.max_offset; ++n) {
      std::mt19937_64 rng(budget.seed ^ (0x9e3779b97f4a7c15ULL * (e + 1)) ^ (n * 0xbf58476d1ce4e5b9ULL));
      std::vector<std::size_t> counts(eq.ctx.size(), 1);
      std::size_t product = 1;
      bool vacuous = false;
      bool realizable = true;
      for (std::size_t i = 0; i < eq.ctx.size(); ++i) {
        std::size_t c = m.carrier.count(n + eq.ctx[i]);
        if (!used[i]) {
          if (c == 0 && !m.sample) vacuous = true;
          continue;
        }
        if (c == 0) vacuous = true;
        if (c > budget.realize_limit) realizable = false;
        counts[i] = c;
        product = saturating_mul(product, c);
      }
      if (vacuous) continue;

      auto pick_unused = [&](std::size_t i) -> V {
        std::size_t level = n + eq.ctx[i];
        if (m.carrier.count(level) > 0 && m.carrier.count(level) <= budget.realize_limit) {
          return m.carrier.at_level(level).front();
        }
        return m.sample(level, rng);
      };
      auto check_env = [&](const std::vector<V>& env) {
        ++report.environments;
        V l = interpret(m, eq.ctx, eq.depth, eq.lhs, n, std::span<const V>(env));
        V r = interpret(m, eq.ctx, eq.depth, eq.rhs, n, std::span<const V>(env));
        if (!(l == r) && report.violations.size() < budget.max_reported) {
          report.violations.push_back({e, eq.name, n, env, std::move(l), std::move(r)});
        }
        return l == r;
      };
      auto random_env = [&](bool prefer_enumerated) {
        std::vector<V> env;
        env.reserve(eq.ctx.size());
        for (std::size_t i = 0; i < eq.ctx.size(); ++i) {
          std::size_t level = n + eq.ctx[i];
          if (!used[i]) {
            env.push_back(pick_unused(i));
            continue;
          }
          bool enumerated = counts[i] <= budget.realize_limit;
          bool coin = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
          if (enumerated && (!m.sample || (prefer_enumerated && coin))) {
            const auto& all = m.carrier.at_level(level);
            env.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
          } else if (m.sample) {
            env.push_back(m.sample(level, rng));
          } else {
            throw ModelError("level " + std::to_string(level) + " is too large to enumerate and has no sampler");
          }
        }
        return env;
      };

      if (realizable && product <= budget.exhaustive_limit) {
        std::vector<const std::vector<V>*> levels(eq.ctx.size(), nullptr);
        std::vector<V> env;
        for (std::size_t i = 0; i < eq.ctx.size(); ++i) {
          if (used[i]) {
            levels[i] = &m.carrier.at_level(n + eq.ctx[i]);
            env.push_back(levels[i]->front());
          } else {
            env.push_back(pick_unused(i));
          }
        }
        std::vector<std::size_t> idx(eq.ctx.size(), 0);
        for (bool more = true; more;) {
          for (std::size_t i = 0; i < eq.ctx.size(); ++i) {
            if (used[i]) env[i] = (*levels[i])[idx[i]];
          }
          check_env(env);
          more = false;
          for (std::size_t i = eq.ctx.size(); i-- > 0;) {
            if (!used[i]) continue;
            if (++idx[i] < levels[i]->size()) {
              more = true;
              break;
            }
            idx[i] = 0;
          }
        }
        if (m.sample) {
          for (std::size_t s = 0; s < budget.extra_samples; ++s) check_env(random_env(true));
        }
      } else {
        report.exhaustive = false;
        for (std::size_t s = 0; s < budget.samples; ++s) check_env(random_env(true));
      }
    }
  }
  return report;
}

template <class V>
std::string describe_violation(const SigmaStructure<V>& m, const ModelViolation<V>& v) {
  std::string out = "equation " + std::to_string(v.equation) + " (" + v.name + ") fails at offset " +
                    std::to_string(v.offset);
  if (m.show) {
    out += ":";
    for (std::size_t i = 0; i < v.env.size(); ++i) out += " x" + std::to_string(i + 1) + "=" + m.show(v.env[i]);
    out += " gives " + m.show(v.lhs) + " vs " + m.show(v.rhs);
  }
  return out;
}

}  // namespace scopedeq
