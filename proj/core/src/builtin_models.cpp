#include "scopedeq/builtin_models.hpp"

#include <algorithm>
#include <array>

#include "scopedeq/builtin_theories.hpp"
#include "scopedeq/error.hpp"

namespace scopedeq {

namespace {

template <class T>
std::strong_ordering compare_seq(const std::vector<T>& a, const std::vector<T>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::strong_ordering operator<=>(const ListVal& a, const ListVal& b) {
  if (auto c = a.level <=> b.level; c != 0) return c;
  if (auto c = a.star <=> b.star; c != 0) return c;
  if (auto c = compare_seq(a.gens, b.gens); c != 0) return c;
  return compare_seq(a.items, b.items);
}

std::strong_ordering operator<=>(const StateVal& a, const StateVal& b) {
  if (auto c = a.level <=> b.level; c != 0) return c;
  if (auto c = a.gen <=> b.gen; c != 0) return c;
  if (auto c = a.bit <=> b.bit; c != 0) return c;
  return compare_seq(a.next, b.next);
}

namespace {

constexpr std::size_t kEnumerationLimit = 5000000;

const ListVal& as_list(const SemValue& v) {
  if (const auto* p = std::get_if<ListVal>(&v)) return *p;
  throw ModelError("expected a list value");
}
const ExcVal& as_exc(const SemValue& v) {
  if (const auto* p = std::get_if<ExcVal>(&v)) return *p;
  throw ModelError("expected an exception value");
}
const StateVal& as_state(const SemValue& v) {
  if (const auto* p = std::get_if<StateVal>(&v)) return *p;
  throw ModelError("expected a state value");
}

bool is_list_kind(ModelKind k) { return k == ModelKind::Once || k == ModelKind::Cut; }

[[noreturn]] void unknown_op(ModelKind kind, std::string_view op) {
  throw ModelError("operation `" + std::string(op) + "` is not interpreted by the " +
                   std::string(to_string(kind)) + " model");
}

ListVal concat(const ListVal& a, const ListVal& b) {
  ListVal out{a.level, false, a.gens, a.items};
  out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
  out.items.insert(out.items.end(), b.items.begin(), b.items.end());
  return out;
}

ListVal cut_or(const ListVal& xs, const ListVal& ys) {
  if (xs.star) return xs;
  ListVal out = concat(xs, ys);
  out.star = ys.star;
  return out;
}

SemValue apply_list(ModelKind kind, std::string_view op, std::size_t n, std::span<const SemValue> a) {
  if (op == "fail") return ListVal{n, false, {}, {}};
  if (op == "close") return ListVal{n + 1, false, {}, {as_list(a[0])}};
  if (op == "or") {
    return kind == ModelKind::Once ? concat(as_list(a[0]), as_list(a[1]))
                                   : cut_or(as_list(a[0]), as_list(a[1]));
  }
  if (kind == ModelKind::Once && op == "once") {
    const ListVal& xs = as_list(a[0]);
    if (xs.items.empty()) return ListVal{n, false, {}, {}};
    return xs.items.front();
  }
  if (kind == ModelKind::Cut && op == "cut") {
    ListVal xs = as_list(a[0]);
    xs.star = true;
    return xs;
  }
  if (kind == ModelKind::Cut && op == "scope") {
    const ListVal& xs = as_list(a[0]);
    ListVal acc{n, false, {}, {}};
    for (auto it = xs.items.rbegin(); it != xs.items.rend(); ++it) acc = cut_or(*it, acc);
    return acc;
  }
  unknown_op(kind, op);
}

SemValue apply_catch(std::string_view op, std::size_t n, std::span<const SemValue> a) {
  if (op == "throw") return ExcVal{n, true, n};
  if (op == "close") {
    ExcVal x = as_exc(a[0]);
    x.level = n + 1;
    return x;
  }
  if (op == "catch") {
    const ExcVal& x = as_exc(a[0]);
    const ExcVal& y = as_exc(a[1]);
    auto top = [n](const ExcVal& v) { return v.marker && v.index == n + 1; };
    if (!top(x)) return ExcVal{n, x.marker, x.index};
    if (!top(y)) return ExcVal{n, y.marker, y.index};
    return ExcVal{n, true, n};
  }
  unknown_op(ModelKind::Catch, op);
}

StateVal copy_entry(const StateVal& f, std::size_t i) {
  StateVal out{f.level, {f.gen[i], f.gen[i]}, {f.bit[i], f.bit[i]}, {}};
  if (f.level > 0) out.next = {f.next[i], f.next[i]};
  return out;
}

SemValue apply_state(ModelKind kind, std::string_view op, std::size_t n, std::span<const SemValue> a) {
  if (op == "local0" || op == "local1") {
    const StateVal& f = as_state(a[0]);
    return f.next.at(op == "local0" ? 0 : 1);
  }
  if (op == "close") {
    const StateVal& f = as_state(a[0]);
    StateVal out{n + 1, {}, {}, {f, f}};
    if (kind == ModelKind::StatePrime) out.bit = {false, true};
    return out;
  }
  if (op == "put0" || op == "put1") return copy_entry(as_state(a[0]), op == "put0" ? 0 : 1);
  if (op == "get") {
    const StateVal& f = as_state(a[0]);
    const StateVal& g = as_state(a[1]);
    StateVal out{n, {f.gen[0], g.gen[1]}, {f.bit[0], g.bit[1]}, {}};
    if (n > 0) out.next = {f.next[0], g.next[1]};
    return out;
  }
  unknown_op(kind, op);
}

SemValue apply_op(ModelKind kind, std::string_view op, std::size_t n, std::span<const SemValue> a) {
  switch (kind) {
    case ModelKind::Once:
    case ModelKind::Cut:
      return apply_list(kind, op, n, a);
    case ModelKind::Catch:
      return apply_catch(op, n, a);
    case ModelKind::State:
    case ModelKind::StatePrime:
      return apply_state(kind, op, n, a);
  }
  throw ModelError("unknown model");
}

std::size_t list_count(std::size_t base, std::size_t cap) {
  std::size_t total = 0, power = 1;
  for (std::size_t l = 0; l <= cap; ++l) {
    total = saturating_add(total, power);
    power = saturating_mul(power, base);
  }
  return total;
}

std::size_t value_count(ModelKind kind, std::size_t level, const ModelOptions& o) {
  std::size_t g = o.gens;
  switch (kind) {
    case ModelKind::Once: {
      std::size_t c = list_count(g, o.list_cap);
      for (std::size_t i = 0; i < level; ++i) c = list_count(c, o.list_cap);
      return c;
    }
    case ModelKind::Cut: {
      std::size_t c = saturating_mul(2, list_count(g, o.list_cap));
      for (std::size_t i = 0; i < level; ++i) c = saturating_mul(2, list_count(c, o.list_cap));
      return c;
    }
    case ModelKind::Catch:
      return g + level + 1;
    case ModelKind::State:
    case ModelKind::StatePrime: {
      std::size_t c = saturating_mul(2 * g, 2 * g);
      for (std::size_t i = 0; i < level; ++i) {
        std::size_t entry = kind == ModelKind::State ? c : saturating_mul(2, c);
        c = saturating_mul(entry, entry);
      }
      return c;
    }
  }
  return 0;
}

template <class T>
std::vector<std::vector<T>> sequences(const std::vector<T>& elems, std::size_t cap) {
  std::vector<std::vector<T>> out{{}};
  std::vector<std::vector<T>> layer{{}};
  for (std::size_t l = 1; l <= cap; ++l) {
    std::vector<std::vector<T>> next;
    for (const auto& prefix : layer) {
      for (const T& e : elems) {
        auto s = prefix;
        s.push_back(e);
        next.push_back(std::move(s));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<SemValue> enumerate_impl(ModelKind kind, std::size_t level, const ModelOptions& o) {
  std::vector<SemValue> out;
  if (kind == ModelKind::Catch) {
    for (Generator g = 0; g < o.gens; ++g) out.push_back(ExcVal{level, false, g});
    for (std::size_t i = 0; i <= level; ++i) out.push_back(ExcVal{level, true, i});
    return out;
  }
  if (is_list_kind(kind)) {
    std::vector<ListVal> base;
    if (level == 0) {
      std::vector<Generator> gens;
      for (Generator g = 0; g < o.gens; ++g) gens.push_back(g);
      for (auto& seq : sequences(gens, o.list_cap)) base.push_back(ListVal{0, false, seq, {}});
    } else {
      std::vector<ListVal> lower;
      for (SemValue& v : enumerate_impl(kind, level - 1, o)) lower.push_back(std::get<ListVal>(std::move(v)));
      for (auto& seq : sequences(lower, o.list_cap)) base.push_back(ListVal{level, false, {}, seq});
    }
    for (ListVal& l : base) {
      out.push_back(l);
      if (kind == ModelKind::Cut) {
        l.star = true;
        out.push_back(std::move(l));
      }
    }
    return out;
  }
  // State kinds: functions 2 -> entry, enumerated as (entry 0, entry 1).
  if (level == 0) {
    for (Generator g0 = 0; g0 < o.gens; ++g0)
      for (int b0 = 0; b0 < 2; ++b0)
        for (Generator g1 = 0; g1 < o.gens; ++g1)
          for (int b1 = 0; b1 < 2; ++b1)
            out.push_back(StateVal{0, {g0, g1}, {b0 == 1, b1 == 1}, {}});
    return out;
  }
  std::vector<StateVal> lower;
  for (SemValue& v : enumerate_impl(kind, level - 1, o)) lower.push_back(std::get<StateVal>(std::move(v)));
  int bits = kind == ModelKind::StatePrime ? 2 : 1;
  for (const StateVal& f0 : lower)
    for (int b0 = 0; b0 < bits; ++b0)
      for (const StateVal& f1 : lower)
        for (int b1 = 0; b1 < bits; ++b1)
          out.push_back(StateVal{level, {}, {b0 == 1, b1 == 1}, {f0, f1}});
  return out;
}

SemValue sample_impl(ModelKind kind, std::size_t level, const ModelOptions& o, std::mt19937_64& rng) {
  auto below = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::size_t g = std::max<std::size_t>(o.gens, 1);
  if (kind == ModelKind::Catch) {
    std::size_t pick = below(o.gens + level + 1);
    if (pick < o.gens) return ExcVal{level, false, pick};
    return ExcVal{level, true, pick - o.gens};
  }
  if (is_list_kind(kind)) {
    ListVal l{level, false, {}, {}};
    std::size_t len = below(o.list_cap + 3);
    for (std::size_t i = 0; i < len; ++i) {
      if (level == 0) {
        l.gens.push_back(below(g));
      } else {
        l.items.push_back(std::get<ListVal>(sample_impl(kind, level - 1, o, rng)));
      }
    }
    if (kind == ModelKind::Cut) l.star = below(2) == 1;
    return l;
  }
  StateVal f{level, {}, {}, {}};
  if (level == 0) {
    f.gen = {below(g), below(g)};
    f.bit = {below(2) == 1, below(2) == 1};
    return f;
  }
  f.next = {std::get<StateVal>(sample_impl(kind, level - 1, o, rng)),
            std::get<StateVal>(sample_impl(kind, level - 1, o, rng))};
  if (kind == ModelKind::StatePrime) f.bit = {below(2) == 1, below(2) == 1};
  return f;
}

Term close_over(Term t) { return Term::app(std::string(kCloseOp), {std::move(t)}); }

Term reify_list(const ListVal& v) {
  if (v.star) {
    ListVal plain = v;
    plain.star = false;
    return Term::app("cut", {reify_list(plain)});
  }
  if (v.length() == 0) return Term::app("fail");
  ListVal rest{v.level, false, {}, {}};
  Term head = Term::var(0);
  if (v.level == 0) {
    head = Term::var(v.gens.front());
    rest.gens.assign(v.gens.begin() + 1, v.gens.end());
  } else {
    head = close_over(reify_list(v.items.front()));
    rest.items.assign(v.items.begin() + 1, v.items.end());
  }
  return Term::app("or", {std::move(head), reify_list(rest)});
}

Term reify_state(ModelKind kind, const StateVal& f) {
  auto put = [](bool b, Term t) { return Term::app(b ? "put1" : "put0", {std::move(t)}); };
  if (f.level == 0) {
    return Term::app("get", {put(f.bit[0], Term::var(f.gen[0])), put(f.bit[1], Term::var(f.gen[1]))});
  }
  std::array<Term, 2> branch = {close_over(reify_state(kind, f.next[0])),
                                close_over(reify_state(kind, f.next[1]))};
  if (kind == ModelKind::StatePrime) {
    branch[0] = put(f.bit[0], branch[0]);
    branch[1] = put(f.bit[1], branch[1]);
  }
  return Term::app("get", {branch[0], branch[1]});
}

const SigmaStructure<SemValue>& op_structure(ModelKind kind) {
  static const std::array<SigmaStructure<SemValue>, 5> all = {
      builtin_model(ModelKind::Once, {1, 0}), builtin_model(ModelKind::Catch, {1, 0}),
      builtin_model(ModelKind::State, {1, 0}), builtin_model(ModelKind::StatePrime, {1, 0}),
      builtin_model(ModelKind::Cut, {1, 0})};
  return all[static_cast<std::size_t>(kind)];
}

std::string gen_name(Generator g, const std::vector<std::string>& names) {
  return g < names.size() ? names[g] : std::to_string(g + 1);
}

}  // namespace

std::size_t level_of(const SemValue& v) {
  return std::visit([](const auto& x) { return x.level; }, v);
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Once: return "once";
    case ModelKind::Catch: return "catch";
    case ModelKind::State: return "state";
    case ModelKind::StatePrime: return "state_prime";
    case ModelKind::Cut: return "cut";
  }
  return "?";
}

ModelKind model_for_theory(std::string_view name) {
  if (name == "nondet_once") return ModelKind::Once;
  if (name == "exceptions") return ModelKind::Catch;
  if (name == "state_local") return ModelKind::State;
  if (name == "state_local_noclose") return ModelKind::StatePrime;
  if (name == "nondet_cut") return ModelKind::Cut;
  throw Error("no free model is available for theory `" + std::string(name) + "`");
}

std::string_view theory_for_model(ModelKind kind) {
  switch (kind) {
    case ModelKind::Once: return "nondet_once";
    case ModelKind::Catch: return "exceptions";
    case ModelKind::State: return "state_local";
    case ModelKind::StatePrime: return "state_local_noclose";
    case ModelKind::Cut: return "nondet_cut";
  }
  return "?";
}

SigmaStructure<SemValue> builtin_model(ModelKind kind, const ModelOptions& options) {
  SigmaStructure<SemValue> m;
  m.sig = builtin_theory(theory_for_model(kind)).sig();
  m.carrier = GradedCarrier<SemValue>(
      [kind, options](std::size_t n) {
        if (value_count(kind, n, options) > kEnumerationLimit) {
          throw ModelError("level " + std::to_string(n) + " of the " + std::string(to_string(kind)) +
                           " carrier is too large to enumerate");
        }
        return enumerate_impl(kind, n, options);
      },
      [kind, options](std::size_t n) { return value_count(kind, n, options); });
  m.apply = [kind](std::string_view op, std::size_t n, std::span<const SemValue> args) {
    return apply_op(kind, op, n, args);
  };
  m.level_of = [](const SemValue& v) { return level_of(v); };
  m.sample = [kind, options](std::size_t level, std::mt19937_64& rng) {
    return sample_impl(kind, level, options, rng);
  };
  m.show = [kind](const SemValue& v) { return show_value(kind, v); };
  return m;
}

SigmaStructure<SemValue> model_once(std::size_t gens, std::size_t list_cap) {
  return builtin_model(ModelKind::Once, {gens, list_cap});
}
SigmaStructure<SemValue> model_catch(std::size_t gens) { return builtin_model(ModelKind::Catch, {gens, 0}); }
SigmaStructure<SemValue> model_state(std::size_t gens) { return builtin_model(ModelKind::State, {gens, 0}); }
SigmaStructure<SemValue> model_state_prime(std::size_t gens) {
  return builtin_model(ModelKind::StatePrime, {gens, 0});
}
SigmaStructure<SemValue> model_cut(std::size_t gens, std::size_t list_cap) {
  return builtin_model(ModelKind::Cut, {gens, list_cap});
}

SemValue unit_value(ModelKind kind, Generator g) {
  switch (kind) {
    case ModelKind::Once:
    case ModelKind::Cut:
      return ListVal{0, false, {g}, {}};
    case ModelKind::Catch:
      return ExcVal{0, false, g};
    case ModelKind::State:
    case ModelKind::StatePrime:
      return StateVal{0, {g, g}, {false, true}, {}};
  }
  throw ModelError("unknown model");
}

SemValue eval_rho(ModelKind kind, const Signature& sig, const Judgement& j) {
  (void)sig;
  std::vector<SemValue> env;
  for (std::size_t i = 0; i < j.ctx().size(); ++i) {
    if (j.ctx()[i] != 0) throw ModelError("evaluation needs a context of arity-0 variables");
    env.push_back(unit_value(kind, i));
  }
  return interpret(op_structure(kind), j, 0, std::span<const SemValue>(env));
}

Judgement reify(ModelKind kind, const Signature& sig, std::size_t gens, const SemValue& v) {
  Term t = Term::var(0);
  if (is_list_kind(kind)) {
    const ListVal& l = as_list(v);
    if (l.star && kind != ModelKind::Cut) throw ModelError("starred list outside the cut model");
    t = reify_list(l);
  } else if (kind == ModelKind::Catch) {
    const ExcVal& e = as_exc(v);
    if (e.marker && e.index > e.level) throw ModelError("marker index exceeds its level");
    t = e.marker ? Term::app("throw") : Term::var(e.index);
    std::size_t closes = e.marker ? e.level - e.index : e.level;
    for (std::size_t i = 0; i < closes; ++i) t = close_over(std::move(t));
  } else {
    t = reify_state(kind, as_state(v));
  }
  return Judgement(sig, CompContext(gens, 0), level_of(v), std::move(t));
}

bool decide_equal_via_model(ModelKind kind, const Signature& sig, const Judgement& lhs,
                            const Judgement& rhs) {
  if (lhs.ctx() != rhs.ctx() || lhs.depth() != rhs.depth()) {
    throw TermError("model comparison needs both sides over the same context and depth");
  }
  return eval_rho(kind, sig, lhs) == eval_rho(kind, sig, rhs);
}

std::vector<SemValue> enumerate_values(ModelKind kind, std::size_t level, const ModelOptions& options) {
  if (value_count(kind, level, options) > kEnumerationLimit) {
    throw ModelError("level " + std::to_string(level) + " is too large to enumerate");
  }
  return enumerate_impl(kind, level, options);
}

std::vector<std::string> roundtrip_check(ModelKind kind, const RoundtripOptions& o) {
  std::vector<std::string> report;
  const std::size_t max_report = 20;
  Signature sig = builtin_theory(theory_for_model(kind)).sig();
  ModelOptions mo{o.gens, o.list_cap};
  for (std::size_t level = 0; level <= o.level_bound; ++level) {
    for (const SemValue& v : enumerate_values(kind, level, mo)) {
      SemValue back = eval_rho(kind, sig, reify(kind, sig, o.gens, v));
      if (!(back == v) && report.size() < max_report) {
        report.push_back("level " + std::to_string(level) + ": eval(reify(" + show_value(kind, v) +
                         ")) = " + show_value(kind, back));
      }
    }
    CompContext ctx(o.gens, 0);
    for (const Term& t : enumerate_terms(sig, ctx, level, o.term_size)) {
      Judgement j(sig, ctx, level, t);
      SemValue v = eval_rho(kind, sig, j);
      Judgement nf = reify(kind, sig, o.gens, v);
      if (!(eval_rho(kind, sig, nf) == v) && report.size() < max_report) {
        report.push_back("level " + std::to_string(level) + ": normal form of " + debug_string(t) +
                         " changes its value");
      }
      if (!(reify(kind, sig, o.gens, eval_rho(kind, sig, nf)) == nf) && report.size() < max_report) {
        report.push_back("level " + std::to_string(level) + ": normal form of " + debug_string(t) +
                         " is not stable");
      }
    }
  }
  return report;
}

std::vector<std::string> state_models_agree(std::size_t size_bound, std::size_t max_vars,
                                            std::size_t gens) {
  std::vector<std::string> report;
  const auto& lhs_model = op_structure(ModelKind::State);
  const auto& rhs_model = op_structure(ModelKind::StatePrime);
  Signature sig = builtin_theory("state_local").sig();
  std::vector<SemValue> values = enumerate_values(ModelKind::State, 0, {gens, 0});
  for (std::size_t n = 0; n <= max_vars; ++n) {
    CompContext ctx(n, 0);
    std::vector<Term> terms = enumerate_terms(sig, ctx, 0, size_bound);
    std::vector<std::size_t> idx(n, 0);
    std::vector<SemValue> env(n, values.empty() ? SemValue{} : values.front());
    if (n > 0 && values.empty()) continue;
    for (bool more = true; more;) {
      for (std::size_t i = 0; i < n; ++i) env[i] = values[idx[i]];
      for (const Term& t : terms) {
        SemValue a = interpret(lhs_model, ctx, 0, t, 0, std::span<const SemValue>(env));
        SemValue b = interpret(rhs_model, ctx, 0, t, 0, std::span<const SemValue>(env));
        if (!(a == b) && report.size() < 20) {
          report.push_back(debug_string(t) + ": " + show_value(ModelKind::State, a) + " vs " +
                           show_value(ModelKind::StatePrime, b));
        }
      }
      more = false;
      for (std::size_t i = n; i-- > 0;) {
        if (++idx[i] < values.size()) {
          more = true;
          break;
        }
        idx[i] = 0;
      }
    }
  }
  return report;
}

std::string show_value(ModelKind kind, const SemValue& v, const std::vector<std::string>& names) {
  if (const auto* l = std::get_if<ListVal>(&v)) {
    std::string out = "[";
    for (std::size_t i = 0; i < l->length(); ++i) {
      if (i > 0) out += ", ";
      out += l->level == 0 ? gen_name(l->gens[i], names) : show_value(kind, l->items[i], names);
    }
    out += "]";
    if (l->star) out += "*";
    return out;
  }
  if (const auto* e = std::get_if<ExcVal>(&v)) {
    return e->marker ? "e" + std::to_string(e->index) : gen_name(e->index, names);
  }
  const StateVal& f = std::get<StateVal>(v);
  std::string out = "{";
  for (std::size_t s = 0; s < 2; ++s) {
    if (s > 0) out += ", ";
    out += std::to_string(s) + ": ";
    if (f.level == 0) {
      out += "(" + gen_name(f.gen[s], names) + ", " + (f.bit[s] ? "1" : "0") + ")";
    } else if (kind == ModelKind::StatePrime) {
      out += "(" + show_value(kind, f.next[s], names) + ", " + (f.bit[s] ? "1" : "0") + ")";
    } else {
      out += show_value(kind, f.next[s], names);
    }
  }
  return out + "}";
}

}  // namespace scopedeq
