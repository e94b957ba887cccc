#include "scopedeq/builtin_theories.hpp"

#include <algorithm>

#include "scopedeq/error.hpp"
#include "scopedeq/syntax.hpp"

namespace scopedeq {
namespace {

struct Source {
  const char* name;
  const char* text;
  std::vector<const char*> eq_names;
};

constexpr const char* kMonoid = R"(
op or : (0 | 0, 0)
op fail : (0 | -)
eq x:0, y:0, z:0 | - |- or(or(x, y), z) = or(x, or(y, z))
eq x:0 | - |- or(x, fail) = x
eq x:0 | - |- or(fail, x) = x
)";

const std::vector<Source>& sources() {
  static const std::vector<Source> all = {
      {"explicit_nondet", kMonoid, {"or-assoc", "or-fail-right", "or-fail-left"}},
      {"nondet_once",
       R"(
op once : (0 | 1)
op close : (1 | 0)
eq - | - |- once(a. fail) = fail
eq x:1 | - |- once(a. or(x(a), x(a))) = once(a. x(a))
eq x:0 | - |- once(a. close(a; x)) = x
eq x:0, y:1 | - |- once(a. or(close(a; x), y(a))) = x
)",
       {"or-assoc", "or-fail-right", "or-fail-left", "once-fail", "once-idem", "once-close",
        "once-or-close"}},
      {"exceptions",
       R"(
op throw : (0 | -)
op catch : (0 | 1, 1)
op close : (1 | 0)
eq y:0 | - |- catch(a. throw, b. close(b; y)) = y
eq - | - |- catch(a. throw, b. throw) = throw
eq x:0, y:1 | - |- catch(a. close(a; x), b. y(b)) = x
)",
       {"catch-throw-close", "catch-throw-throw", "catch-close"}},
      {"global_state",
       R"(
op put0 : (0 | 0)
op put1 : (0 | 0)
op get : (0 | 0, 0)
eq x0:0, x1:0 | - |- put0(get(x0, x1)) = put0(x0)
eq x0:0, x1:0 | - |- put1(get(x0, x1)) = put1(x1)
eq x:0 | - |- put0(put0(x)) = put0(x)
eq x:0 | - |- put0(put1(x)) = put1(x)
eq x:0 | - |- put1(put0(x)) = put0(x)
eq x:0 | - |- put1(put1(x)) = put1(x)
eq x:0 | - |- get(put0(x), put1(x)) = x
)",
       {"put0-get", "put1-get", "put0-put0", "put0-put1", "put1-put0", "put1-put1", "get-put"}},
      {"state_local",
       R"(
op local0 : (0 | 1)
op local1 : (0 | 1)
op put0 : (0 | 0)
op put1 : (0 | 0)
op get : (0 | 0, 0)
op close : (1 | 0)
eq z:0 | - |- get(put0(z), put1(z)) = z
eq z:0 | - |- put0(put0(z)) = put0(z)
eq z:0 | - |- put0(put1(z)) = put1(z)
eq z:0 | - |- put1(put0(z)) = put0(z)
eq z:0 | - |- put1(put1(z)) = put1(z)
eq x0:0, x1:0 | - |- put0(get(x0, x1)) = put0(x0)
eq x0:0, x1:0 | - |- put1(get(x0, x1)) = put1(x1)
eq x:0 | - |- local0(a. close(a; x)) = x
eq x:0 | - |- local1(a. close(a; x)) = x
eq x0:1, x1:1 | - |- local0(a. get(x0(a), x1(a))) = local0(a. x0(a))
eq x0:1, x1:1 | - |- local1(a. get(x0(a), x1(a))) = local1(a. x1(a))
eq z:1 | - |- local0(a. put0(z(a))) = local0(a. z(a))
eq z:1 | - |- local0(a. put1(z(a))) = local1(a. z(a))
eq z:1 | - |- local1(a. put0(z(a))) = local0(a. z(a))
eq z:1 | - |- local1(a. put1(z(a))) = local1(a. z(a))
eq z:0 | a |- put0(close(a; z)) = close(a; z)
eq z:0 | a |- put1(close(a; z)) = close(a; z)
)",
       {"get-put", "put0-put0", "put0-put1", "put1-put0", "put1-put1", "put0-get", "put1-get",
        "local0-close", "local1-close", "local0-get", "local1-get", "local0-put0", "local0-put1",
        "local1-put0", "local1-put1", "put0-close", "put1-close"}},
      {"nondet_cut",
       R"(
op cut : (0 | 0)
op scope : (0 | 1)
op close : (1 | 0)
eq x:0, y:0 | - |- or(cut(x), y) = cut(x)
eq x:0, y:0 | - |- or(x, cut(y)) = cut(or(x, y))
eq x:0 | - |- cut(cut(x)) = cut(x)
eq - | - |- scope(a. fail) = fail
eq x:1 | - |- scope(a. cut(x(a))) = scope(a. x(a))
eq x:0, y:1 | - |- scope(a. or(close(a; x), y(a))) = or(x, scope(a. y(a)))
)",
       {"or-assoc", "or-fail-right", "or-fail-left", "or-cut-left", "or-cut-right", "cut-cut",
        "scope-fail", "scope-cut", "scope-or-close"}},
  };
  return all;
}

Theory build(const Source& src) {
  std::string text = src.text;
  std::string name = src.name;
  if (name == "nondet_once" || name == "nondet_cut") text = std::string(kMonoid) + text;
  Theory parsed = parse_theory(text);
  std::vector<Equation> eqs = parsed.equations();
  for (std::size_t i = 0; i < eqs.size() && i < src.eq_names.size(); ++i) eqs[i].name = src.eq_names[i];
  return Theory(parsed.sig(), std::move(eqs));
}

}  // namespace

const std::vector<std::string>& builtin_theory_names() {
  static const std::vector<std::string> names = {"nondet_once", "exceptions", "state_local",
                                                 "state_local_noclose", "nondet_cut",
                                                 "explicit_nondet", "global_state"};
  return names;
}

bool is_builtin_theory(std::string_view name) {
  const auto& n = builtin_theory_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Theory builtin_theory(std::string_view name) {
  if (name == "state_local_noclose") {
    Theory full = builtin_theory("state_local");
    std::vector<Equation> eqs;
    for (const Equation& eq : full.equations()) {
      if (eq.name != "put0-close" && eq.name != "put1-close") eqs.push_back(eq);
    }
    return Theory(full.sig(), std::move(eqs));
  }
  for (const Source& src : sources()) {
    if (name == src.name) return build(src);
  }
  throw Error("unknown theory `" + std::string(name) + "`");
}

Theory without_equation(const Theory& thy, std::size_t index) {
  std::vector<Equation> eqs = thy.equations();
  if (index >= eqs.size()) throw Error("no equation " + std::to_string(index));
  eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(index));
  return Theory(thy.sig(), std::move(eqs));
}

const std::vector<std::string>& builtin_scoped_signature_names() {
  static const std::vector<std::string> names = {"once", "exceptions", "cut"};
  return names;
}

ScopedSignature builtin_scoped_signature(std::string_view name) {
  ScopedSignature s;
  if (name == "once") {
    s.algebraic = {{"or", 2}, {"fail", 0}};
    s.scoped = {{"once", 1}};
  } else if (name == "exceptions" || name == "catch") {
    s.algebraic = {{"throw", 0}};
    s.scoped = {{"catch", 2}};
  } else if (name == "cut") {
    s.algebraic = {{"or", 2}, {"fail", 0}, {"cut", 1}};
    s.scoped = {{"scope", 1}};
  } else {
    throw Error("unknown scoped signature `" + std::string(name) + "`");
  }
  return s;
}

}  // namespace scopedeq
