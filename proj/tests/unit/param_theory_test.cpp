#include <gtest/gtest.h>

#include <set>

#include "scopedeq/builtin_models.hpp"
#include "scopedeq/builtin_theories.hpp"
#include "scopedeq/equational_logic.hpp"
#include "scopedeq/error.hpp"
#include "scopedeq/model.hpp"
#include "scopedeq/param_theory.hpp"
#include "test_support.hpp"

namespace scopedeq {
namespace {

using testing::j;
using testing::t;

const Equation& named(const Theory& thy, std::string_view name) {
  for (const Equation& e : thy.equations()) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("no equation " + std::string(name));
}

Equation instance(const Signature& sig, std::size_t n, std::string_view body,
                  std::string_view scoped = "once", const ListOracle& oracle = once_oracle) {
  std::vector<Term> tuple = {t(sig, testing::gen_ctx(n), body)};
  return param_instance(sig, scoped, oracle, n, tuple);
}

TEST(ListNormalForms, EvalAndReify) {
  Signature sig = builtin_theory("explicit_nondet").sig();
  EXPECT_EQ(eval_list_nf(t(sig, "x1:0, x2:0 | -", "or(or(x2, fail), or(x1, x2))")), (ListNF{1, 0, 1}));
  EXPECT_EQ(eval_list_nf(Term::app("fail")), ListNF{});
  EXPECT_EQ(reify_list_nf({1, 0}), Term::app("or", {Term::var(1), Term::var(0)}));
  EXPECT_EQ(reify_list_nf({}), Term::app("fail"));
  EXPECT_EQ(reify_list_nf({0}), Term::var(0));
  EXPECT_THROW(eval_list_nf(Term::app("once", {Term::var(0)})), Error);
  std::vector<ListNF> args = {{1, 0}};
  EXPECT_EQ(once_oracle(args), ListNF{1});
  EXPECT_EQ(scope_oracle(args), (ListNF{1, 0}));
  args = {{}};
  EXPECT_EQ(once_oracle(args), ListNF{});
}

TEST(ParamInstance, FailGivesOnceFail) {
  Theory once = builtin_theory("nondet_once");
  Equation eq = instance(once.sig(), 0, "fail");
  const Equation& fig = named(once, "once-fail");
  EXPECT_EQ(eq.ctx, fig.ctx);
  EXPECT_EQ(eq.lhs, fig.lhs);
  EXPECT_EQ(eq.rhs, fig.rhs);
}

TEST(ParamInstance, VariableGivesOnceClose) {
  Theory once = builtin_theory("nondet_once");
  Equation eq = instance(once.sig(), 1, "x1");
  const Equation& fig = named(once, "once-close");
  EXPECT_EQ(eq.ctx, fig.ctx);
  EXPECT_EQ(eq.lhs, fig.lhs);
  EXPECT_EQ(eq.rhs, fig.rhs);
}

TEST(ParamInstance, SubstitutesCloseForEveryVariable) {
  Theory once = builtin_theory("nondet_once");
  Equation eq = instance(once.sig(), 2, "or(x2, or(x1, x2))");
  EXPECT_EQ(eq.lhs, t(once.sig(), "x1:0, x2:0 | -", "once(a. or(close(a; x2), or(close(a; x1), close(a; x2))))"));
  EXPECT_EQ(eq.rhs, Term::var(1));
}

TEST(ParamInstance, ScopeAndBinaryOperations) {
  Signature scope_sig = encode_scoped_signature({{{"or", 2}, {"fail", 0}}, {{"scope", 1}}});
  Equation eq = instance(scope_sig, 1, "or(x1, fail)", "scope", scope_oracle);
  EXPECT_EQ(eq.lhs, t(scope_sig, "x1:0 | -", "scope(a. or(close(a; x1), fail))"));
  EXPECT_EQ(eq.rhs, Term::var(0));

  // A binary scoped operation that interleaves its two arguments' heads.
  Signature par = encode_scoped_signature({{{"or", 2}, {"fail", 0}}, {{"par", 2}}});
  ListOracle heads = [](std::span<const ListNF> a) {
    ListNF out;
    for (const ListNF& xs : a) {
      if (!xs.empty()) out.push_back(xs.front());
    }
    return out;
  };
  std::vector<Term> tuple = {t(par, "x1:0, x2:0 | -", "or(x2, x1)"), t(par, "x1:0, x2:0 | -", "x1")};
  Equation two = param_instance(par, "par", heads, 2, tuple);
  EXPECT_EQ(two.lhs, t(par, "x1:0, x2:0 | -", "par(a. or(close(a; x2), close(a; x1)), b. close(b; x1))"));
  EXPECT_EQ(two.rhs, t(par, "x1:0, x2:0 | -", "or(x2, x1)"));
}

TEST(ParamInstance, RejectsBadOracles) {
  Theory once = builtin_theory("nondet_once");
  ListOracle escape = [](std::span<const ListNF>) { return ListNF{3}; };
  EXPECT_THROW(instance(once.sig(), 1, "x1", "once", escape), Error);
  EXPECT_THROW(instance(once.sig(), 1, "x1", "missing"), TermError);
}

// Classes over n variables with terms of size <= 2 are the lists of length
// <= 3: 1 for n = 0, 1 + 1 + 1 + 1 for n = 1, 1 + 2 + 4 + 8 for n = 2. Lists
// not mentioning x2 give the same lhs and rhs at n = 2 as at n = 1, and fail
// the same at every n; those repeats are kept once, leaving 1 + 3 + 11.
TEST(GenerateParamTheory, ShapeAndSize) {
  Theory thy = generate_param_theory({});
  Theory once = builtin_theory("nondet_once");
  EXPECT_EQ(thy.sig(), once.sig());
  Theory base = builtin_theory("explicit_nondet");
  ASSERT_EQ(thy.equations().size(), base.equations().size() + 1 + 3 + 11);
  for (std::size_t i = 0; i < base.equations().size(); ++i) {
    EXPECT_EQ(thy.equations()[i].lhs, base.equations()[i].lhs);
  }
  std::set<std::pair<Term, Term>> distinct;
  for (const Equation& e : thy.equations()) distinct.emplace(e.lhs, e.rhs);
  EXPECT_EQ(distinct.size(), thy.equations().size());
  EXPECT_THROW(generate_param_theory({.base = "exceptions"}), Error);
}

TEST(GenerateParamTheory, InstancesHoldInTheOnceModel) {
  Theory thy = generate_param_theory({});
  auto m = model_once(2, 3);
  ModelCheckBudget b;
  b.exhaustive_limit = 20000;
  b.samples = 200;
  auto report = check_model(m, thy, b);
  EXPECT_TRUE(report.empty());
  for (const Equation& e : thy.equations()) {
    Judgement l(thy.sig(), e.ctx, e.depth, e.lhs);
    Judgement r(thy.sig(), e.ctx, e.depth, e.rhs);
    EXPECT_TRUE(decide_equal_via_model(ModelKind::Once, thy.sig(), l, r)) << e.name;
  }
}

TEST(GenerateParamTheory, GroundInstancesOfOnceIdemAreDerivable) {
  Theory thy = generate_param_theory({});
  const char* ctx = "x1:0 | -";
  auto r = derivably_equal(thy, j(thy.sig(), ctx, "once(a. or(close(a; x1), close(a; x1)))"),
                           j(thy.sig(), ctx, "once(a. close(a; x1))"), 4);
  ASSERT_TRUE(r.equal());
  EXPECT_EQ(r.trace.steps.size(), 2u);
}

// The schematic once-idem and once-or-close have an arity-1 variable, which no
// ground instance covers. Within this budget no derivation exists.
TEST(GenerateParamTheory, SchematicOnceEquationsAreNotFound) {
  Theory thy = generate_param_theory({});
  Theory once = builtin_theory("nondet_once");
  SearchOptions o;
  o.step_bound = 5;
  o.max_nodes = 20000;
  for (const char* name : {"once-idem", "once-or-close"}) {
    const Equation& e = named(once, name);
    auto r = derivably_equal(thy, Judgement(thy.sig(), e.ctx, e.depth, e.lhs),
                             Judgement(thy.sig(), e.ctx, e.depth, e.rhs), o);
    EXPECT_FALSE(r.equal()) << name;
  }
}

}  // namespace
}  // namespace scopedeq
