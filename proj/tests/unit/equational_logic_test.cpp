#include <gtest/gtest.h>

#include "scopedeq/builtin_theories.hpp"
#include "scopedeq/equational_logic.hpp"
#include "scopedeq/error.hpp"
#include "test_support.hpp"

namespace scopedeq {
namespace {

using testing::j;

constexpr const char* kFour = "1:0, 2:0, 3:0, 4:0 | -";
constexpr const char* kMotivating = "once(a. or(fail, or(close(a; or(1, 2)), close(a; or(3, 4)))))";

std::size_t index_of(const Theory& thy, std::string_view name) {
  for (std::size_t i = 0; i < thy.equations().size(); ++i) {
    if (thy.equations()[i].name == name) return i;
  }
  throw std::runtime_error("no equation " + std::string(name));
}

void expect_replays(const Theory& thy, const Judgement& lhs, const Judgement& rhs, const EqualityResult& r) {
  ASSERT_TRUE(r.equal());
  EXPECT_EQ(replay_trace(thy, lhs, r.trace), rhs.body());
}

TEST(BuiltinTheories, Shapes) {
  Theory once = builtin_theory("nondet_once");
  EXPECT_EQ(once.sig().size(), 4u);
  EXPECT_EQ(once.equations().size(), 7u);
  Theory exc = builtin_theory("exceptions");
  EXPECT_EQ(exc.sig().size(), 3u);
  EXPECT_EQ(exc.equations().size(), 3u);
  Theory cut = builtin_theory("nondet_cut");
  EXPECT_EQ(cut.sig().size(), 5u);
  EXPECT_EQ(cut.equations().size(), 9u);
  EXPECT_EQ(builtin_theory("explicit_nondet").equations().size(), 3u);
  EXPECT_EQ(builtin_theory("global_state").equations().size(), 7u);
  EXPECT_EQ(builtin_theory("state_local").equations().size(), 17u);
  EXPECT_EQ(builtin_theory("state_local_noclose").equations().size(), 15u);
  EXPECT_THROW(builtin_theory("nope"), Error);
  for (const std::string& name : builtin_theory_names()) EXPECT_TRUE(is_builtin_theory(name));
}

TEST(Match, CapturesUnderOrFail) {
  Theory thy = builtin_theory("nondet_once");
  const Equation& eq = thy.equations()[index_of(thy, "or-fail-right")];
  Judgement subject = j(thy.sig(), kFour, "or(or(1, 2), fail)");
  auto m = match_instance(thy, eq, subject, {});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->offset, 0u);
  ASSERT_TRUE(m->captures[0]);
  EXPECT_EQ(*m->captures[0], testing::t(thy.sig(), kFour, "or(1, 2)"));
}

TEST(Match, RepeatedVariableNeedsEqualCaptures) {
  Theory thy = builtin_theory("nondet_once");
  const Equation& idem = thy.equations()[index_of(thy, "once-idem")];
  EXPECT_FALSE(match_instance(thy, idem, j(thy.sig(), kFour, "once(a. or(close(a; 1), close(a; 2)))"), {}));
  auto m = match_instance(thy, idem, j(thy.sig(), kFour, "once(a. or(close(a; 1), close(a; 1)))"), {});
  ASSERT_TRUE(m);
  EXPECT_EQ(*m->captures[0], Term::app("close", {Term::var(0)}));
}

TEST(Match, OnceOrCloseOnMotivatingTerm) {
  Theory thy = builtin_theory("nondet_once");
  std::size_t e = index_of(thy, "once-or-close");
  const Equation& eq = thy.equations()[e];
  Judgement subject = j(thy.sig(), kFour, kMotivating);
  // or(fail, ...) sits between once and the close, so the root is not an instance.
  EXPECT_FALSE(match_instance(thy, eq, subject, {}));

  std::size_t fl = index_of(thy, "or-fail-left");
  auto m0 = match_instance(thy, thy.equations()[fl], subject, Position{0});
  ASSERT_TRUE(m0);
  EXPECT_EQ(m0->offset, 1u);
  RewriteStep step{Position{0}, fl, Direction::Forward, m0->offset, m0->captures};
  Judgement after(thy.sig(), subject.ctx(), 0, apply_step(thy, subject.ctx(), subject.body(), 0, step));
  auto m = match_instance(thy, eq, after, {});
  ASSERT_TRUE(m);
  EXPECT_EQ(*m->captures[0], testing::t(thy.sig(), kFour, "or(1, 2)"));
  EXPECT_EQ(*m->captures[1], testing::t(thy.sig(), "1:0, 2:0, 3:0, 4:0 | a", "close(a; or(3, 4))"));
}

TEST(Match, OffsetTracksAmbientDepth) {
  Theory thy = builtin_theory("nondet_once");
  const Equation& eq = thy.equations()[index_of(thy, "or-fail-right")];
  Judgement subject = j(thy.sig(), "x:0 | -", "once(a. or(close(a; x), fail))");
  auto m = match_instance(thy, eq, subject, Position{0});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->offset, 1u);
  EXPECT_EQ(*m->captures[0], Term::app("close", {Term::var(0)}));
}

TEST(Search, OnceCloseFromTheOtherEquations) {
  Theory full = builtin_theory("nondet_once");
  Theory thy = without_equation(full, index_of(full, "once-close"));
  ASSERT_EQ(thy.equations().size(), 6u);
  Judgement lhs = j(thy.sig(), "x:0 | -", "once(a. close(a; x))");
  Judgement rhs = j(thy.sig(), "x:0 | -", "x");
  EqualityResult r = derivably_equal(thy, lhs, rhs, 4);
  expect_replays(thy, lhs, rhs, r);
  // Root rewrites come first in the search order, so the duplication step of
  // once-idem is found before or-fail-right one level down; both lead to
  // once-or-close in two steps.
  ASSERT_EQ(r.trace.steps.size(), 2u);
  EXPECT_EQ(thy.equations()[r.trace.steps[0].equation].name, "once-idem");
  EXPECT_EQ(r.trace.steps[0].direction, Direction::Backward);
  EXPECT_EQ(thy.equations()[r.trace.steps[1].equation].name, "once-or-close");
  EXPECT_EQ(r.trace.steps[1].direction, Direction::Forward);
}

TEST(Search, Reflexivity) {
  Theory thy = builtin_theory("exceptions");
  Judgement x = j(thy.sig(), "y:0 | -", "catch(a. throw, b. close(b; y))");
  EqualityResult r = derivably_equal(thy, x, x, 0);
  EXPECT_TRUE(r.equal());
  EXPECT_TRUE(r.trace.steps.empty());
}

TEST(Search, GetGetInGlobalState) {
  Theory thy = builtin_theory("global_state");
  const char* ctx = "x00:0, x01:0, x10:0, x11:0 | -";
  Judgement lhs = j(thy.sig(), ctx, "get(get(x00, x01), get(x10, x11))");
  Judgement rhs = j(thy.sig(), ctx, "get(x00, x11)");
  EqualityResult r = derivably_equal(thy, lhs, rhs, 8);
  expect_replays(thy, lhs, rhs, r);
  EXPECT_LE(r.trace.steps.size(), 8u);
}

TEST(Search, ScopeCloseInCut) {
  Theory thy = builtin_theory("nondet_cut");
  Judgement lhs = j(thy.sig(), "x:0 | -", "scope(a. close(a; x))");
  Judgement rhs = j(thy.sig(), "x:0 | -", "x");
  EqualityResult r = derivably_equal(thy, lhs, rhs, 6);
  expect_replays(thy, lhs, rhs, r);
  EXPECT_LE(r.trace.steps.size(), 6u);
}

TEST(Search, MotivatingTermIsOrOneTwo) {
  Theory thy = builtin_theory("nondet_once");
  Judgement lhs = j(thy.sig(), kFour, kMotivating);
  Judgement rhs = j(thy.sig(), kFour, "or(1, 2)");
  EqualityResult r = derivably_equal(thy, lhs, rhs, 4);
  expect_replays(thy, lhs, rhs, r);
  EXPECT_EQ(r.trace.steps.size(), 2u);
}

TEST(Search, NoSymmetryForOr) {
  Theory thy = builtin_theory("nondet_once");
  Judgement lhs = j(thy.sig(), "x:0, y:0 | -", "or(x, y)");
  Judgement rhs = j(thy.sig(), "x:0, y:0 | -", "or(y, x)");
  EqualityResult r = derivably_equal(thy, lhs, rhs, 4);
  EXPECT_FALSE(r.equal());
  EXPECT_GT(r.explored, 2u);
}

TEST(Search, NodeBudgetGivesUnknown) {
  Theory thy = builtin_theory("global_state");
  const char* ctx = "x00:0, x01:0, x10:0, x11:0 | -";
  SearchOptions tight;
  tight.step_bound = 8;
  tight.max_nodes = 50;
  EqualityResult r = derivably_equal(thy, j(thy.sig(), ctx, "get(get(x00, x01), get(x10, x11))"),
                                     j(thy.sig(), ctx, "get(x00, x11)"), tight);
  EXPECT_FALSE(r.equal());
  EXPECT_LE(r.explored, 51u);
}

TEST(Search, RejectsMismatchedJudgements) {
  Theory thy = builtin_theory("nondet_once");
  EXPECT_THROW(derivably_equal(thy, j(thy.sig(), "x:0 | -", "x"), j(thy.sig(), "x:0, y:0 | -", "x"), 2),
               TermError);
}

TEST(Search, DeterministicTraces) {
  Theory thy = builtin_theory("nondet_cut");
  Judgement lhs = j(thy.sig(), "x:0 | -", "scope(a. close(a; x))");
  Judgement rhs = j(thy.sig(), "x:0 | -", "x");
  EqualityResult a = derivably_equal(thy, lhs, rhs, 6);
  EqualityResult b = derivably_equal(thy, lhs, rhs, 6);
  EXPECT_EQ(a.trace.steps, b.trace.steps);
}

TEST(Neighbors, EveryNeighborReplaysAndInverts) {
  for (const std::string& name : {"nondet_once", "exceptions", "state_local", "nondet_cut"}) {
    Theory thy = builtin_theory(name);
    for (const Term& t : enumerate_terms(thy.sig(), {0, 0}, 0, 2)) {
      std::vector<Term> pool = instantiation_pool(thy.sig(), t, t);
      auto nbs = rewrite_neighbors(thy, {0, 0}, 0, t, pool);
      for (const Neighbor& nb : nbs) {
        ASSERT_TRUE(well_formed(thy.sig(), {0, 0}, 0, nb.term)) << name;
        EXPECT_EQ(apply_step(thy, {0, 0}, t, 0, nb.step), nb.term);
        EXPECT_EQ(apply_step(thy, {0, 0}, nb.term, 0, invert_step(nb.step)), t);
      }
    }
  }
}

TEST(Neighbors, SearchOrder) {
  Theory thy = builtin_theory("nondet_once");
  Term t = testing::t(thy.sig(), "x:0 | -", "or(x, fail)");
  std::vector<Term> pool = instantiation_pool(thy.sig(), t, t);
  auto nbs = rewrite_neighbors(thy, {0}, 0, t, pool);
  ASSERT_FALSE(nbs.empty());
  // Root first; the first matching equation at the root in declaration order
  // is or-assoc read right to left (it has no left-to-right match here).
  EXPECT_TRUE(nbs.front().step.position.empty());
  for (std::size_t i = 1; i < nbs.size(); ++i) {
    const RewriteStep& a = nbs[i - 1].step;
    const RewriteStep& b = nbs[i].step;
    if (a.position == b.position) {
      EXPECT_LE(a.equation, b.equation);
      if (a.equation == b.equation) EXPECT_LE(static_cast<int>(a.direction), static_cast<int>(b.direction));
    }
  }
}

TEST(ApplyStep, RejectsForgedSteps) {
  Theory thy = builtin_theory("nondet_once");
  Term t = testing::t(thy.sig(), "x:0 | -", "or(x, fail)");
  RewriteStep bogus{Position{}, index_of(thy, "once-fail"), Direction::Forward, 0, {}};
  EXPECT_THROW(apply_step(thy, {0}, t, 0, bogus), TermError);
  RewriteStep missing{Position{}, 99, Direction::Forward, 0, {}};
  EXPECT_THROW(apply_step(thy, {0}, t, 0, missing), TermError);
  RewriteStep wrong_capture{Position{}, index_of(thy, "or-fail-right"), Direction::Forward, 0,
                            {Term::app("fail")}};
  EXPECT_THROW(apply_step(thy, {0}, t, 0, wrong_capture), TermError);
}

TEST(Steps, Description) {
  Theory thy = builtin_theory("nondet_once");
  RewriteStep s{Position{0, 1}, index_of(thy, "or-fail-left"), Direction::Backward, 1, {}};
  EXPECT_EQ(describe_step(thy, s), "or-fail-left (right to left) at 0.1");
  s.position.clear();
  s.direction = Direction::Forward;
  EXPECT_EQ(describe_step(thy, s), "or-fail-left (left to right) at root");
}

TEST(Theories, ConstructionValidatesEquations) {
  Theory base = builtin_theory("explicit_nondet");
  Equation bad{"bad", {0}, {"x"}, 0, Term::app("or", {Term::var(0)}), Term::var(0)};
  EXPECT_THROW(Theory(base.sig(), {bad}), TermError);
}

}  // namespace
}  // namespace scopedeq
