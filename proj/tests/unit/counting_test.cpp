#include <gtest/gtest.h>

#include "scopedeq/counting.hpp"
#include "scopedeq/error.hpp"

namespace scopedeq {
namespace {

ScopedSignature once_sig() { return {{{"or", 2}, {"fail", 0}}, {{"once", 1}}}; }
ScopedSignature catch_sig() { return {{{"throw", 0}}, {{"catch", 2}}}; }
ScopedSignature cut_sig() { return {{{"or", 2}, {"fail", 0}, {"cut", 1}}, {{"scope", 1}}}; }

// Level 0, one generator x. Exactly one operation: fail, or(x, x). Exactly
// two: or over the split (0, 1) and (1, 0) of {fail, or(x, x)} gives 4, and
// once(a. close(a; x)), once(a. fail) give 2.
TEST(Counting, HandCountedOnce) {
  EXPECT_EQ(count_free_terms(once_sig(), 1, 0, 0), 1u);
  EXPECT_EQ(count_free_terms(once_sig(), 1, 0, 1), 3u);
  EXPECT_EQ(count_free_terms(once_sig(), 1, 0, 2), 9u);
  EXPECT_EQ(count_fixedpoint(once_sig(), 1, 0, 0), 1u);
  EXPECT_EQ(count_fixedpoint(once_sig(), 1, 0, 1), 3u);
  EXPECT_EQ(count_fixedpoint(once_sig(), 1, 0, 2), 9u);
}

// Level 1 has no generators of its own: only close(a; x) and the constants.
TEST(Counting, HandCountedHigherLevel) {
  EXPECT_EQ(count_free_terms(catch_sig(), 2, 1, 0), 0u);
  // throw, close(a; x1), close(a; x2)
  EXPECT_EQ(count_free_terms(catch_sig(), 2, 1, 1), 3u);
  EXPECT_EQ(count_fixedpoint(catch_sig(), 2, 1, 1), 3u);
}

TEST(Counting, FreeTermsAgreeWithTheEnumerator) {
  for (const ScopedSignature& s : {once_sig(), catch_sig(), cut_sig()}) {
    Signature sig = encode_scoped_signature(s);
    for (std::size_t gens = 0; gens <= 2; ++gens) {
      for (std::size_t level = 0; level <= 2; ++level) {
        for (std::size_t d = 0; d <= 3; ++d) {
          EXPECT_EQ(count_free_terms(s, gens, level, d),
                    enumerate_terms(sig, CompContext(gens, 0), level, d).size());
        }
      }
    }
  }
}

TEST(Counting, SyntaxMatchesTheFixedPoint) {
  for (const ScopedSignature& s : {once_sig(), catch_sig(), cut_sig()}) {
    for (std::size_t gens = 0; gens <= 2; ++gens) {
      for (std::size_t level = 0; level <= 2; ++level) {
        for (std::size_t d = 0; d <= 6; ++d) {
          EXPECT_EQ(count_free_terms(s, gens, level, d), count_fixedpoint(s, gens, level, d))
              << "gens " << gens << " level " << level << " depth " << d;
        }
      }
    }
  }
}

TEST(Counting, EmptySignature) {
  ScopedSignature none;
  // Only the generators and their close towers: level n needs n closes.
  EXPECT_EQ(count_free_terms(none, 2, 0, 5), 2u);
  EXPECT_EQ(count_free_terms(none, 2, 2, 1), 0u);
  EXPECT_EQ(count_free_terms(none, 2, 2, 2), 2u);
  EXPECT_EQ(count_fixedpoint(none, 2, 2, 2), 2u);
}

TEST(Counting, OverflowThrows) {
  Signature sig = encode_scoped_signature(once_sig());
  EXPECT_THROW(count_terms(sig, {0, 0}, 0, 200), Error);
  EXPECT_THROW(count_fixedpoint(once_sig(), 2, 0, 200), Error);
}

}  // namespace
}  // namespace scopedeq
