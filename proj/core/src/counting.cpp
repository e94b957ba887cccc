#include "scopedeq/counting.hpp"

#include <map>
#include <vector>

#include "scopedeq/error.hpp"

namespace scopedeq {
namespace {

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw Error("count overflows 64 bits");
  return a + b;
}
std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw Error("count overflows 64 bits");
  return a * b;
}

// by_size[s] = number of ways; convolution of k factors, total size <= bound.
using Series = std::vector<std::uint64_t>;

Series convolve(const Series& a, const Series& b, std::size_t bound) {
  Series out(bound + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= bound; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= bound; ++j) {
      out[i + j] = add(out[i + j], mul(a[i], b[j]));
    }
  }
  return out;
}

class TermCounter {
 public:
  TermCounter(const Signature& sig, const CompContext& ctx) : sig_(sig), ctx_(ctx) {}

  // Exact number of terms at `depth` with exactly `size` App nodes.
  std::uint64_t exact(std::size_t depth, std::size_t size) {
    auto key = std::make_pair(depth, size);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    if (size == 0) {
      for (std::size_t m : ctx_) total += m == depth ? 1 : 0;
    } else {
      for (const auto& [name, ar] : sig_) {
        if (depth < ar.params) continue;
        Series acc(size, 0);
        acc[0] = 1;
        for (std::size_t m : ar.binders) {
          Series child(size, 0);
          for (std::size_t s = 0; s < size; ++s) child[s] = exact(depth - ar.params + m, s);
          acc = convolve(acc, child, size - 1);
        }
        total = add(total, acc[size - 1]);
      }
    }
    memo_.emplace(key, total);
    return total;
  }

 private:
  const Signature& sig_;
  const CompContext& ctx_;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> memo_;
};

}  // namespace

std::uint64_t count_terms(const Signature& sig, const CompContext& ctx, std::size_t depth,
                          std::size_t size_bound) {
  TermCounter c(sig, ctx);
  std::uint64_t total = 0;
  for (std::size_t s = 0; s <= size_bound; ++s) total = add(total, c.exact(depth, s));
  return total;
}

std::uint64_t count_free_terms(const ScopedSignature& s, std::size_t gens, std::size_t level,
                               std::size_t depth_bound) {
  return count_terms(encode_scoped_signature(s), CompContext(gens, 0), level, depth_bound);
}

std::uint64_t count_fixedpoint(const ScopedSignature& s, std::size_t gens, std::size_t level,
                               std::size_t depth_bound) {
  // Y[n][c]: elements at level n built from exactly c constructors. Levels
  // above level + depth_bound can never feed back into `level` within the
  // bound, since each earlier-shift costs a constructor.
  const std::size_t top = level + depth_bound + 1;
  const std::size_t d = depth_bound;
  std::vector<Series> y(top + 1, Series(d + 1, 0));
  auto power = [&](const Series& base, std::size_t k) {
    Series acc(d + 1, 0);
    acc[0] = 1;
    for (std::size_t i = 0; i < k; ++i) acc = convolve(acc, base, d);
    return acc;
  };
  for (std::size_t iter = 0; iter <= d; ++iter) {
    std::vector<Series> next(top + 1, Series(d + 1, 0));
    for (std::size_t n = 0; n <= top; ++n) {
      Series& out = next[n];
      if (n == 0) out[0] = add(out[0], gens);  // up(A)
      auto add_shifted = [&](const Series& inner) {
        for (std::size_t c = 0; c + 1 <= d; ++c) out[c + 1] = add(out[c + 1], inner[c]);
      };
      for (const auto& [name, k] : s.algebraic) add_shifted(power(y[n], k));
      if (n + 1 <= top) {
        for (const auto& [name, k] : s.scoped) add_shifted(power(y[n + 1], k));
      }
      if (n >= 1) add_shifted(y[n - 1]);  // later
    }
    y = std::move(next);
  }
  std::uint64_t total = 0;
  for (std::size_t c = 0; c <= d; ++c) total = add(total, y[level][c]);
  return total;
}

}  // namespace scopedeq
