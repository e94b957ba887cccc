#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace scopedeq {

inline constexpr std::size_t kUncountable = std::numeric_limits<std::size_t>::max();

inline std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > kUncountable - b ? kUncountable : a + b;
}
inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kUncountable / b ? kUncountable : a * b;
}

// A level-indexed family of finite sets X(0), X(1), ... realized lazily.
// Each level is enumerated at most once and then shared; concurrent readers
// see the same vector. `count` may be supplied to size a level without
// realizing it (kUncountable when too large to enumerate).
template <class V>
class GradedCarrier {
 public:
  using Enumerate = std::function<std::vector<V>(std::size_t)>;
  using Count = std::function<std::size_t(std::size_t)>;

  GradedCarrier() : GradedCarrier([](std::size_t) { return std::vector<V>{}; }) {}
  explicit GradedCarrier(Enumerate enumerate, Count count = {})
      : enumerate_(std::move(enumerate)), count_(std::move(count)), cache_(std::make_shared<Cache>()) {}

  const std::vector<V>& at_level(std::size_t n) const {
    std::lock_guard<std::recursive_mutex> lock(cache_->mu);
    auto it = cache_->levels.find(n);
    if (it == cache_->levels.end()) {
      auto realized = std::make_shared<const std::vector<V>>(enumerate_(n));
      it = cache_->levels.emplace(n, std::move(realized)).first;
    }
    return *it->second;
  }

  std::size_t count(std::size_t n) const { return count_ ? count_(n) : at_level(n).size(); }

 private:
  struct Cache {
    std::recursive_mutex mu;
    std::map<std::size_t, std::shared_ptr<const std::vector<V>>> levels;
  };

  Enumerate enumerate_;
  Count count_;
  std::shared_ptr<Cache> cache_;
};

// up(A)(0) = A, up(A)(n+1) = empty.
template <class V>
GradedCarrier<V> up(std::vector<V> a) {
  auto shared = std::make_shared<const std::vector<V>>(std::move(a));
  return GradedCarrier<V>(
      [shared](std::size_t n) { return n == 0 ? *shared : std::vector<V>{}; },
      [shared](std::size_t n) { return n == 0 ? shared->size() : std::size_t{0}; });
}

// down(X) = X(0).
template <class V>
std::vector<V> down(const GradedCarrier<V>& x) {
  return x.at_level(0);
}

// later(X)(0) = empty, later(X)(n+1) = X(n).
template <class V>
GradedCarrier<V> later(GradedCarrier<V> x) {
  return GradedCarrier<V>(
      [x](std::size_t n) { return n == 0 ? std::vector<V>{} : x.at_level(n - 1); },
      [x](std::size_t n) { return n == 0 ? std::size_t{0} : x.count(n - 1); });
}

// earlier(X)(n) = X(n+1).
template <class V>
GradedCarrier<V> earlier(GradedCarrier<V> x) {
  return GradedCarrier<V>([x](std::size_t n) { return x.at_level(n + 1); },
                          [x](std::size_t n) { return x.count(n + 1); });
}

}  // namespace scopedeq
