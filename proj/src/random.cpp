#include "rdpairs/random.hpp"

#include <algorithm>
#include <set>

#include "rdpairs/error.hpp"

namespace rdp {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> Rng::sample(std::size_t n, std::size_t k) {
  k = std::min(k, n);
  // Floyd's algorithm: k draws, no O(n) scratch space.
  std::set<std::size_t> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::size_t>(below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

template <class S>
GroupFunction<S> randomFunction(const ModelPtr& group, const std::vector<ElementKey>& pool,
                                Rng& rng, const RandomFunctionOptions& options) {
  if (pool.empty()) throw Error(ErrorCode::InvalidArgument, "empty support pool");
  const std::size_t k = 1 + rng.below(std::min(options.maxSupport, pool.size()));
  std::vector<typename GroupFunction<S>::Entry> entries;
  for (std::size_t i : rng.sample(pool.size(), k)) {
    long p = static_cast<long>(rng.between(1, options.maxNumerator));
    const long q = static_cast<long>(rng.between(1, options.maxDenominator));
    if (options.allowNegative && rng.below(2) == 1) p = -p;
    entries.emplace_back(pool[i], ScalarTraits<S>::fromRatio(p, q));
  }
  return GroupFunction<S>(group, std::move(entries));
}

template GroupFunction<Rational> randomFunction(const ModelPtr&, const std::vector<ElementKey>&,
                                                Rng&, const RandomFunctionOptions&);
template GroupFunction<double> randomFunction(const ModelPtr&, const std::vector<ElementKey>&,
                                              Rng&, const RandomFunctionOptions&);

}  // namespace rdp
