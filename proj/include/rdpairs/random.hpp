#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rdpairs/harmonic.hpp"

namespace rdp {

/// Seeded generator whose draws are identical across standard libraries: only the raw
/// mt19937_64 stream is used, bounded draws are done here by rejection.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  /// k distinct indices from [0, n) in increasing order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

struct RandomFunctionOptions {
  std::size_t maxSupport = 6;
  /// Values are p/q with p in [1, maxNumerator] and q in [1, maxDenominator].
  long maxNumerator = 9;
  long maxDenominator = 4;
  bool allowNegative = false;
};

/// Random function supported on a sample of `pool` (support size drawn from [1, maxSupport]).
template <class S>
GroupFunction<S> randomFunction(const ModelPtr& group, const std::vector<ElementKey>& pool,
                                Rng& rng, const RandomFunctionOptions& options = {});

}  // namespace rdp
