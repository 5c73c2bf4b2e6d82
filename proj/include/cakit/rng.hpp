#pragma once

#include <cstdint>

namespace cakit {

/// Deterministic splitmix64 stream. Every sampler in the library takes an
/// explicit seed so that runs are reproducible across platforms; the standard
/// library distributions are not pinned by the standard, this generator is.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n). n must be nonzero.
  uint64_t below(uint64_t n) { return next() % n; }

  /// Uniform value in [lo, hi] for small signed ranges.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  /// Child stream for trial number `i`; trials are independent and
  /// order-insensitive.
  Rng child(uint64_t i) const {
    Rng r(state_ ^ (0x632be59bd9b4e019ULL * (i + 1)));
    r.next();
    return r;
  }

private:
  uint64_t state_;
};

} // namespace cakit
