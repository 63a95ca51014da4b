// Deterministic seeded RNG (splitmix64) and small-height rational sampling.
// Identical seeds must yield identical streams on every platform.
#pragma once

#include "dgd/rat.hpp"

#include <cstdint>

namespace dgd {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    // Independent child stream; used for per-trial determinism.
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (0x632be59bd9b4e019ULL * (salt + 1)));
        child.next();
        return child;
    }

    // Small-height rational: numerator in [-maxNum, maxNum], denominator in [1, maxDen].
    Rat rat(long maxNum = 13, long maxDen = 13) {
        long n = static_cast<long>(below(static_cast<std::uint64_t>(2 * maxNum + 1))) - maxNum;
        long d = static_cast<long>(below(static_cast<std::uint64_t>(maxDen))) + 1;
        return Rat(n, d);
    }

    Rat nonzeroRat(long maxNum = 13, long maxDen = 13) {
        for (;;) {
            Rat r = rat(maxNum, maxDen);
            if (!r.isZero()) return r;
        }
    }

  private:
    std::uint64_t state_;
};

} // namespace dgd
