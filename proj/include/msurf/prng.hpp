// Deterministic PRNG (splitmix64).  Seeded runs must replay bit-for-bit
// across platforms, so no std::random_device / std::mt19937 anywhere.

#ifndef MSURF_PRNG_HPP
#define MSURF_PRNG_HPP

#include "msurf/complex.hpp"

#include <cstdint>

namespace msurf {

class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    bool next_bool() { return next_u64() & 1; }

    long next_int(long lo, long hi) {  // inclusive range
        return lo + long(next_below(std::uint64_t(hi - lo + 1)));
    }

    // Uniform real in [lo, hi).
    Real next_real(double lo, double hi, long prec) {
        std::uint64_t bits = next_u64() >> 11;  // 53 bits
        Real u = Real(double(bits), prec) * pow2(-53, prec);
        return Real(lo, prec) + (Real(hi, prec) - Real(lo, prec)) * u;
    }

    Complex next_complex(double lo, double hi, long prec) {
        Real re = next_real(lo, hi, prec);
        Real im = next_real(lo, hi, prec);
        return Complex(re, im);
    }

    // Small random rational with numerator in [-bound, bound] and
    // denominator in [1, dbound].
    Rat next_rat(long bound, long dbound) {
        long num = next_int(-bound, bound);
        long den = next_int(1, dbound);
        Rat q(num, den);
        q.canonicalize();
        return q;
    }

private:
    std::uint64_t state_;
};

} // namespace msurf

#endif
