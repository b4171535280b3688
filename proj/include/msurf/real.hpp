// Arbitrary-precision real numbers: a value-semantic RAII wrapper around MPFR.
//
// Every Real carries its own precision in bits (>= 53).  Binary operations
// round to the larger of the two operand precisions, matching the usual
// "work at max precision" convention of mp wrappers.

#ifndef MSURF_REAL_HPP
#define MSURF_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace msurf {

using BigInt = mpz_class;
using Rat = mpq_class;

inline constexpr long kMinPrec = 53;
inline constexpr long kDefaultPrec = 256;

class Real {
public:
    Real() : Real(0.0, kDefaultPrec) {}

    explicit Real(long prec) { init(prec); mpfr_set_zero(v_, 1); }

    Real(double x, long prec) { init(prec); mpfr_set_d(v_, x, MPFR_RNDN); }

    Real(long x, long prec) { init(prec); mpfr_set_si(v_, x, MPFR_RNDN); }

    Real(const BigInt& x, long prec) { init(prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }

    Real(const Rat& x, long prec) { init(prec); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

    // Parses a decimal string such as "-1.25e-3".
    Real(const std::string& s, long prec) {
        init(prec);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real: cannot parse decimal string '" + s + "'");
    }

    Real(const Real& o) { init(mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }

    Real(Real&& o) noexcept {
        mpfr_init2(v_, kMinPrec);
        mpfr_swap(v_, o.v_);
    }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    Real round_to(long prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define MSURF_REAL_BINOP(op, fn)                                    \
    friend Real operator op(const Real& a, const Real& b) {        \
        Real r(std::max(a.prec(), b.prec()));                      \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                           \
        return r;                                                  \
    }                                                              \
    Real& operator op##=(const Real& b) {                          \
        if (b.prec() > prec()) *this = round_to(b.prec());         \
        fn(v_, v_, b.v_, MPFR_RNDN);                               \
        return *this;                                              \
    }

    MSURF_REAL_BINOP(+, mpfr_add)
    MSURF_REAL_BINOP(-, mpfr_sub)
    MSURF_REAL_BINOP(*, mpfr_mul)
    MSURF_REAL_BINOP(/, mpfr_div)
#undef MSURF_REAL_BINOP

    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long b) {
        Real r(a.prec());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, long b) { return a + (-b); }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    // Deterministic decimal rendering.  Digit count defaults to the full
    // precision of the value so round-trips are lossless.
    std::string to_decimal(size_t digits = 0) const {
        if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
        if (is_zero()) return "0";
        if (digits == 0) digits = size_t(double(prec()) * 0.30103) + 3;
        mpfr_exp_t e = 0;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        if (!s) throw std::runtime_error("Real: mpfr_get_str failed");
        std::string m(s);
        mpfr_free_str(s);
        std::string sgn;
        if (m[0] == '-') { sgn = "-"; m.erase(0, 1); }
        // Strip trailing zeros of the mantissa (keep at least one digit).
        size_t last = m.find_last_not_of('0');
        m.erase(last + 1);
        std::string out = sgn + m.substr(0, 1);
        if (m.size() > 1) out += "." + m.substr(1);
        out += "e" + std::to_string(long(e) - 1);
        return out;
    }

private:
    void init(long prec) {
        if (prec < kMinPrec) throw std::invalid_argument("Real: precision below 53 bits");
        mpfr_init2(v_, prec);
    }

    mpfr_t v_;
};

#define MSURF_REAL_UNFUN(name, fn)              \
    inline Real name(const Real& a) {           \
        Real r(a.prec());                       \
        fn(r.raw(), a.raw(), MPFR_RNDN);        \
        return r;                               \
    }

MSURF_REAL_UNFUN(abs, mpfr_abs)
MSURF_REAL_UNFUN(sqrt, mpfr_sqrt)
MSURF_REAL_UNFUN(exp, mpfr_exp)
MSURF_REAL_UNFUN(log, mpfr_log)
MSURF_REAL_UNFUN(sin, mpfr_sin)
MSURF_REAL_UNFUN(cos, mpfr_cos)
MSURF_REAL_UNFUN(atan, mpfr_atan)
#undef MSURF_REAL_UNFUN

inline Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline Real pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

// 2^e at the given precision; e may be negative.  Used for tolerances.
inline Real pow2(long e, long prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace msurf

#endif
