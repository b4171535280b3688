// Arbitrary-precision complex numbers over msurf::Real.
//
// Both parts always share one precision.  Elementary functions use the
// principal branch throughout (sqrt and log cut along the negative real
// axis); sin/cos go through exponentials, so arguments with large imaginary
// part are fine -- MPFR's exponent range absorbs the growth.

#ifndef MSURF_COMPLEX_HPP
#define MSURF_COMPLEX_HPP

#include "msurf/real.hpp"

namespace msurf {

class Complex {
public:
    Complex() : re_(kDefaultPrec), im_(kDefaultPrec) {}

    explicit Complex(long prec) : re_(prec), im_(prec) {}

    Complex(Real re, Real im)
        : re_(std::move(re)), im_(std::move(im)) {
        long p = std::max(re_.prec(), im_.prec());
        if (re_.prec() != p) re_ = re_.round_to(p);
        if (im_.prec() != p) im_ = im_.round_to(p);
    }

    explicit Complex(Real re) : Complex(re, Real(re.prec())) {}

    Complex(double re, double im, long prec) : re_(re, prec), im_(im, prec) {}

    Complex(long re, long prec) : re_(re, prec), im_(prec) {}

    Complex(const Rat& q, long prec) : re_(q, prec), im_(prec) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    long prec() const { return re_.prec(); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    Complex round_to(long prec) const { return Complex(re_.round_to(prec), im_.round_to(prec)); }

    Complex conj() const { return Complex(re_, -im_); }

    friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re_ * b.re_ + b.im_ * b.im_;
        return Complex((a.re_ * b.re_ + a.im_ * b.im_) / d,
                       (a.im_ * b.re_ - a.re_ * b.im_) / d);
    }

    friend Complex operator*(const Complex& a, const Real& s) { return Complex(a.re_ * s, a.im_ * s); }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Real& s) { return Complex(a.re_ / s, a.im_ / s); }
    friend Complex operator*(const Complex& a, long s) { return Complex(a.re_ * s, a.im_ * s); }
    friend Complex operator*(long s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, long s) { return Complex(a.re_ / s, a.im_ / s); }

    Complex& operator+=(const Complex& b) { *this = *this + b; return *this; }
    Complex& operator-=(const Complex& b) { *this = *this - b; return *this; }
    Complex& operator*=(const Complex& b) { *this = *this * b; return *this; }
    Complex& operator/=(const Complex& b) { *this = *this / b; return *this; }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    std::string to_string(size_t digits = 0) const {
        return "(" + re_.to_decimal(digits) + ", " + im_.to_decimal(digits) + ")";
    }

private:
    Real re_, im_;
};

inline Real abs(const Complex& z) { return hypot(z.re(), z.im()); }

inline Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

inline Complex i_unit(long prec) { return Complex(Real(0L, prec), Real(1L, prec)); }

// Principal square root via the half-angle formulas; avoids cancellation by
// computing the larger of |u|,|v| first.
inline Complex sqrt(const Complex& z) {
    long p = z.prec();
    if (z.is_zero()) return Complex(p);
    Real a = abs(z);
    if (z.re().sign() >= 0) {
        Real u = sqrt((a + z.re()) / 2);
        Real v = z.im() / (u * 2);
        return Complex(u, v);
    }
    Real v = sqrt((a - z.re()) / 2);
    if (z.im().sign() < 0) v = -v;  // principal branch: Im(sqrt) carries sign of Im(z)
    Real u = z.im() / (v * 2);
    return Complex(u, v);
}

inline Complex exp(const Complex& z) {
    Real m = exp(z.re());
    return Complex(m * cos(z.im()), m * sin(z.im()));
}

inline Complex log(const Complex& z) {
    if (z.is_zero()) throw std::domain_error("Complex log of zero");
    return Complex(log(abs(z)), arg(z));
}

inline Complex cos(const Complex& z) {
    Complex iz(-z.im(), z.re());
    return (exp(iz) + exp(-iz)) / 2;
}

inline Complex sin(const Complex& z) {
    Complex iz(-z.im(), z.re());
    Complex d = exp(iz) - exp(-iz);
    return Complex(d.im() / 2, -d.re() / 2);  // d / (2i)
}

inline Complex pow_ui(const Complex& z, unsigned long n) {
    Complex acc(1L, z.prec());
    Complex base = z;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

} // namespace msurf

#endif
