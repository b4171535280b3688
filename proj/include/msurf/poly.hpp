// Multivariate polynomials in x, y, z.
//
// TPoly<C> is a sparse polynomial with coefficients in C; the two rings used
// throughout are TPoly<Rat> (exact, the default "Poly") and TPoly<Complex>
// (numeric Taylor data in the singularity module).  Monomials are ordered
// graded-lexicographically with x > y > z, which fixes every canonical
// serialization and every echelon pivot in the library.
//
// reduce_quadratic() is the normal-form workhorse: given a designated
// variable v and a substitution polynomial S with deg_v(S) <= 1 it rewrites
// v^2 -> S until every monomial has v-degree <= 1.  For a Markov-type
// surface v = z and S = Ax + By + Cz + D - x^2 - y^2 - Exyz; the model germs
// of the singularity module reuse the same routine with their own v.

#ifndef MSURF_POLY_HPP
#define MSURF_POLY_HPP

#include "msurf/complex.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace msurf {

enum class Var : int { x = 0, y = 1, z = 2 };

struct Mono {
    std::array<unsigned, 3> e{0, 0, 0};

    unsigned deg() const { return e[0] + e[1] + e[2]; }
    unsigned operator[](Var v) const { return e[size_t(v)]; }
    unsigned& operator[](Var v) { return e[size_t(v)]; }

    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }

    static Mono one() { return {}; }
    static Mono var(Var v, unsigned k = 1) {
        Mono m;
        m[v] = k;
        return m;
    }
    static Mono xyz(unsigned i, unsigned j, unsigned k) { return Mono{{i, j, k}}; }

    Mono operator*(const Mono& o) const {
        return Mono{{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}};
    }
};

// Graded lex with x > y > z.  Map order: lower total degree first, and
// within a degree the x-dominant (grlex-larger) monomial first, which is
// also the canonical serialization order.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.e > b.e;
    }
};

namespace coeff {
inline bool is_zero(const Rat& c) { return c == 0; }
inline bool is_zero(const Complex& c) { return c.is_zero(); }
inline Rat zero(const Rat&) { return Rat(0); }
inline Complex zero(const Complex& c) { return Complex(c.prec()); }
}  // namespace coeff

template <class C>
class TPoly {
public:
    using Map = std::map<Mono, C, GrlexLess>;

    TPoly() = default;

    static TPoly zero() { return TPoly(); }

    static TPoly constant(C c) {
        TPoly p;
        p.add_term(Mono::one(), std::move(c));
        return p;
    }

    static TPoly monomial(Mono m, C c) {
        TPoly p;
        p.add_term(m, std::move(c));
        return p;
    }

    static TPoly variable(Var v, C one_value) {
        return monomial(Mono::var(v), std::move(one_value));
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    unsigned degree() const {
        unsigned d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.deg());
        return d;
    }

    unsigned degree_in(Var v) const {
        unsigned d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m[v]);
        return d;
    }

    C coeff(const Mono& m) const {
        auto it = t_.find(m);
        if (it == t_.end()) {
            if constexpr (std::is_same_v<C, Rat>) return Rat(0);
            else return Complex(prec_hint());
        }
        return it->second;
    }

    void add_term(const Mono& m, C c) {
        if (coeff::is_zero(c)) return;
        auto [it, fresh] = t_.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (coeff::is_zero(it->second)) t_.erase(it);
        }
    }

    TPoly operator-() const {
        TPoly r;
        for (auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        TPoly r = a;
        for (auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        TPoly r = a;
        for (auto& [m, c] : b.t_) r.add_term(m, -c);
        return r;
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend TPoly operator*(const TPoly& a, const C& s) {
        TPoly r;
        if (coeff::is_zero(s)) return r;
        for (auto& [m, c] : a.t_) r.add_term(m, c * s);
        return r;
    }
    friend TPoly operator*(const C& s, const TPoly& a) { return a * s; }

    TPoly& operator+=(const TPoly& b) { *this = *this + b; return *this; }
    TPoly& operator-=(const TPoly& b) { *this = *this - b; return *this; }
    TPoly& operator*=(const TPoly& b) { *this = *this * b; return *this; }

    friend bool operator==(const TPoly& a, const TPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    TPoly pow(unsigned n) const {
        TPoly acc = constant_one();
        TPoly base = *this;
        while (n) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    TPoly derivative(Var v) const {
        TPoly r;
        for (auto& [m, c] : t_) {
            if (m[v] == 0) continue;
            Mono d = m;
            d[v] -= 1;
            r.add_term(d, c * long(m[v]));
        }
        return r;
    }

    // Substitutes polynomials for the three variables.
    TPoly subst(const TPoly& px, const TPoly& py, const TPoly& pz) const {
        TPoly r;
        for (auto& [m, c] : t_) {
            TPoly term = constant_one() * c;
            if (m.e[0]) term *= px.pow(m.e[0]);
            if (m.e[1]) term *= py.pow(m.e[1]);
            if (m.e[2]) term *= pz.pow(m.e[2]);
            r += term;
        }
        return r;
    }

    // Drops every monomial of total degree > cap.
    TPoly truncate(unsigned cap) const {
        TPoly r;
        for (auto& [m, c] : t_)
            if (m.deg() <= cap) r.t_.emplace(m, c);
        return r;
    }

    // Largest monomial in grlex order, or nullopt for the zero polynomial.
    // In map order that is the first entry of the top-degree block.
    std::optional<Mono> leading_monomial() const {
        if (t_.empty()) return std::nullopt;
        unsigned top = t_.rbegin()->first.deg();
        auto it = t_.lower_bound(Mono::xyz(top, 0, 0));
        return it->first;
    }

    Complex eval(const Complex& x, const Complex& y, const Complex& z, long prec) const {
        std::vector<Complex> px = powers(x, degree_in(Var::x), prec);
        std::vector<Complex> py = powers(y, degree_in(Var::y), prec);
        std::vector<Complex> pz = powers(z, degree_in(Var::z), prec);
        Complex acc(prec);
        for (auto& [m, c] : t_) {
            Complex term = to_complex(c, prec);
            if (m.e[0]) term *= px[m.e[0]];
            if (m.e[1]) term *= py[m.e[1]];
            if (m.e[2]) term *= pz[m.e[2]];
            acc += term;
        }
        return acc;
    }

private:
    TPoly constant_one() const {
        if constexpr (std::is_same_v<C, Rat>) return constant(Rat(1));
        else return constant(Complex(1L, prec_hint()));
    }

    long prec_hint() const {
        if constexpr (std::is_same_v<C, Complex>) {
            if (!t_.empty()) return t_.begin()->second.prec();
        }
        return kDefaultPrec;
    }

    static Complex to_complex(const Rat& c, long prec) { return Complex(c, prec); }
    static Complex to_complex(const Complex& c, long prec) { return c.round_to(prec); }

    static std::vector<Complex> powers(const Complex& v, unsigned maxp, long prec) {
        std::vector<Complex> p;
        p.reserve(maxp + 1);
        p.push_back(Complex(1L, prec));
        for (unsigned k = 1; k <= maxp; ++k) p.push_back(p.back() * v);
        return p;
    }

    Map t_;
};

using Poly = TPoly<Rat>;
using CPoly = TPoly<Complex>;

inline Poly poly_const(long n) { return Poly::constant(Rat(n)); }
inline Poly poly_const(const Rat& q) { return Poly::constant(q); }
inline Poly poly_var(Var v) { return Poly::variable(v, Rat(1)); }
inline Poly poly_mono(unsigned i, unsigned j, unsigned k, Rat c = Rat(1)) {
    return Poly::monomial(Mono::xyz(i, j, k), std::move(c));
}

// v^2 -> S, repeated until deg_v <= 1.  Requires deg_v(S) <= 1, which makes
// every pass strictly lower the maximal v-degree.
template <class C>
TPoly<C> reduce_quadratic(const TPoly<C>& p, Var v, const TPoly<C>& S) {
    if (S.degree_in(v) > 1)
        throw std::invalid_argument("reduce_quadratic: substitute has v-degree > 1");
    TPoly<C> cur = p;
    while (cur.degree_in(v) >= 2) {
        TPoly<C> next;
        for (auto& [m, c] : cur.terms()) {
            if (m[v] < 2) {
                next.add_term(m, c);
                continue;
            }
            Mono rest = m;
            rest[v] -= 2;
            next += TPoly<C>::monomial(rest, c) * S;
        }
        cur = std::move(next);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Canonical text form: terms ordered by (total degree asc, exponent vector
// x-dominant first), each as c*x^i*y^j*z^k with the coefficient always
// printed and negative coefficients absorbing the separator, e.g.
// "2*z^1-3*x^1*y^1".
// ---------------------------------------------------------------------------

inline std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto& [m, c] : p.terms()) {
        std::string cs = c.get_str();
        if (!out.empty() && cs[0] != '-') out += "+";
        out += cs;
        for (Var v : {Var::x, Var::y, Var::z}) {
            if (m[v] == 0) continue;
            out += "*";
            out += (v == Var::x ? "x" : v == Var::y ? "y" : "z");
            out += "^" + std::to_string(m[v]);
        }
    }
    return out;
}

// Parses the canonical form plus the obvious human variants: optional '*',
// optional '^1', optional coefficient, whitespace.
inline Poly poly_from_string(const std::string& s) {
    Poly out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    if (i == s.size()) throw std::invalid_argument("empty polynomial string");
    while (i < s.size()) {
        int sign = 1;
        skip_ws();
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        }
        // coefficient (optional)
        Rat c(1);
        bool saw_coeff = false;
        if (i < s.size() && (std::isdigit((unsigned char)s[i]))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '/')) ++j;
            c = rat_from_string(s.substr(i, j - i));
            i = j;
            saw_coeff = true;
        }
        Mono m;
        bool saw_var = false;
        while (true) {
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip_ws();
            }
            if (i >= s.size()) break;
            char v = s[i];
            if (v != 'x' && v != 'y' && v != 'z') break;
            ++i;
            unsigned e = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                size_t j = i;
                while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                if (j == i) throw std::invalid_argument("missing exponent in '" + s + "'");
                e = unsigned(std::stoul(s.substr(i, j - i)));
                i = j;
            }
            Var var = v == 'x' ? Var::x : v == 'y' ? Var::y : Var::z;
            m[var] += e;
            saw_var = true;
        }
        if (!saw_coeff && !saw_var)
            throw std::invalid_argument("cannot parse polynomial '" + s + "'");
        if (sign < 0) c = -c;
        out.add_term(m, c);
        skip_ws();
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw std::invalid_argument("unexpected character in polynomial '" + s + "'");
    }
    return out;
}

} // namespace msurf

#endif
