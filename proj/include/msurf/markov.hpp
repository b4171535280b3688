// Markov triples x^2 + y^2 + z^2 = 3xyz: exact tree enumeration via the
// Vieta involutions, Lagrange spectrum values sqrt(9z^2-4)/z, and an
// empirical fit of the Zagier growth law m_n = (1/3) exp(C sqrt(n) + o(1)).

#ifndef MSURF_MARKOV_HPP
#define MSURF_MARKOV_HPP

#include "msurf/errors.hpp"
#include "msurf/real.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <vector>

namespace msurf {

struct MarkovTriple {
    BigInt x, y, z;  // sorted ascending, all positive

    MarkovTriple(BigInt a, BigInt b, BigInt c) : x(std::move(a)), y(std::move(b)), z(std::move(c)) {
        if (x > y) std::swap(x, y);
        if (y > z) std::swap(y, z);
        if (x > y) std::swap(x, y);
        if (x <= 0) raise("InvalidTriple", "Markov triples are positive");
        if (x * x + y * y + z * z != 3 * x * y * z)
            raise("InvalidTriple", "not a solution of x^2+y^2+z^2 = 3xyz");
    }

    friend bool operator==(const MarkovTriple& a, const MarkovTriple& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    // sorted by (z, y, x)
    friend bool operator<(const MarkovTriple& a, const MarkovTriple& b) {
        if (a.z != b.z) return a.z < b.z;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

// The three Vieta moves (3yz-x, y, z), (x, 3xz-y, z), (x, y, 3xy-z),
// re-sorted.  Each is an involution on unordered triples.
inline std::array<MarkovTriple, 3> vieta_moves(const MarkovTriple& t) {
    return {MarkovTriple(3 * t.y * t.z - t.x, t.y, t.z),
            MarkovTriple(t.x, 3 * t.x * t.z - t.y, t.z),
            MarkovTriple(t.x, t.y, 3 * t.x * t.y - t.z)};
}

// All ordered triples with max coordinate <= bound, sorted by (z, y, x).
// Breadth-first walk from (1,1,1); the two non-parent moves strictly grow
// the maximal coordinate, so pruning at the bound is exhaustive (the tests
// re-check this against a direct discriminant search).
inline std::vector<MarkovTriple> enumerate_ordered(const BigInt& bound) {
    if (bound < 1) raise("InvalidBound", "enumeration bound must be >= 1");
    std::vector<MarkovTriple> out;
    std::set<MarkovTriple> seen;
    std::deque<MarkovTriple> work;
    MarkovTriple root(1, 1, 1);
    if (root.z <= bound) {
        work.push_back(root);
        seen.insert(root);
    }
    while (!work.empty()) {
        MarkovTriple t = work.front();
        work.pop_front();
        out.push_back(t);
        for (auto& child : vieta_moves(t)) {
            if (child.z > bound) continue;
            if (seen.insert(child).second) work.push_back(child);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Markov numbers: the set of maximal coordinates, increasing.
inline std::vector<BigInt> markov_numbers(size_t count) {
    BigInt bound = 64;
    while (true) {
        auto triples = enumerate_ordered(bound);
        std::set<BigInt> zs;
        for (auto& t : triples) zs.insert(t.z);
        if (zs.size() >= count + 1 || bound > BigInt(1) << 200) {
            std::vector<BigInt> out(zs.begin(), zs.end());
            if (out.size() > count) out.resize(count);
            if (out.size() < count) raise("EnumerationOverflow", "could not enumerate that many Markov numbers");
            return out;
        }
        bound *= bound;  // doubly exponential growth of the tree
    }
}

inline bool is_markov_number(const BigInt& z) {
    auto triples = enumerate_ordered(z);
    for (auto& t : triples)
        if (t.x == z || t.y == z || t.z == z) return true;
    return false;
}

// sqrt(9 z^2 - 4) / z; the Lagrange spectrum below 3 is exactly the set of
// these values over Markov numbers z.
inline Real lagrange_value(const BigInt& z, long prec) {
    if (!is_markov_number(z)) raise("NotMarkovNumber", z.get_str() + " is not a Markov number");
    Real num(BigInt(9 * z * z - 4), prec);
    return sqrt(num) / Real(z, prec);
}

struct ZagierFit {
    Real slope;       // the estimate of C
    Real intercept;
    std::vector<Real> residuals;  // log(3 m_n) - (C sqrt(n) + intercept)
    size_t from = 1, to = 0;
};

// Least squares fit of log(3 m_n) against sqrt(n) over n in [from, to].
inline ZagierFit zagier_fit(size_t to, size_t from = 1, long prec = kDefaultPrec) {
    if (from < 1 || to < from + 1) raise("InvalidBound", "zagier_fit needs at least two points");
    auto ms = markov_numbers(to);
    size_t n = to - from + 1;
    std::vector<Real> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (size_t i = from; i <= to; ++i) {
        xs.push_back(sqrt(Real(long(i), prec)));
        ys.push_back(log(Real(BigInt(3 * ms[i - 1]), prec)));
    }
    Real sx(prec), sy(prec), sxx(prec), sxy(prec);
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    Real nn(long(n), prec);
    Real denom = nn * sxx - sx * sx;
    ZagierFit fit{(nn * sxy - sx * sy) / denom, Real(prec), {}, from, to};
    fit.intercept = (sy - fit.slope * sx) / nn;
    for (size_t i = 0; i < n; ++i)
        fit.residuals.push_back(ys[i] - (fit.slope * xs[i] + fit.intercept));
    return fit;
}

} // namespace msurf

#endif
