// Degree-capped Poisson-Lie closure of lie(1, x^k, y^k, z^k) in the
// coordinate ring of a Markov-type surface, with replayable generation
// certificates, plus symbolic verification of the bracket identities that
// drive the induction (step1/step2/step3 and the numbered membership chains).
//
// Everything here is exact rational arithmetic; a certificate replays to its
// target with equality, not tolerance.

#ifndef MSURF_LIEGEN_HPP
#define MSURF_LIEGEN_HPP

#include "msurf/poisson.hpp"

#include <deque>
#include <optional>
#include <variant>

namespace msurf {

// The normal-form monomial space of degree <= max_deg: monomials x^i y^j and
// x^i y^j z.  For max_deg = 6 this is 28 + 21 = 49 monomials.
class NormalSpace {
public:
    explicit NormalSpace(unsigned max_deg) : max_deg_(max_deg) {
        for (unsigned d = 0; d <= max_deg; ++d)
            for (unsigned k = 0; k <= std::min(1u, d); ++k)
                for (unsigned i = 0; i + k <= d; ++i) {
                    Mono m = Mono::xyz(i, d - k - i, k);
                    index_.emplace(m, monos_.size());
                    monos_.push_back(m);
                }
    }

    unsigned max_deg() const { return max_deg_; }
    size_t dim() const { return monos_.size(); }
    const Mono& mono(size_t i) const { return monos_[i]; }

    std::optional<size_t> index(const Mono& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::vector<Rat> to_vector(const NormalPoly& p) const {
        std::vector<Rat> v(dim(), Rat(0));
        for (auto& [m, c] : p.p.terms()) {
            auto ix = index(m);
            if (!ix) raise("DegreeOverflow", "polynomial exceeds the normal space degree cap");
            v[*ix] = c;
        }
        return v;
    }

    NormalPoly from_vector(const std::vector<Rat>& v) const {
        Poly p;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) p.add_term(monos_[i], v[i]);
        return NormalPoly(std::move(p));
    }

private:
    unsigned max_deg_;
    std::vector<Mono> monos_;
    std::map<Mono, size_t, GrlexLess> index_;
};

// Derivation DAG.  Leaves are generators; internal nodes are bracket
// applications and rational linear combinations of earlier nodes.
struct CertNode {
    enum class Kind { Generator, Bracket, Combination };
    Kind kind = Kind::Generator;
    size_t gen = 0;                              // Generator
    size_t left = 0, right = 0;                  // Bracket
    std::vector<std::pair<Rat, size_t>> combo;   // Combination
};

class CertStore {
public:
    size_t add_generator(size_t gen_index) {
        CertNode n;
        n.kind = CertNode::Kind::Generator;
        n.gen = gen_index;
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    size_t add_bracket(size_t a, size_t b) {
        CertNode n;
        n.kind = CertNode::Kind::Bracket;
        n.left = a;
        n.right = b;
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    size_t add_combination(std::vector<std::pair<Rat, size_t>> combo) {
        CertNode n;
        n.kind = CertNode::Kind::Combination;
        n.combo = std::move(combo);
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    const CertNode& node(size_t id) const { return nodes_[id]; }
    size_t size() const { return nodes_.size(); }

    // Recomputes the polynomial a node derives, from generator leaves up.
    NormalPoly replay(size_t id, const std::vector<NormalPoly>& generators,
                      const SurfaceParams& s) const {
        std::vector<std::optional<NormalPoly>> memo(nodes_.size());
        return replay_rec(id, generators, s, memo);
    }

private:
    NormalPoly replay_rec(size_t id, const std::vector<NormalPoly>& gens, const SurfaceParams& s,
                          std::vector<std::optional<NormalPoly>>& memo) const {
        if (memo[id]) return *memo[id];
        const CertNode& n = nodes_[id];
        NormalPoly out;
        switch (n.kind) {
        case CertNode::Kind::Generator:
            out = gens[n.gen];
            break;
        case CertNode::Kind::Bracket:
            out = bracket(replay_rec(n.left, gens, s, memo).p,
                          replay_rec(n.right, gens, s, memo).p, s);
            break;
        case CertNode::Kind::Combination: {
            Poly acc;
            for (auto& [c, sub] : n.combo) acc += replay_rec(sub, gens, s, memo).p * c;
            out = NormalPoly(std::move(acc));
            break;
        }
        }
        memo[id] = out;
        return out;
    }

    std::vector<CertNode> nodes_;
};

// Row-reduced span over the normal space.  Pivot of a row is its last
// nonzero coordinate in the fixed monomial enumeration; pivots are unique
// and pivot coefficients are 1.
class SpanBasis {
public:
    explicit SpanBasis(NormalSpace space) : space_(std::move(space)) {}

    const NormalSpace& space() const { return space_; }
    size_t rank() const { return rows_.size(); }

    struct Row {
        std::vector<Rat> vec;
        size_t pivot;
        size_t cert;
    };

    const std::map<size_t, Row>& rows() const { return rows_; }

    // Reduces v against the basis in place; records the combination of row
    // certificates subtracted.  Returns the residual.
    std::vector<Rat> reduce(std::vector<Rat> v,
                            std::vector<std::pair<Rat, size_t>>* combo) const {
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            const Row& r = it->second;
            if (v[r.pivot] == 0) continue;
            Rat c = v[r.pivot];
            for (size_t i = 0; i <= r.pivot; ++i)
                if (r.vec[i] != 0) v[i] -= c * r.vec[i];
            if (combo) combo->emplace_back(-c, r.cert);
        }
        return v;
    }

    // Inserts the vector if it is a new direction; returns the new row's
    // pivot index, or nullopt if dependent.  `cert` derives the inserted
    // vector; the stored row certificate accounts for the normalization.
    std::optional<size_t> insert(const std::vector<Rat>& vec, size_t cert, CertStore& store) {
        std::vector<std::pair<Rat, size_t>> combo;
        std::vector<Rat> v = reduce(vec, &combo);
        size_t pivot = v.size();
        for (size_t i = v.size(); i-- > 0;)
            if (v[i] != 0) { pivot = i; break; }
        if (pivot == v.size()) return std::nullopt;
        Rat lead = v[pivot];
        for (auto& c : v) c /= lead;
        size_t row_cert = cert;
        if (!combo.empty() || lead != 1) {
            std::vector<std::pair<Rat, size_t>> full;
            full.emplace_back(Rat(1) / lead, cert);
            for (auto& [c, id] : combo) full.emplace_back(c / lead, id);
            row_cert = store.add_combination(std::move(full));
        }
        rows_.emplace(pivot, Row{std::move(v), pivot, row_cert});
        return pivot;
    }

    bool contains(const NormalPoly& p) const {
        if (p.p.degree() > space_.max_deg()) return false;
        auto v = reduce(space_.to_vector(p), nullptr);
        for (auto& c : v)
            if (c != 0) return false;
        return true;
    }

    // Set of pivot monomial indices; two bases span the same space iff the
    // reduced forms agree -- for the shuffle test comparing pivots plus
    // mutual containment is enough.
    std::vector<size_t> pivots() const {
        std::vector<size_t> out;
        for (auto& [p, r] : rows_) out.push_back(p);
        return out;
    }

private:
    NormalSpace space_;
    std::map<size_t, Row> rows_;
};

struct Generator {
    Mono mono;         // the generator monomial x^k / y^k / z^k / 1
    NormalPoly poly;   // its normal form in the coordinate ring
    size_t cert;
};

struct SpanResult {
    SpanBasis basis;
    CertStore certs;
    std::vector<NormalPoly> generator_polys;  // indexed by CertNode::gen
    std::vector<Generator> generators;
    size_t brackets_computed = 0;
    size_t rounds = 0;
};

struct CloseSpanOptions {
    bool full_pairing = false;          // bracket new elements against all basis
    const std::vector<size_t>* seed_order = nullptr;  // permutation of generators
};

// Seeds with {1, x^k, y^k, z^k : k <= max_gen_deg} and closes under the
// bracket with the generators (optionally all pairs), discarding results of
// normal-form degree > max_deg.  Deterministic for a fixed option set.
inline SpanResult close_span(const SurfaceParams& s, unsigned max_gen_deg, unsigned max_deg,
                             const CloseSpanOptions& opt = {}) {
    if (max_gen_deg < 1 || max_deg < max_gen_deg)
        raise("BadCaps", "close_span requires max_deg >= max_gen_deg >= 1");
    NormalSpace space(max_deg);
    SpanResult res{SpanBasis(space), CertStore{}, {}, {}};

    std::vector<Mono> gen_monos{Mono::one()};
    for (unsigned k = 1; k <= max_gen_deg; ++k)
        for (Var v : {Var::x, Var::y, Var::z}) gen_monos.push_back(Mono::var(v, k));
    if (opt.seed_order) {
        if (opt.seed_order->size() != gen_monos.size())
            raise("BadCaps", "seed_order size mismatch");
        std::vector<Mono> perm;
        for (size_t ix : *opt.seed_order) perm.push_back(gen_monos[ix]);
        gen_monos = std::move(perm);
    }

    struct Item {
        NormalPoly poly;
        size_t cert;
    };
    std::deque<Item> work;
    std::vector<Item> basis_items;  // for full pairing

    for (auto& gm : gen_monos) {
        NormalPoly np = poly_reduce(Poly::monomial(gm, Rat(1)), s);
        size_t gi = res.generator_polys.size();
        res.generator_polys.push_back(np);
        size_t cert = res.certs.add_generator(gi);
        res.generators.push_back({gm, np, cert});
        // a seed whose normal form exceeds the cap stays a bracket partner
        // but cannot enter the capped basis
        if (np.p.degree() > max_deg) continue;
        if (res.basis.insert(space.to_vector(np), cert, res.certs)) {
            work.push_back({np, cert});
            basis_items.push_back({np, cert});
        }
    }

    while (!work.empty()) {
        ++res.rounds;
        Item e = work.front();
        work.pop_front();
        size_t partner_count = opt.full_pairing ? basis_items.size() : res.generators.size();
        for (size_t pi = 0; pi < partner_count; ++pi) {
            const NormalPoly& q = opt.full_pairing ? basis_items[pi].poly
                                                   : res.generators[pi].poly;
            size_t qcert = opt.full_pairing ? basis_items[pi].cert : res.generators[pi].cert;
            Poly raw = bracket_raw(e.poly.p, q.p, s);
            ++res.brackets_computed;
            NormalPoly b = poly_reduce(raw, s);
            if (b.is_zero() || b.p.degree() > max_deg) continue;
            size_t cert = res.certs.add_bracket(e.cert, qcert);
            if (res.basis.insert(space.to_vector(b), cert, res.certs)) {
                work.push_back({b, cert});
                basis_items.push_back({b, cert});
            }
        }
    }
    return res;
}

// A replayable derivation of one monomial from the generators.
struct Certificate {
    Mono target;
    size_t root;  // node in the span's CertStore
};

struct NotInSpan {
    Mono target;
};

inline std::variant<Certificate, NotInSpan> certify_monomial(SpanResult& span, const Mono& m) {
    auto ix = span.basis.space().index(m);
    if (!ix) return NotInSpan{m};
    NormalPoly target = NormalPoly(Poly::monomial(m, Rat(1)));
    std::vector<std::pair<Rat, size_t>> combo;
    auto residual = span.basis.reduce(span.basis.space().to_vector(target), &combo);
    for (auto& c : residual)
        if (c != 0) return NotInSpan{m};
    // reduce() records subtractions; the membership combination flips signs.
    for (auto& [c, id] : combo) c = -c;
    size_t root = span.certs.add_combination(std::move(combo));
    return Certificate{m, root};
}

// Exact replay check: the certificate reproduces its target.
inline bool certificate_replays(const SpanResult& span, const Certificate& cert,
                                const SurfaceParams& s) {
    NormalPoly got = span.certs.replay(cert.root, span.generator_polys, s);
    return got.p == Poly::monomial(cert.target, Rat(1));
}

// ---------------------------------------------------------------------------
// Symbolic verification of the displayed identities in the proofs of the
// generation lemmas.  step1/step2/step3 displays hold in C[x,y,z] before any
// reduction; the numbered membership chains substitute the defining equation
// and hold in normal form with the already-known summands made explicit.
// ---------------------------------------------------------------------------

struct IdentityCheck {
    std::string name;
    bool ok;
    std::string mismatch;  // canonical string of the difference when !ok
};

struct LemmaReport {
    std::vector<IdentityCheck> checks;

    bool all_ok() const {
        for (auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

namespace detail {

inline void check_raw(LemmaReport& rep, const std::string& name, const Poly& lhs,
                      const Poly& rhs) {
    Poly diff = lhs - rhs;
    rep.checks.push_back({name, diff.is_zero(), diff.is_zero() ? "" : poly_to_string(diff)});
}

inline void check_mod(LemmaReport& rep, const std::string& name, const Poly& lhs, const Poly& rhs,
                      const SurfaceParams& s) {
    Poly diff = poly_reduce(lhs - rhs, s).p;
    rep.checks.push_back({name, diff.is_zero(), diff.is_zero() ? "" : poly_to_string(diff)});
}

} // namespace detail

inline LemmaReport verify_lemma_identities(const SurfaceParams& s, unsigned k, unsigned m,
                                           unsigned p) {
    if (k < 1 || m < 1 || p > k)
        raise("BadCaps", "verify_lemma_identities requires k,m >= 1 and p <= k");
    LemmaReport rep;
    const Rat A = s.A.rat(), B = s.B.rat(), C = s.C.rat(), D = s.D.rat(), E = s.E.rat();
    auto X = [](unsigned i, unsigned j, unsigned l, Rat c) { return poly_mono(i, j, l, c); };
    BracketTable table(s);

    // --- step1: the six generator identities at this k ---
    detail::check_raw(rep, "step1 {x, x^k y}",
                      bracket_raw(poly_var(Var::x), X(k, 1, 0, Rat(1)), s),
                      X(k, 0, 1, Rat(2)) + X(k + 1, 1, 0, E) - X(k, 0, 0, C));
    detail::check_raw(rep, "step1 {y, y^k z}",
                      bracket_raw(poly_var(Var::y), X(0, k, 1, Rat(1)), s),
                      X(1, k, 0, Rat(2)) + X(0, k + 1, 1, E) - X(0, k, 0, A));
    detail::check_raw(rep, "step1 {z, z^k x}",
                      bracket_raw(poly_var(Var::z), X(1, 0, k, Rat(1)), s),
                      X(0, 1, k, Rat(2)) + X(1, 0, k + 1, E) - X(0, 0, k, B));
    detail::check_raw(rep, "step1 {x, x^k z}",
                      bracket_raw(poly_var(Var::x), X(k, 0, 1, Rat(1)), s),
                      X(k, 1, 0, Rat(-2)) - X(k + 1, 0, 1, E) + X(k, 0, 0, B));
    detail::check_raw(rep, "step1 {y, y^k x}",
                      bracket_raw(poly_var(Var::y), X(1, k, 0, Rat(1)), s),
                      X(0, k, 1, Rat(-2)) - X(1, k + 1, 0, E) + X(0, k, 0, C));
    detail::check_raw(rep, "step1 {z, z^k y}",
                      bracket_raw(poly_var(Var::z), X(0, 1, k, Rat(1)), s),
                      X(1, 0, k, Rat(-2)) - X(0, 1, k + 1, E) + X(0, 0, k, A));

    // --- step2: {x^{k-p} y, x^p z} ---
    {
        Poly lhs = bracket_raw(X(k - p, 1, 0, Rat(1)), X(p, 0, 1, Rat(1)), s);
        Poly leibniz = X(k, 0, 0, Rat(1)) * table.yz()
                     - X(k - 1, 0, 1, Rat(long(p))) * table.xy()
                     - X(k - 1, 1, 0, Rat(long(k - p))) * table.zx();
        detail::check_raw(rep, "step2 Leibniz form", lhs, leibniz);
        Poly full = X(k - 1, 2, 0, Rat(-2) * long(k - p)) + X(k - 1, 0, 2, Rat(-2) * long(p))
                  + X(k, 1, 1, -E * long(k - 1)) + X(k + 1, 0, 0, Rat(2)) - X(k, 0, 0, A)
                  + X(k - 1, 0, 1, C * long(p)) + X(k - 1, 1, 0, B * long(k - p));
        detail::check_raw(rep, "step2 expansion", lhs, full);
    }

    // --- membership chains (3)(4)(5) at this k ---
    {
        Poly disp3 = X(k - 1, 2, 0, Rat(-2) * long(k)) + X(k, 1, 1, -E * long(k - 1));
        Poly known3 = X(k + 1, 0, 0, Rat(2)) - X(k, 0, 0, A) + X(k - 1, 1, 0, B * long(k));
        detail::check_raw(rep, "eq(3)", bracket_raw(X(k, 1, 0, Rat(1)), poly_var(Var::z), s),
                          disp3 + known3);
        Poly disp4 = X(k - 1, 0, 2, Rat(-2) * long(k)) + X(k, 1, 1, -E * long(k - 1));
        Poly known4 = X(k + 1, 0, 0, Rat(2)) - X(k, 0, 0, A) + X(k - 1, 0, 1, C * long(k));
        detail::check_raw(rep, "eq(4)", bracket_raw(poly_var(Var::y), X(k, 0, 1, Rat(1)), s),
                          disp4 + known4);
        Poly d34 = disp3 - disp4;  // -2k x^{k-1} y^2 + 2k x^{k-1} z^2
        Poly disp5 = X(k - 1, 2, 0, Rat(-4) * long(k)) + X(k, 1, 1, Rat(-2) * long(k) * E);
        Poly known5 = X(k + 1, 0, 0, Rat(-2) * long(k)) + X(k, 0, 0, Rat(2) * long(k) * A)
                    + X(k - 1, 1, 0, Rat(2) * long(k) * B) + X(k - 1, 0, 1, Rat(2) * long(k) * C)
                    + X(k - 1, 0, 0, Rat(2) * long(k) * D);
        detail::check_mod(rep, "eq(5)", d34, disp5 + known5, s);
        // extraction: (5) - 2*(3) isolates 2E x^k y z
        detail::check_raw(rep, "eq(5)-eq(3) isolates x^k y z", disp5 - (disp3 * Rat(2)),
                          X(k, 1, 1, Rat(-2) * E * long(k) + Rat(2) * E * long(k - 1)));
    }

    // --- step3: {x^{k-p} y^m, x^p z} ---
    Poly disp6, disp7;
    {
        Poly lhs = bracket_raw(X(k - p, m, 0, Rat(1)), X(p, 0, 1, Rat(1)), s);
        Poly leibniz = X(k, m - 1, 0, Rat(long(m))) * table.yz()
                     - X(k - 1, m - 1, 1, Rat(long(p) * long(m))) * table.xy()
                     - X(k - 1, m, 0, Rat(long(k - p))) * table.zx();
        detail::check_raw(rep, "step3 Leibniz form", lhs, leibniz);
        long mm = long(m), kk = long(k), pp = long(p);
        Poly full = X(k + 1, m - 1, 0, Rat(2 * mm)) - X(k, m - 1, 0, A * mm)
                  + X(k - 1, m, 0, B * (kk - pp)) + X(k - 1, m + 1, 0, Rat(-2 * (kk - pp)))
                  + X(k, m, 1, E * (mm - pp * mm - (kk - pp)))
                  + X(k - 1, m - 1, 2, Rat(-2 * pp * mm)) + X(k - 1, m - 1, 1, C * pp * mm);
        detail::check_raw(rep, "step3 expansion", lhs, full);

        // (6): p = 0 display; (7): p = k display
        disp6 = X(k - 1, m + 1, 0, Rat(-2 * kk)) + X(k, m, 1, E * (mm - kk));
        Poly known6 = X(k + 1, m - 1, 0, Rat(2 * mm)) - X(k, m - 1, 0, A * mm)
                    + X(k - 1, m, 0, B * kk);
        detail::check_raw(rep, "eq(6)", bracket_raw(X(k, m, 0, Rat(1)), poly_var(Var::z), s),
                          disp6 + known6);
        disp7 = X(k - 1, m - 1, 2, Rat(-2 * kk * mm)) + X(k, m, 1, E * mm * (1 - kk));
        Poly known7 = X(k + 1, m - 1, 0, Rat(2 * mm)) - X(k, m - 1, 0, A * mm)
                    + X(k - 1, m - 1, 1, C * kk * mm);
        detail::check_raw(rep, "eq(7)", bracket_raw(X(0, m, 0, Rat(1)), X(k, 0, 1, Rat(1)), s),
                          disp7 + known7);
    }

    // --- (8) and the closing steps of step3 ---
    {
        long mm = long(m), kk = long(k);
        Rat c1 = Rat(1 - kk) / Rat(2 * kk);
        Rat c2 = -Rat(mm - kk) / Rat(2 * kk * mm);
        Poly combo = disp6 * c1 + disp7 * c2;
        Poly combo_expected = X(k - 1, m + 1, 0, Rat(-(1 - kk)))
                            + X(k - 1, m - 1, 2, Rat(mm - kk));
        detail::check_raw(rep, "eq(8) linear combination", combo, combo_expected);
        Poly disp8 = X(k - 1, m + 1, 0, Rat(-(1 + mm - 2 * kk))) + X(k, m, 1, -E * (mm - kk));
        Poly known8 = X(k + 1, m - 1, 0, Rat(-(mm - kk))) + X(k, m - 1, 0, A * (mm - kk))
                    + X(k - 1, m, 0, B * (mm - kk)) + X(k - 1, m - 1, 1, C * (mm - kk))
                    + X(k - 1, m - 1, 0, D * (mm - kk));
        detail::check_mod(rep, "eq(8)", combo, disp8 + known8, s);
        detail::check_raw(rep, "eq(6)+eq(8) isolates x^{k-1} y^{m+1}", disp6 + disp8,
                          X(k - 1, m + 1, 0, Rat(-(1 + mm))));
        // k = m branch: substitute the defining equation into (7) at k = m
        Poly disp7km = X(m - 1, m - 1, 2, Rat(-2 * mm * mm)) + X(m, m, 1, E * mm * (1 - mm));
        Poly display_km = X(m - 1, m + 1, 0, Rat(2 * mm * mm)) + X(m, m, 1, E * mm * (1 + mm));
        Poly known_km = X(m + 1, m - 1, 0, Rat(2 * mm * mm)) - X(m, m - 1, 0, A * 2 * mm * mm)
                      - X(m - 1, m, 0, B * 2 * mm * mm) - X(m - 1, m - 1, 1, C * 2 * mm * mm)
                      - X(m - 1, m - 1, 0, D * 2 * mm * mm);
        detail::check_mod(rep, "step3 k=m display", disp7km, display_km + known_km, s);
    }

    return rep;
}

} // namespace msurf

#endif
