#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "gvdkit/monomial_ideal.hpp"
#include "gvdkit/search_counter.hpp"

namespace gvdkit {

namespace detail {

inline std::shared_ptr<const ReducedGB> make_gb(const RingPtr& r, std::vector<Polynomial> elems) {
    return std::make_shared<const ReducedGB>(ReducedGB{r, std::move(elems)});
}

/// Ideal whose reduced GB under the order of `r` is already known to be `reduced`.
inline Ideal seeded_ideal(const RingPtr& r, std::vector<Polynomial> reduced) {
    for (auto& g : reduced) g = g.in_ring(r);
    Ideal J(r, reduced);
    J.seed_gb(make_gb(r, std::move(reduced)));
    return J;
}

inline bool same_gb(const Ideal& a, const Ideal& b, const MonomialOrder& ord) {
    return a.gb(ord)->elements == b.gb(ord)->elements;
}

}  // namespace detail

/// Reduced GB under lex with y greatest has y-degree at most one in every term.
inline bool squarefree_in_y(const Ideal& I, std::size_t y, const MonomialOrder& ord) {
    if (ord.greatest() != y) throw BadParameter("squarefree_in_y needs an order with y greatest");
    const auto G = I.gb(ord);
    for (const auto& g : G->elements)
        if (g.degree_in(y) > 1) return false;
    return true;
}

inline bool squarefree_in_y(const Ideal& I, std::size_t y) {
    return squarefree_in_y(I, y, I.ring()->order.with_greatest(y));
}

/// The C/N split read off the reduced GB {y^{d_i} q_i + r_i} under lex with y greatest.
struct CNSplit {
    Ideal I;
    std::size_t y = 0;
    std::string y_name;
    RingPtr split_ring;  // variables of I, y greatest, others in I's relative order
    std::shared_ptr<const ReducedGB> gb;
    std::vector<Monomial::exponent_type> degrees;  // y-degree d_i of each GB element
    std::vector<Polynomial> q, r;                  // element i = y^{d_i} q_i + r_i
    bool squarefree = false;
    Ideal C, N, in_y;  // in split_ring
    RingPtr contracted;  // without y, order induced from I's ring
    Ideal Cc, Nc;        // contractions of C and N

    std::vector<Polynomial> C_gens() const { return C.gens(); }
    std::vector<Polynomial> N_gens() const { return N.gens(); }
    std::vector<Polynomial> in_y_gens() const { return in_y.gens(); }
    const MonomialOrder& order() const { return split_ring->order; }

    /// Indices of GB elements involving y.
    std::vector<std::size_t> y_elements() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < degrees.size(); ++i)
            if (degrees[i] > 0) out.push_back(i);
        return out;
    }
};

/// Assemble the split from a reduced GB in `split_ring` (y greatest). Used by the search and by replay.
inline CNSplit split_from_gb(const Ideal& I, std::size_t y, std::shared_ptr<const ReducedGB> gb) {
    CNSplit s;
    s.I = I;
    s.y = y;
    s.y_name = I.ctx().name(y);
    s.split_ring = gb->ring;
    s.gb = gb;
    s.squarefree = true;
    const auto& R = s.split_ring;
    std::vector<Polynomial> cg, ng, ing;
    for (const auto& g : gb->elements) {
        auto d = g.degree_in(y);
        s.degrees.push_back(d);
        auto q = coeff_in(g, y, d);
        auto r = g - q * Polynomial::variable(R, y, d);
        if (d > 1) s.squarefree = false;
        if (d == 0) ng.push_back(q);
        cg.push_back(q);
        ing.push_back(d == 0 ? q : q * Polynomial::variable(R, y, d));
        s.q.push_back(q);
        s.r.push_back(r);
    }
    s.contracted = drop_variable(I.ring(), s.y_name);
    if (s.squarefree) {
        // {q_i} and {h_j} are Gröbner bases of C and N; the in_y forms of a reduced GB form a reduced GB
        auto cred = reduce_basis(cg, R);
        s.C = detail::seeded_ideal(R, cred);
        s.N = detail::seeded_ideal(R, ng);
        s.in_y = detail::seeded_ideal(R, ing);
        s.Cc = detail::seeded_ideal(s.contracted, reduce_basis(map_context(cred, s.contracted), s.contracted));
        s.Nc = detail::seeded_ideal(s.contracted, reduce_basis(map_context(ng, s.contracted), s.contracted));
    } else {
        s.C = Ideal(R, cg);
        s.N = Ideal(R, ng);
        s.in_y = Ideal(R, ing);
        s.in_y.seed_gb(detail::make_gb(R, ing));
        auto free_of_y = [&](const std::vector<Polynomial>& v) {
            std::vector<Polynomial> out;
            for (const auto& p : v) out.push_back(map_context(p, s.contracted));
            return out;
        };
        s.Cc = Ideal(s.contracted, free_of_y(cg));
        s.Nc = Ideal(s.contracted, free_of_y(ng));
    }
    return s;
}

inline CNSplit cn_split(const Ideal& I, std::size_t y) {
    if (y >= I.nvars()) throw BadParameter("variable index out of range");
    auto ord = I.ring()->order.with_greatest(y);
    return split_from_gb(I, y, I.gb(ord));
}

inline CNSplit cn_split(const Ideal& I, const std::string& y) { return cn_split(I, I.ctx().require(y)); }

struct GVDVerification {
    bool holds = false;               // in_y I = C ∩ (N + <y>)
    bool saturation_matches = false;  // C = in_y I : y^∞
    bool sum_matches = false;         // N + <y> = in_y I + <y>
    CNSplit split;
};

/// Check the decomposition equality with the elimination-based intersection, plus the two cross-checks.
inline GVDVerification verify_gvd(const CNSplit& s) {
    GVDVerification v;
    v.split = s;
    const auto& R = s.split_ring;
    const auto& ord = s.order();
    auto yv = Polynomial::variable(R, s.y);
    auto n_plus_y = ideal_sum(s.N, {yv});
    auto rhs = intersect(s.C, n_plus_y);
    v.holds = detail::same_gb(s.in_y, rhs, ord);
    v.saturation_matches = detail::same_gb(saturate(s.in_y, yv), s.C, ord);
    v.sum_matches = detail::same_gb(n_plus_y, ideal_sum(s.in_y, {yv}), ord);
    return v;
}

inline GVDVerification verify_gvd(const Ideal& I, std::size_t y) { return verify_gvd(cn_split(I, y)); }

enum class Degeneracy { UnitC, EqualRadicals, Nondegenerate };

inline std::string to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::UnitC: return "unit-c";
        case Degeneracy::EqualRadicals: return "equal-radicals";
        case Degeneracy::Nondegenerate: return "nondegenerate";
    }
    return "?";
}

struct DegeneracyReport {
    Degeneracy kind = Degeneracy::Nondegenerate;
    long ht_C = 0, ht_N = 0;
    std::string rule;                  // unit-generator | height | radical | equal-radicals
    std::optional<Polynomial> witness;  // element of C outside sqrt(N), when the radical test decided
};

/// UnitC iff 1 ∈ C; otherwise nondegenerate iff sqrt(N) misses some generator of C (N ⊆ C always).
inline DegeneracyReport classify_degeneracy(const CNSplit& s) {
    DegeneracyReport d;
    d.ht_C = height(s.Cc);
    d.ht_N = height(s.Nc);
    const auto G = s.Cc.gb();
    for (const auto& g : G->elements)
        if (g.is_constant()) {
            d.kind = Degeneracy::UnitC;
            d.rule = "unit-generator";
            return d;
        }
    if (d.ht_C != d.ht_N) {
        d.kind = Degeneracy::Nondegenerate;
        d.rule = "height";
        return d;
    }
    for (const auto& g : s.Cc.gens()) {
        if (!radical_member(g, s.Nc)) {
            d.kind = Degeneracy::Nondegenerate;
            d.rule = "radical";
            d.witness = g;
            return d;
        }
    }
    d.kind = Degeneracy::EqualRadicals;
    d.rule = "equal-radicals";
    return d;
}

enum class NonpureCase { EqualRadicals, DisjointMinPrimes, Fails };

inline std::string to_string(NonpureCase c) {
    switch (c) {
        case NonpureCase::EqualRadicals: return "equal-radicals";
        case NonpureCase::DisjointMinPrimes: return "disjoint-min-primes";
        case NonpureCase::Fails: return "fails";
    }
    return "?";
}

struct NonpureCheck {
    bool holds = false;
    NonpureCase kind = NonpureCase::Fails;
    std::string reason;
};

/// Nonpure side condition for a monomial ideal: the decomposition holds and either sqrt C = sqrt N
/// or no minimal prime of C is a minimal prime of N.
inline NonpureCheck nonpure_gvd_check(const CNSplit& s, bool verify = true) {
    if (!s.I.gb()->elements.empty() && !detail::all_monomial(s.I.gb()->elements)) throw NotMonomial(s.I.to_string());
    NonpureCheck c;
    if (!s.squarefree) {
        c.reason = "not squarefree in " + s.y_name;
        return c;
    }
    if (verify && !verify_gvd(s).holds) {
        c.reason = "decomposition equality fails";
        return c;
    }
    auto pc = monomial_minimal_primes(s.Cc);
    auto pn = monomial_minimal_primes(s.Nc);
    if (pc == pn) {
        c.holds = true;
        c.kind = NonpureCase::EqualRadicals;
        return c;
    }
    for (auto p : pc)
        if (std::find(pn.begin(), pn.end(), p) != pn.end()) {
            c.reason = "minimal prime of C is a minimal prime of N";
            return c;
        }
    c.holds = true;
    c.kind = NonpureCase::DisjointMinPrimes;
    return c;
}

inline NonpureCheck nonpure_gvd_check(const Ideal& I, std::size_t y) { return nonpure_gvd_check(cn_split(I, y)); }

}  // namespace gvdkit
