#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gvdkit/gvd.hpp"

namespace gvdkit {

/// f is a non-zero-divisor on R/N: (N : f) = N.
inline bool regular_mod(const Polynomial& f, const Ideal& N) {
    if (f.is_zero()) return false;
    if (N.is_zero()) return true;
    // in(N) : in(f) = in(N) already forces (N : f) = N; only fall back to the colon when it does not
    const auto G = N.gb();
    const auto lf = N.adopt(f).leading_monomial();
    const bool initial_regular = std::all_of(G->elements.begin(), G->elements.end(), [&](const Polynomial& g) {
        const auto m = g.leading_monomial() / gcd(g.leading_monomial(), lf);
        return std::any_of(G->elements.begin(), G->elements.end(),
                           [&](const Polynomial& h) { return h.leading_monomial().divides(m); });
    });
    if (initial_regular) return true;
    const auto q = colon(N, f);
    for (const auto& g : q.gens())
        if (!ideal_member(g, N)) return false;
    return true;
}

struct WitnessChecks {
    bool containment = false;  // N ⊆ I ∩ C
    bool u_regular = false;
    bool v_regular = false;
    bool identity = false;  // q_i v - (y q_i + r_i) u ∈ N for every i
    bool graded = false;    // I, C, N homogeneous and deg v = deg u + 1
    bool heights = false;   // ht C = ht I = ht N + 1
    bool saturated = false; // dim R/I > 0, so sqrt(I) is not the irrelevant ideal
    std::string note;

    bool regular() const { return u_regular && v_regular; }
    bool all() const { return containment && u_regular && v_regular && identity && graded && heights && saturated; }
};

struct BiliaisonWitness {
    std::string y;
    std::vector<FieldElement> scalars;
    Polynomial u, v;
    std::vector<Polynomial> q, g;  // the pairs (q_i, y q_i + r_i) the scalars combine
    std::vector<Polynomial> C_gens, N_gens;
    std::optional<long> degree_shift;
    std::string strategy;  // unit-vector | random
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    WitnessChecks checks;
};

struct ScalarStrategy {
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    std::size_t random_attempts = 24;
    int bound = 5;
};

namespace detail {

inline WitnessChecks verify_witness_given(const Ideal& I, const Ideal& C, const Ideal& N, const BiliaisonWitness& w,
                                          bool u_regular, bool v_regular) {
    WitnessChecks c;
    c.containment = ideal_contains(I, N) && ideal_contains(C, N);
    c.u_regular = u_regular;
    c.v_regular = v_regular;
    c.identity = true;
    for (std::size_t i = 0; i < w.q.size() && c.identity; ++i) {
        auto lhs = N.adopt(w.q[i]) * N.adopt(w.v) - N.adopt(w.g[i]) * N.adopt(w.u);
        c.identity = ideal_member(lhs, N);
    }
    const bool homogeneous = I.gens_homogeneous() && C.gens_homogeneous() && N.gens_homogeneous() &&
                             w.u.is_homogeneous() && w.v.is_homogeneous() && !w.u.is_zero() && !w.v.is_zero();
    c.graded = homogeneous && w.v.degree() == w.u.degree() + 1;
    auto hI = height(I), hC = height(C), hN = height(N);
    c.heights = hC == hI && hI == hN + 1;
    c.saturated = dimension(I) > 0;
    if (!c.graded) c.note += homogeneous ? "degree shift is not 1; " : "not homogeneous; ";
    if (!c.heights)
        c.note += "heights C=" + std::to_string(hC) + " I=" + std::to_string(hI) + " N=" + std::to_string(hN) + "; ";
    if (!c.saturated) c.note += "sqrt(I) is the maximal ideal; ";
    return c;
}

}  // namespace detail

/// Every check is an exact computation in the ring of I.
inline WitnessChecks verify_witness(const Ideal& I, const Ideal& C, const Ideal& N, const BiliaisonWitness& w) {
    return detail::verify_witness_given(I, C, N, w, regular_mod(N.adopt(w.u), N), regular_mod(N.adopt(w.v), N));
}

namespace detail {

inline BiliaisonWitness combine(const CNSplit& s, const std::vector<FieldElement>& a) {
    BiliaisonWitness w;
    const auto& R = s.split_ring;
    w.y = s.y_name;
    w.scalars = a;
    w.u = Polynomial(R);
    w.v = Polynomial(R);
    auto idx = s.y_elements();
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto i = idx[k];
        w.q.push_back(s.q[i]);
        w.g.push_back(s.gb->elements[i]);
        if (a[k].is_zero()) continue;
        w.u += s.q[i].scale(a[k]);
        w.v += s.gb->elements[i].scale(a[k]);
    }
    w.C_gens = s.C.gens();
    w.N_gens = s.N.gens();
    if (w.u.is_homogeneous() && w.v.is_homogeneous() && !w.u.is_zero() && !w.v.is_zero())
        w.degree_shift = static_cast<long>(w.v.degree()) - static_cast<long>(w.u.degree());
    return w;
}

inline void require_witness_hypotheses(const CNSplit& s) {
    if (!s.squarefree) throw HypothesisFailed("squarefree-in-y");
    if (s.Cc.is_unit()) throw HypothesisFailed("nondegenerate");
}

}  // namespace detail

/// Witness for I/N ≅ C/N with u = Σ a_i q_i and v = Σ a_i (y q_i + r_i); unit vectors first, then seeded
/// small random integer vectors.
inline BiliaisonWitness build_witness(const CNSplit& s, const ScalarStrategy& strategy = {}) {
    detail::require_witness_hypotheses(s);
    const auto k = s.y_elements().size();
    const auto& field = s.split_ring->field;
    if (k == 0) throw HypothesisFailed("nondegenerate");
    std::size_t attempts = 0;
    auto try_vector = [&](const std::vector<FieldElement>& a, const std::string& how) -> std::optional<BiliaisonWitness> {
        ++attempts;
        ++detail::search_counter();
        auto w = detail::combine(s, a);
        if (w.u.is_zero() || w.v.is_zero()) return std::nullopt;
        if (!regular_mod(w.u, s.N) || !regular_mod(w.v, s.N)) return std::nullopt;
        w.strategy = how;
        w.seed = strategy.seed;
        w.attempts = attempts;
        w.checks = detail::verify_witness_given(s.I, s.C, s.N, w, true, true);
        if (!w.checks.identity || !w.checks.containment) return std::nullopt;
        return w;
    };
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<FieldElement> a(k, FieldElement::zero(field));
        a[i] = FieldElement::one(field);
        if (auto w = try_vector(a, "unit-vector")) return *w;
    }
    std::mt19937_64 rng(strategy.seed);
    std::uniform_int_distribution<int> pick(-strategy.bound, strategy.bound);
    for (std::size_t t = 0; t < strategy.random_attempts; ++t) {
        std::vector<FieldElement> a;
        bool nonzero = false;
        for (std::size_t i = 0; i < k; ++i) {
            a.push_back(FieldElement::from_int(field, pick(rng)));
            nonzero |= !a.back().is_zero();
        }
        if (!nonzero) continue;
        if (auto w = try_vector(a, "random")) return *w;
    }
    throw ScalarSearchExhausted(attempts);
}

/// Rebuild a recorded witness from its scalars and re-run every check, with no scalar search.
inline BiliaisonWitness replay_witness(const CNSplit& s, const std::vector<FieldElement>& scalars) {
    detail::require_witness_hypotheses(s);
    if (scalars.size() != s.y_elements().size()) throw HypothesisFailed("witness scalar count");
    auto w = detail::combine(s, scalars);
    w.checks = verify_witness(s.I, s.C, s.N, w);
    return w;
}

}  // namespace gvdkit
