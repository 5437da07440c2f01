#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "gvdkit/ideal.hpp"

namespace gvdkit {

using VarMask = std::uint64_t;

/// Minimal sets meeting every edge (Berge's incremental algorithm). An empty edge has no transversal.
inline std::vector<VarMask> minimal_transversals(const std::vector<VarMask>& edges) {
    std::vector<VarMask> cur{0};
    auto minimize = [](std::vector<VarMask>& v) {
        std::sort(v.begin(), v.end(), [](VarMask a, VarMask b) {
            auto pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
        v.erase(std::unique(v.begin(), v.end()), v.end());
        std::vector<VarMask> keep;
        for (auto m : v) {
            bool covered = false;
            for (auto k : keep)
                if ((k & m) == k) {
                    covered = true;
                    break;
                }
            if (!covered) keep.push_back(m);
        }
        v = std::move(keep);
    };
    for (auto e : edges) {
        if (e == 0) return {};
        std::vector<VarMask> next;
        for (auto t : cur) {
            if (t & e) {
                next.push_back(t);
                continue;
            }
            for (auto bits = e; bits; bits &= bits - 1) next.push_back(t | (bits & -bits));
        }
        minimize(next);
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

/// Irreducible decomposition of a monomial ideal and the primes it determines.
struct MonomialPrimaryDecomposition {
    std::vector<Ideal> components;     // generated by pure powers of variables
    std::vector<VarMask> associated_primes;  // supports of the components, distinct, ascending
};

namespace detail {

inline std::vector<Monomial> minimize_monomials(std::vector<Monomial> ms) {
    std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
        return a.degree() != b.degree() ? a.degree() < b.degree() : a.exponents() < b.exponents();
    });
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Monomial> keep;
    for (const auto& m : ms) {
        bool red = false;
        for (const auto& k : keep)
            if (k.divides(m)) {
                red = true;
                break;
            }
        if (!red) keep.push_back(m);
    }
    return keep;
}

inline std::vector<Monomial> require_monomials(const Ideal& I) {
    if (I.gens_are_monomials()) return minimize_monomials(monomials_of(I.gens()));
    const auto& g = I.canonical();
    for (const auto& p : g.elements)
        if (!p.is_monomial()) throw NotMonomial(p.to_string());
    return monomials_of(g.elements);
}

inline bool pure_power(const Monomial& m) { return std::popcount(m.support_mask()) <= 1; }

inline void split_irreducible(std::vector<Monomial> gens, std::vector<std::vector<Monomial>>& out) {
    gens = minimize_monomials(std::move(gens));
    for (const auto& m : gens) {
        if (pure_power(m) || m.is_one()) continue;
        // m = x^a * rest with x its first variable
        std::size_t v = static_cast<std::size_t>(std::countr_zero(m.support_mask()));
        auto power = Monomial::variable(m.size(), v, m[v]);
        auto rest = m / power;
        auto a = gens, b = gens;
        a.push_back(power);
        b.push_back(rest);
        split_irreducible(std::move(a), out);
        split_irreducible(std::move(b), out);
        return;
    }
    out.push_back(std::move(gens));
}

inline bool monomial_ideal_contains(const std::vector<Monomial>& big, const std::vector<Monomial>& small) {
    for (const auto& s : small) {
        bool in = false;
        for (const auto& b : big)
            if (b.divides(s)) {
                in = true;
                break;
            }
        if (!in) return false;
    }
    return true;
}

}  // namespace detail

inline MonomialPrimaryDecomposition monomial_ass_primes(const Ideal& I) {
    auto gens = detail::require_monomials(I);
    MonomialPrimaryDecomposition d;
    for (const auto& m : gens)
        if (m.is_one()) return d;
    std::vector<std::vector<Monomial>> comps;
    detail::split_irreducible(gens, comps);
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        std::vector<std::vector<Monomial::exponent_type>> ea, eb;
        for (auto& m : a) ea.push_back(m.exponents());
        for (auto& m : b) eb.push_back(m.exponents());
        return ea < eb;
    });
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    std::vector<std::vector<Monomial>> keep;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < comps.size() && !redundant; ++j)
            if (i != j && detail::monomial_ideal_contains(comps[i], comps[j])) redundant = true;
        if (!redundant) keep.push_back(comps[i]);
    }
    for (const auto& c : keep) {
        VarMask support = 0;
        for (const auto& m : c) support |= m.support_mask();
        d.associated_primes.push_back(support);
        d.components.push_back(Ideal(I.ring(), detail::minimal_monomials(I.ring(), c)));
    }
    std::sort(d.associated_primes.begin(), d.associated_primes.end());
    d.associated_primes.erase(std::unique(d.associated_primes.begin(), d.associated_primes.end()),
                              d.associated_primes.end());
    return d;
}

/// All associated primes have the same height. The unit ideal counts as unmixed.
inline bool monomial_unmixed(const Ideal& I) {
    auto d = monomial_ass_primes(I);
    for (auto p : d.associated_primes)
        if (std::popcount(p) != std::popcount(d.associated_primes.front())) return false;
    return true;
}

/// Minimal primes of a monomial ideal, as variable sets: minimal transversals of the generator supports.
inline std::vector<VarMask> monomial_minimal_primes(const Ideal& I) {
    std::vector<VarMask> supports;
    for (const auto& m : detail::require_monomials(I)) supports.push_back(m.support_mask());
    return minimal_transversals(supports);
}

}  // namespace gvdkit
