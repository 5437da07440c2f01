#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "gvdkit/polynomial.hpp"

namespace gvdkit {

/// Reduced Gröbner basis: monic, interreduced, sorted by leading monomial (greatest first).
struct ReducedGB {
    RingPtr ring;
    std::vector<Polynomial> elements;

    const MonomialOrder& order() const { return ring->order; }
    bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
    bool is_zero() const { return elements.empty(); }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> out;
        for (const auto& g : elements) out.push_back(g.leading_monomial());
        return out;
    }

    friend bool operator==(const ReducedGB& a, const ReducedGB& b) { return a.elements == b.elements; }
};

namespace detail {

/// Number of Buchberger runs, so tests and replay can assert that no completion happened.
inline std::atomic<std::size_t>& buchberger_counter() {
    static std::atomic<std::size_t> n{0};
    return n;
}

inline std::vector<Polynomial> to_ring(const std::vector<Polynomial>& gens, const RingPtr& r) {
    std::vector<Polynomial> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(g.in_ring(r));
    return out;
}

}  // namespace detail

namespace detail {

/// terms[from+1..] - c*m*(g without its leading term); the leading terms cancel by construction.
inline std::vector<Term> cancel_lead(const std::vector<Term>& terms, std::size_t from, const Polynomial& g,
                                     const FieldElement& c, const Monomial& m, const MonomialOrder& ord) {
    std::vector<Term> out;
    const auto& gt = g.terms();
    out.reserve(terms.size() - from + gt.size());
    std::size_t i = from + 1, j = 1;
    while (i < terms.size() && j < gt.size()) {
        Monomial mj = gt[j].mono * m;
        auto cmp = compare(terms[i].mono, mj, ord);
        if (cmp > 0) {
            out.push_back(terms[i++]);
        } else if (cmp < 0) {
            out.push_back({-(gt[j].coeff * c), std::move(mj)});
            ++j;
        } else {
            auto v = terms[i].coeff - gt[j].coeff * c;
            if (!v.is_zero()) out.push_back({std::move(v), std::move(mj)});
            ++i;
            ++j;
        }
    }
    for (; i < terms.size(); ++i) out.push_back(terms[i]);
    for (; j < gt.size(); ++j) out.push_back({-(gt[j].coeff * c), gt[j].mono * m});
    return out;
}

}  // namespace detail

/// Remainder of f on division by G under the ring order of `r`. Result lives in `r`.
inline Polynomial normal_form_in(const Polynomial& f, const std::vector<Polynomial>& G, const RingPtr& r) {
    std::vector<Term> p = f.in_ring(r).terms();
    std::size_t at = 0;
    std::vector<Term> rem;
    std::vector<const Polynomial*> divisors;
    for (const auto& g : G)
        if (!g.is_zero()) divisors.push_back(&g);
    const auto& ord = r->order;
    while (at < p.size()) {
        const Term& lt = p[at];
        const Polynomial* hit = nullptr;
        for (auto* g : divisors) {
            if (g->leading_monomial().divides(lt.mono)) {
                hit = g;
                break;
            }
        }
        if (!hit) {
            rem.push_back(lt);
            ++at;
            continue;
        }
        const FieldElement c = lt.coeff / hit->leading_coeff();
        const Monomial m = lt.mono / hit->leading_monomial();
        p = detail::cancel_lead(p, at, *hit, c, m, ord);
        at = 0;
    }
    return Polynomial::from_sorted(r, std::move(rem));
}

/// Division remainder; divisors are tried in sequence order. The result is returned in f's ring.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G, const MonomialOrder& ord) {
    if (f.is_zero()) return f;
    auto r = with_order(f.ring(), ord);
    for (const auto& g : G)
        if (!same_ring(natural_ring(g.ring()), natural_ring(f.ring())))
            throw ContextMismatch("normal_form divisors live in another ring");
    auto Gr = detail::to_ring(G, r);
    return normal_form_in(f, Gr, r).in_ring(f.ring());
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const auto& mf = f.leading_monomial();
    const auto& mg = g.leading_monomial();
    const auto l = lcm(mf, mg);
    return f.mul_term(g.leading_coeff(), l / mf) - g.mul_term(f.leading_coeff(), l / mg);
}

/// Minimal, interreduced, monic, sorted basis of the ideal generated by a Gröbner basis G.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> G, const RingPtr& r) {
    std::erase_if(G, [](const Polynomial& g) { return g.is_zero(); });
    for (auto& g : G) g = g.in_ring(r).monic();
    const auto& ord = r->order;
    std::stable_sort(G.begin(), G.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare(a.leading_monomial(), b.leading_monomial(), ord) < 0;
    });
    std::vector<Polynomial> minimal;
    for (auto& g : G) {
        bool redundant = false;
        for (const auto& k : minimal)
            if (k.leading_monomial().divides(g.leading_monomial())) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(std::move(g));
    }
    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        const auto& g = minimal[i];
        auto tail = Polynomial::from_sorted(r, std::vector<Term>(g.terms().begin() + 1, g.terms().end()));
        auto lead = Polynomial::from_sorted(r, {g.leading_term()});
        out.push_back((lead + normal_form_in(tail, others, r)).monic());
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare(a.leading_monomial(), b.leading_monomial(), ord) > 0;
    });
    return out;
}

/// Buchberger completion in ring `r`. Normal selection strategy (least lcm under the order),
/// pairs pruned with the Gebauer–Möller installation, which includes the product criterion.
inline ReducedGB buchberger_in(const std::vector<Polynomial>& gens, const RingPtr& r) {
    detail::buchberger_counter().fetch_add(1, std::memory_order_relaxed);
    std::vector<Polynomial> input;
    for (const auto& g : gens)
        if (!g.is_zero()) input.push_back(g.in_ring(r).monic());
    for (const auto& g : input)
        if (g.is_constant()) return {r, {Polynomial::constant(r, 1)}};
    if (input.empty()) return {r, {}};
    const auto& ord = r->order;
    std::sort(input.begin(), input.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare(a.leading_monomial(), b.leading_monomial(), ord) < 0;
    });
    input.erase(std::unique(input.begin(), input.end()), input.end());
    // interreduce the input until stable
    for (;;) {
        std::vector<Polynomial> next;
        for (std::size_t i = 0; i < input.size(); ++i) {
            auto rem = normal_form_in(input[i], std::vector<Polynomial>(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(i)), r);
            if (rem.is_zero()) continue;
            rem = rem.monic();
            if (rem.is_constant()) return {r, {Polynomial::constant(r, 1)}};
            next.push_back(std::move(rem));
        }
        if (next == input) break;
        input = std::move(next);
    }

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Polynomial> all;
    std::vector<std::size_t> basis;  // indices into `all` of the current basis
    std::vector<Pair> pairs;

    auto make_pair = [&](std::size_t i, std::size_t j) {
        return Pair{i, j, lcm(all[i].leading_monomial(), all[j].leading_monomial())};
    };

    auto install = [&](Polynomial h) {
        const std::size_t hi = all.size();
        all.push_back(std::move(h));
        const auto& lh = all[hi].leading_monomial();
        std::vector<Pair> C;
        for (auto g : basis) C.push_back(make_pair(hi, g));
        std::vector<Pair> D;
        for (std::size_t k = 0; k < C.size(); ++k) {
            const auto& p = C[k];
            bool keep = lh.coprime(all[p.j].leading_monomial());
            if (!keep) {
                keep = true;
                for (std::size_t m = k + 1; m < C.size() && keep; ++m)
                    if (C[m].lcm.divides(p.lcm)) keep = false;
                for (const auto& d : D)
                    if (keep && d.lcm.divides(p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> next;
        for (auto& p : pairs) {
            if (!lh.divides(p.lcm) || lcm(all[p.i].leading_monomial(), lh) == p.lcm ||
                lcm(all[p.j].leading_monomial(), lh) == p.lcm)
                next.push_back(std::move(p));
        }
        for (auto& p : D)
            if (!lh.coprime(all[p.j].leading_monomial())) next.push_back(std::move(p));
        pairs = std::move(next);
        std::vector<std::size_t> nb;
        for (auto g : basis)
            if (!lh.divides(all[g].leading_monomial())) nb.push_back(g);
        nb.push_back(hi);
        basis = std::move(nb);
    };

    std::sort(input.begin(), input.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare(a.leading_monomial(), b.leading_monomial(), ord) < 0;
    });
    for (auto& g : input) install(std::move(g));

    auto current = [&] {
        std::vector<Polynomial> out;
        out.reserve(basis.size());
        for (auto g : basis) out.push_back(all[g]);
        std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
            return compare(a.leading_monomial(), b.leading_monomial(), ord) < 0;
        });
        return out;
    };
    std::vector<Polynomial> reducers = current();

    while (!pairs.empty()) {
        std::size_t best = 0;
        for (std::size_t t = 1; t < pairs.size(); ++t) {
            const auto& a = pairs[t];
            const auto& b = pairs[best];
            if (compare(a.lcm, b.lcm, ord) < 0) best = t;
        }
        Pair p = std::move(pairs[best]);
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
        auto h = normal_form_in(s_polynomial(all[p.i], all[p.j]), reducers, r);
        if (h.is_zero()) continue;
        h = h.monic();
        if (h.is_constant()) return {r, {Polynomial::constant(r, 1)}};
        install(std::move(h));
        reducers = current();
    }
    return {r, reduce_basis(current(), r)};
}

inline ReducedGB buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord) {
    if (gens.empty()) throw BadParameter("buchberger needs a ring; pass at least one generator");
    return buchberger_in(gens, with_order(gens.front().ring(), ord));
}

/// True iff every S-pair of G reduces to zero modulo G (pairs with coprime leading monomials are skipped).
inline bool is_groebner_basis(const std::vector<Polynomial>& G, const RingPtr& r) {
    std::vector<Polynomial> H;
    for (const auto& g : G)
        if (!g.is_zero()) H.push_back(g.in_ring(r));
    for (std::size_t i = 0; i < H.size(); ++i)
        for (std::size_t j = i + 1; j < H.size(); ++j) {
            if (H[i].leading_monomial().coprime(H[j].leading_monomial())) continue;
            if (!normal_form_in(s_polynomial(H[i], H[j]), H, r).is_zero()) return false;
        }
    return true;
}

/// Reduced-GB invariants: monic, no term of any element divisible by another leading monomial, S-pairs vanish.
inline bool is_reduced_groebner_basis(const std::vector<Polynomial>& G, const RingPtr& r) {
    std::vector<Polynomial> H;
    for (const auto& g : G) {
        if (g.is_zero()) return false;
        H.push_back(g.in_ring(r));
    }
    for (std::size_t i = 0; i < H.size(); ++i) {
        if (!H[i].leading_coeff().is_one()) return false;
        for (std::size_t j = 0; j < H.size(); ++j) {
            if (i == j) continue;
            for (const auto& t : H[i].terms())
                if (H[j].leading_monomial().divides(t.mono)) return false;
        }
    }
    return is_groebner_basis(H, r);
}

}  // namespace gvdkit
