#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gvdkit/groebner.hpp"

namespace gvdkit {

/// Generators plus a memo of reduced Gröbner bases keyed by order. Copies share the memo.
class Ideal {
public:
    Ideal() = default;

    Ideal(RingPtr ring, std::vector<Polynomial> gens) : s_(std::make_shared<State>()) {
        s_->ring = std::move(ring);
        s_->natural = natural_ring(s_->ring);
        for (auto& g : gens) {
            if (g.is_zero()) continue;
            s_->gens.push_back(adopt(g));
        }
    }

    static Ideal zero(const RingPtr& r) { return Ideal(r, {}); }
    static Ideal unit(const RingPtr& r) { return Ideal(r, {Polynomial::constant(r, 1)}); }

    const RingPtr& ring() const { return s_->ring; }
    const VarContext& ctx() const { return s_->ring->ctx; }
    std::size_t nvars() const { return s_->ring->nvars(); }
    const std::vector<Polynomial>& gens() const { return s_->gens; }

    bool gens_are_monomials() const {
        return std::all_of(gens().begin(), gens().end(), [](const Polynomial& g) { return g.is_monomial(); });
    }

    bool gens_homogeneous() const { return all_homogeneous(gens()); }

    /// Reduced GB under `ord`, computed once per order.
    std::shared_ptr<const ReducedGB> gb(const MonomialOrder& ord) const {
        {
            std::lock_guard lock(s_->mu);
            auto it = s_->cache.find(ord.ranking());
            if (it != s_->cache.end()) return it->second;
        }
        auto r = ord == s_->ring->order ? s_->ring : (ord.is_natural() ? s_->natural : with_order(s_->ring, ord));
        std::shared_ptr<const ReducedGB> result;
        if (gens_are_monomials()) {
            result = std::make_shared<const ReducedGB>(ReducedGB{r, reduce_basis(gens(), r)});
        } else {
            result = std::make_shared<const ReducedGB>(buchberger_in(gens(), r));
        }
        std::lock_guard lock(s_->mu);
        auto [it, inserted] = s_->cache.emplace(ord.ranking(), result);
        return it->second;
    }

    std::shared_ptr<const ReducedGB> gb() const { return gb(s_->ring->order); }

    /// Canonical form: reduced GB under the natural order of the context.
    const ReducedGB& canonical() const {
        // the memo keeps the basis alive for the lifetime of the ideal
        return *gb(MonomialOrder::natural(nvars()));
    }

    /// Register a basis already known to be the reduced GB under its order (used by replay after checking it).
    void seed_gb(std::shared_ptr<const ReducedGB> g) const {
        std::lock_guard lock(s_->mu);
        s_->cache.emplace(g->order().ranking(), std::move(g));
    }

    bool has_cached_gb(const MonomialOrder& ord) const {
        std::lock_guard lock(s_->mu);
        return s_->cache.count(ord.ranking()) != 0;
    }

    bool is_unit() const {
        for (const auto& g : gens())
            if (g.is_constant()) return true;
        return gb()->is_unit();
    }

    bool is_zero() const { return gens().empty(); }

    /// Variables generating the ideal, if it is generated by indeterminates (the zero ideal included).
    std::optional<std::vector<std::size_t>> indeterminates() const {
        std::vector<std::size_t> vars;
        for (const auto& g : gb()->elements) {
            auto v = g.as_variable();
            if (!v) return std::nullopt;
            vars.push_back(*v);
        }
        std::sort(vars.begin(), vars.end());
        return vars;
    }

    /// Move a polynomial into this ideal's ring (same variables, possibly another order).
    Polynomial adopt(const Polynomial& f) const {
        if (f.ring() == s_->ring) return f;
        if (f.ring()->ctx == s_->ring->ctx && f.ring()->field == s_->ring->field) return f.in_ring(s_->ring);
        return map_context(f, s_->ring);
    }

    std::vector<std::string> gens_strings() const {
        std::vector<std::string> out;
        for (const auto& g : gens()) out.push_back(g.to_string());
        return out;
    }

    std::string to_string() const {
        std::string s = "<";
        for (std::size_t i = 0; i < gens().size(); ++i) s += (i ? ", " : "") + gens()[i].to_string();
        return s + ">";
    }

private:
    struct State {
        RingPtr ring;
        RingPtr natural;
        std::vector<Polynomial> gens;
        mutable std::mutex mu;
        mutable std::map<std::vector<std::size_t>, std::shared_ptr<const ReducedGB>> cache;
    };
    std::shared_ptr<State> s_;
};

namespace detail {

inline void require_same_context(const Ideal& a, const Ideal& b) {
    if (!(a.ctx() == b.ctx()) || !(a.ring()->field == b.ring()->field))
        throw ContextMismatch("ideals live in different rings");
}

/// Minimum number of variables meeting every support (supports given as bitmasks).
inline std::size_t min_hitting_set(std::vector<std::uint64_t> edges) {
    std::sort(edges.begin(), edges.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::uint64_t> minimal;
    for (auto e : edges) {
        bool sup = false;
        for (auto m : minimal)
            if ((m & e) == m) {
                sup = true;
                break;
            }
        if (!sup) minimal.push_back(e);
    }
    std::size_t best = 65;
    auto rec = [&](auto& self, std::uint64_t chosen, std::size_t count) -> void {
        if (count >= best) return;
        const std::uint64_t* open = nullptr;
        for (const auto& e : minimal) {
            if (e & chosen) continue;
            if (!open || std::popcount(e) < std::popcount(*open)) open = &e;
        }
        if (!open) {
            best = count;
            return;
        }
        for (auto bits = *open; bits; bits &= bits - 1) self(self, chosen | (bits & -bits), count + 1);
    };
    rec(rec, 0, 0);
    return best;
}

inline bool all_monomial(const std::vector<Polynomial>& gens) {
    return std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_monomial(); });
}

/// Monomial generators with coefficient one and redundant ones removed.
inline std::vector<Polynomial> minimal_monomials(const RingPtr& r, const std::vector<Monomial>& ms) {
    std::vector<Monomial> keep;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < ms.size() && !redundant; ++j) {
            if (i == j) continue;
            if (ms[j].divides(ms[i]) && (!(ms[j] == ms[i]) || j < i)) redundant = true;
        }
        if (!redundant) keep.push_back(ms[i]);
    }
    std::vector<Polynomial> out;
    for (auto& m : keep) out.push_back(Polynomial::monomial(r, FieldElement::one(r->field), m));
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare(a.leading_monomial(), b.leading_monomial(), r->order) > 0;
    });
    return out;
}

inline std::vector<Monomial> monomials_of(const std::vector<Polynomial>& gens) {
    std::vector<Monomial> out;
    for (const auto& g : gens) out.push_back(g.leading_monomial());
    return out;
}

}  // namespace detail

inline bool ideal_member(const Polynomial& f, const Ideal& I, const MonomialOrder& ord) {
    if (f.is_zero()) return true;
    auto g = I.gb(ord);
    return normal_form_in(I.adopt(f), g->elements, g->ring).is_zero();
}

inline bool ideal_member(const Polynomial& f, const Ideal& I) { return ideal_member(f, I, I.ring()->order); }

inline bool ideal_contains(const Ideal& I, const Ideal& J) {
    detail::require_same_context(I, J);
    for (const auto& g : J.gens())
        if (!ideal_member(g, I)) return false;
    return true;
}

inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    detail::require_same_context(I, J);
    auto gens = I.gens();
    for (const auto& g : J.gens()) gens.push_back(I.adopt(g));
    return Ideal(I.ring(), gens);
}

inline Ideal ideal_sum(const Ideal& I, const std::vector<Polynomial>& extra) {
    auto gens = I.gens();
    for (const auto& g : extra) gens.push_back(I.adopt(g));
    return Ideal(I.ring(), gens);
}

/// I ∩ κ[remaining variables], returned over the remaining variables with the induced order.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop) {
    const auto& R = I.ring();
    std::vector<std::size_t> ranking;
    std::vector<bool> dropped(R->nvars(), false);
    for (const auto& n : drop) dropped[R->ctx.require(n)] = true;
    for (auto v : R->order.ranking())
        if (dropped[v]) ranking.push_back(v);
    for (auto v : R->order.ranking())
        if (!dropped[v]) ranking.push_back(v);
    auto g = I.gb(MonomialOrder::lex(ranking));
    VarContext rest = R->ctx;
    for (const auto& n : drop) rest = rest.without(n);
    auto target = induced_ring(R, rest);
    std::vector<Polynomial> keep;
    for (const auto& p : g->elements) {
        bool free = true;
        for (std::size_t v = 0; v < R->nvars(); ++v)
            if (dropped[v] && p.involves(v)) {
                free = false;
                break;
            }
        if (free) keep.push_back(map_context(p, target));
    }
    return Ideal(target, keep);
}

namespace detail {

/// Ideal in R with one extra variable t ranked greatest, and the index of t.
struct Extended {
    RingPtr ring;
    std::size_t t;
};

inline Extended extend_by_t(const RingPtr& R) {
    auto E = elimination_ring(R, 1);
    return {E, R->nvars()};
}

/// Generators of an ideal of E contracted back to R (E = R plus t greatest).
inline std::vector<Polynomial> contract_t(const ReducedGB& g, std::size_t t, const RingPtr& R) {
    std::vector<Polynomial> keep;
    for (const auto& p : g.elements)
        if (!p.involves(t)) keep.push_back(map_context(p, R));
    return keep;
}

}  // namespace detail

inline Ideal intersect_by_elimination(const Ideal& I, const Ideal& J);

inline Ideal intersect(const Ideal& I, const Ideal& J) {
    detail::require_same_context(I, J);
    const auto& R = I.ring();
    if (I.is_zero() || J.is_zero()) return Ideal::zero(R);
    if (detail::all_monomial(I.gens()) && detail::all_monomial(J.gens())) {
        std::vector<Monomial> ms;
        for (const auto& a : I.gens())
            for (const auto& b : J.gens()) ms.push_back(lcm(a.leading_monomial(), b.leading_monomial()));
        return Ideal(R, detail::minimal_monomials(R, ms));
    }
    return intersect_by_elimination(I, J);
}

/// I ∩ J = (t·I + (1−t)·J) ∩ R for a fresh variable t.
inline Ideal intersect_by_elimination(const Ideal& I, const Ideal& J) {
    detail::require_same_context(I, J);
    const auto& R = I.ring();
    auto [E, t] = detail::extend_by_t(R);
    auto tp = Polynomial::variable(E, t);
    auto one_minus_t = Polynomial::constant(E, 1) - tp;
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(tp * map_context(g, E));
    for (const auto& g : J.gens()) gens.push_back(one_minus_t * map_context(I.adopt(g), E));
    auto gb = buchberger_in(gens, E);
    return Ideal(R, detail::contract_t(gb, t, R));
}

/// Exact quotient g / f; throws if f does not divide g.
inline Polynomial divide_exact(const Polynomial& g, const Polynomial& f) {
    if (f.is_zero()) throw ZeroDivisorArg();
    const auto& r = g.ring();
    Polynomial rem = g;
    Polynomial fr = f.in_ring(r);
    std::vector<Term> q;
    while (!rem.is_zero()) {
        const auto& lt = rem.leading_term();
        if (!fr.leading_monomial().divides(lt.mono)) throw Error("divide_exact: polynomial is not a multiple");
        FieldElement c = lt.coeff / fr.leading_coeff();
        Monomial m = lt.mono / fr.leading_monomial();
        q.push_back({c, m});
        rem = rem - fr.mul_term(c, m);
    }
    return Polynomial(r, std::move(q));
}

inline Ideal colon(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw ZeroDivisorArg();
    const auto& R = I.ring();
    auto fr = I.adopt(f);
    if (fr.is_constant()) return I;
    if (detail::all_monomial(I.gens()) && fr.is_monomial()) {
        std::vector<Monomial> ms;
        for (const auto& g : I.gens()) {
            const auto& m = g.leading_monomial();
            ms.push_back(m / gcd(m, fr.leading_monomial()));
        }
        return Ideal(R, detail::minimal_monomials(R, ms));
    }
    auto both = intersect(I, Ideal(R, {fr}));
    std::vector<Polynomial> out;
    for (const auto& g : both.gens()) out.push_back(divide_exact(g, fr));
    return Ideal(R, out);
}

inline Ideal saturate(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw ZeroDivisorArg();
    const auto& R = I.ring();
    auto fr = I.adopt(f);
    if (fr.is_constant()) return I;
    if (detail::all_monomial(I.gens()) && fr.is_monomial()) {
        std::vector<Monomial> ms;
        for (const auto& g : I.gens()) {
            Monomial m = g.leading_monomial();
            for (std::size_t v = 0; v < m.size(); ++v)
                if (fr.leading_monomial()[v]) m[v] = 0;
            ms.push_back(std::move(m));
        }
        return Ideal(R, detail::minimal_monomials(R, ms));
    }
    auto [E, t] = detail::extend_by_t(R);
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(map_context(g, E));
    gens.push_back(Polynomial::variable(E, t) * map_context(fr, E) - Polynomial::constant(E, 1));
    auto gb = buchberger_in(gens, E);
    return Ideal(R, detail::contract_t(gb, t, R));
}

inline std::pair<Ideal, Ideal> colon_and_saturate(const Ideal& I, const Polynomial& f) {
    return {colon(I, f), saturate(I, f)};
}

inline bool radical_member(const Polynomial& f, const Ideal& I) {
    if (ideal_member(f, I)) return true;
    const auto& R = I.ring();
    auto fr = I.adopt(f);
    if (detail::all_monomial(I.gens())) {
        // √I is generated by the supports of the generators; f lies in it iff each of its terms does.
        for (const auto& t : fr.terms()) {
            auto s = t.mono.support_mask();
            bool in = false;
            for (const auto& g : I.gens()) {
                auto gs = g.leading_monomial().support_mask();
                if ((gs & s) == gs) {
                    in = true;
                    break;
                }
            }
            if (!in) return false;
        }
        return true;
    }
    auto [E, t] = detail::extend_by_t(R);
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(map_context(g, E));
    gens.push_back(Polynomial::constant(E, 1) - Polynomial::variable(E, t) * map_context(fr, E));
    return buchberger_in(gens, E).is_unit();
}

inline bool radical_contains(const Ideal& I, const Ideal& J) {
    for (const auto& g : J.gens())
        if (!radical_member(g, I)) return false;
    return true;
}

/// Krull dimension of R/I; -1 for the unit ideal.
inline long dimension(const Ideal& I) {
    const auto n = I.nvars();
    if (n > 64) throw BadParameter("dimension supports at most 64 variables");
    std::vector<std::uint64_t> supports;
    if (detail::all_monomial(I.gens())) {
        for (const auto& g : I.gens()) supports.push_back(g.leading_monomial().support_mask());
    } else {
        auto g = I.gb();
        if (g->is_unit()) return -1;
        for (const auto& p : g->elements) supports.push_back(p.leading_monomial().support_mask());
    }
    for (auto s : supports)
        if (s == 0) return -1;
    return static_cast<long>(n) - static_cast<long>(detail::min_hitting_set(supports));
}

/// Height n - dim; n + 1 for the unit ideal.
inline long height(const Ideal& I) { return static_cast<long>(I.nvars()) - dimension(I); }

inline bool ideal_equal(const Ideal& I, const Ideal& J) {
    detail::require_same_context(I, J);
    return I.canonical().elements == J.canonical().elements;
}

/// Ideal of the leading monomials under `ord`.
inline Ideal initial_ideal(const Ideal& I, const MonomialOrder& ord) {
    auto g = I.gb(ord);
    std::vector<Polynomial> lms;
    for (const auto& p : g->elements)
        lms.push_back(Polynomial::monomial(I.ring(), FieldElement::one(I.ring()->field), p.leading_monomial()));
    return Ideal(I.ring(), lms);
}

}  // namespace gvdkit
