#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvdkit/errors.hpp"
#include "gvdkit/field.hpp"
#include "gvdkit/monomial.hpp"
#include "gvdkit/ring.hpp"

namespace gvdkit {

struct Term {
    FieldElement coeff;
    Monomial mono;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Polynomial over a Ring; terms strictly descending under the ring order, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
        canonicalize();
    }

    static Polynomial constant(const RingPtr& r, const FieldElement& c) {
        Polynomial p(r);
        if (!c.is_zero()) p.terms_.push_back({c, Monomial(r->nvars())});
        return p;
    }

    static Polynomial constant(const RingPtr& r, long long c) {
        return constant(r, FieldElement::from_int(r->field, c));
    }

    static Polynomial variable(const RingPtr& r, std::size_t var, Monomial::exponent_type power = 1) {
        Polynomial p(r);
        p.terms_.push_back({FieldElement::one(r->field), Monomial::variable(r->nvars(), var, power)});
        return p;
    }

    static Polynomial variable(const RingPtr& r, const std::string& name, Monomial::exponent_type power = 1) {
        return variable(r, r->ctx.require(name), power);
    }

    static Polynomial monomial(const RingPtr& r, const FieldElement& c, Monomial m) {
        Polynomial p(r);
        if (!c.is_zero()) p.terms_.push_back({c, std::move(m)});
        return p;
    }

    /// Build from terms already sorted descending under the ring order with no duplicates or zeros.
    static Polynomial from_sorted(RingPtr r, std::vector<Term> terms) {
        Polynomial p(std::move(r));
        p.terms_ = std::move(terms);
        return p;
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
    bool is_unit() const { return is_constant(); }
    bool is_monomial() const { return terms_.size() == 1; }

    const Term& leading_term() const {
        if (terms_.empty()) throw ZeroPolynomial("leading term");
        return terms_.front();
    }
    const Monomial& leading_monomial() const { return leading_term().mono; }
    const FieldElement& leading_coeff() const { return leading_term().coeff; }

    /// Index of the variable when this is a single variable with coefficient one.
    std::optional<std::size_t> as_variable() const {
        if (terms_.size() != 1 || !terms_[0].coeff.is_one()) return std::nullopt;
        const auto& m = terms_[0].mono;
        if (m.degree() != 1) return std::nullopt;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) return i;
        return std::nullopt;
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    Monomial::exponent_type degree_in(std::size_t var) const {
        Monomial::exponent_type d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono[var]);
        return d;
    }

    bool involves(std::size_t var) const { return degree_in(var) > 0; }

    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (const auto& t : terms_) m |= t.mono.support_mask();
        return m;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const auto d = terms_[0].mono.degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.degree() == d; });
    }

    Polynomial operator-() const {
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({-t.coeff, t.mono});
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check(a, b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].mono);
        if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].mono);
        // Accumulate one shifted copy of a per term of b.
        Polynomial acc(a.ring_);
        for (const auto& t : b.terms_) acc = acc + a.mul_term(t.coeff, t.mono);
        return acc;
    }

    Polynomial scale(const FieldElement& c) const {
        if (c.is_zero()) return Polynomial(ring_);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.mono});
        return r;
    }

    /// c * m * this; lex orders are multiplicative so sortedness is preserved.
    Polynomial mul_term(const FieldElement& c, const Monomial& m) const {
        if (c.is_zero()) return Polynomial(ring_);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.mono * m});
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(ring_, 1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    Polynomial monic() const {
        if (is_zero() || leading_coeff().is_one()) return *this;
        return scale(leading_coeff().inverse());
    }

    /// Same polynomial, resorted under another order on the same field and variables.
    Polynomial in_ring(const RingPtr& other) const {
        if (ring_ == other) return *this;
        if (!(ring_->field == other->field) || !(ring_->ctx == other->ctx))
            throw ContextMismatch("in_ring requires identical field and variables");
        Polynomial r(other);
        r.terms_ = terms_;
        if (!(ring_->order == other->order)) r.sort_terms();
        return r;
    }

    Polynomial operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!same_ring(a.ring_, b.ring_)) return false;
        return a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms_) {
            const bool neg = is_neg(t.coeff);
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            const FieldElement mag = neg ? -t.coeff : t.coeff;
            std::string mono = monomial_string(t.mono);
            if (mono.empty()) {
                out += mag.to_string();
            } else {
                if (!mag.is_one()) out += mag.to_string() + "*";
                out += mono;
            }
        }
        return out;
    }

    std::string monomial_string(const Monomial& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!s.empty()) s += "*";
            s += ring_->ctx.name(i);
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

private:
    RingPtr ring_;
    std::vector<Term> terms_;

    static bool is_neg(const FieldElement& c) { return c.is_negative(); }

    static void check(const Polynomial& a, const Polynomial& b) {
        if (!a.ring_ || !b.ring_) throw ContextMismatch("polynomial without a ring");
        if (!same_ring(a.ring_, b.ring_)) throw ContextMismatch("polynomials live in different rings");
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        check(a, b);
        Polynomial r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        const auto& ord = a.ring_->order;
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            auto c = compare(a.terms_[i].mono, b.terms_[j].mono, ord);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                const auto& t = b.terms_[j++];
                r.terms_.push_back({subtract ? -t.coeff : t.coeff, t.mono});
            } else {
                auto s = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
                if (!s.is_zero()) r.terms_.push_back({std::move(s), a.terms_[i].mono});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            const auto& t = b.terms_[j];
            r.terms_.push_back({subtract ? -t.coeff : t.coeff, t.mono});
        }
        return r;
    }

    void sort_terms() {
        const auto& ord = ring_->order;
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term& x, const Term& y) { return compare(x.mono, y.mono, ord) > 0; });
    }

    void canonicalize() {
        if (!ring_) throw ContextMismatch("polynomial without a ring");
        for (const auto& t : terms_) {
            if (t.mono.size() != ring_->nvars()) throw ContextMismatch("term length does not match the ring");
            if (!(t.coeff.spec() == ring_->field)) throw ContextMismatch("coefficient outside the ring's field");
        }
        sort_terms();
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coeff += t.coeff;
            } else {
                out.push_back(std::move(t));
            }
        }
        std::erase_if(out, [](const Term& t) { return t.coeff.is_zero(); });
        terms_ = std::move(out);
    }
};

enum class PolyOpKind { Add, Sub, Mul, Scale };

inline Polynomial poly_op(PolyOpKind kind, const Polynomial& f, const Polynomial& g) {
    switch (kind) {
        case PolyOpKind::Add: return f + g;
        case PolyOpKind::Sub: return f - g;
        case PolyOpKind::Mul: return f * g;
        case PolyOpKind::Scale: break;
    }
    throw BadParameter("scale takes a field element");
}

inline Polynomial poly_op(PolyOpKind kind, const Polynomial& f, const FieldElement& c) {
    if (kind != PolyOpKind::Scale) return poly_op(kind, f, Polynomial::constant(f.ring(), c));
    if (!(c.spec() == f.ring()->field)) throw ContextMismatch("scalar outside the ring's field");
    return f.scale(c);
}

/// Leading term under `ord` and the remaining terms.
inline std::pair<Term, Polynomial> leading_data(const Polynomial& f, const MonomialOrder& ord) {
    if (f.is_zero()) throw ZeroPolynomial("leading_data");
    auto sorted = f.in_ring(with_order(f.ring(), ord));
    Term lead = sorted.terms().front();
    std::vector<Term> rest(sorted.terms().begin() + 1, sorted.terms().end());
    return {lead, Polynomial(f.ring(), std::move(rest))};
}

/// Sum of the terms of f of highest degree in y.
inline Polynomial initial_y_form(const Polynomial& f, std::size_t y) {
    const auto d = f.degree_in(y);
    std::vector<Term> keep;
    for (const auto& t : f.terms())
        if (t.mono[y] == d) keep.push_back(t);
    return Polynomial::from_sorted(f.ring(), std::move(keep));
}

/// Coefficient of y^d, as a polynomial in the same ring free of y.
inline Polynomial coeff_in(const Polynomial& f, std::size_t y, Monomial::exponent_type d) {
    std::vector<Term> keep;
    for (const auto& t : f.terms()) {
        if (t.mono[y] != d) continue;
        Term u = t;
        u.mono[y] = 0;
        keep.push_back(std::move(u));
    }
    return Polynomial(f.ring(), std::move(keep));
}

/// Substitute y = value (a constant) into f.
inline Polynomial substitute_constant(const Polynomial& f, std::size_t y, const FieldElement& value) {
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        Term u = t;
        FieldElement c = u.coeff;
        for (Monomial::exponent_type k = 0; k < t.mono[y]; ++k) c *= value;
        u.coeff = c;
        u.mono[y] = 0;
        out.push_back(std::move(u));
    }
    return Polynomial(f.ring(), std::move(out));
}

/// Move f into ring `to`, matching variables by name.
inline Polynomial map_context(const Polynomial& f, const RingPtr& to) {
    const auto& from = f.ring();
    if (from == to) return f;
    if (!(from->field == to->field)) throw ContextMismatch("map_context across fields");
    std::vector<std::optional<std::size_t>> target(from->nvars());
    for (std::size_t i = 0; i < from->nvars(); ++i) target[i] = to->ctx.index_of(from->ctx.name(i));
    std::vector<Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial m(to->nvars());
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (!t.mono[i]) continue;
            if (!target[i]) throw VariableEscape(from->ctx.name(i));
            m[*target[i]] = t.mono[i];
        }
        out.push_back({t.coeff, std::move(m)});
    }
    return Polynomial(to, std::move(out));
}

inline std::vector<Polynomial> map_context(const std::vector<Polynomial>& gens, const RingPtr& to) {
    std::vector<Polynomial> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(map_context(g, to));
    return out;
}

inline bool is_homogeneous(const Polynomial& f) { return f.is_homogeneous(); }

inline bool all_homogeneous(const std::vector<Polynomial>& gens) {
    return std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
}

}  // namespace gvdkit
