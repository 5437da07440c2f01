#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "gvdkit/errors.hpp"
#include "gvdkit/ring.hpp"

namespace gvdkit {

/// Exponent vector indexed by context position.
class Monomial {
public:
    using exponent_type = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<exponent_type> e) : e_(std::move(e)) {}

    static Monomial variable(std::size_t nvars, std::size_t var, exponent_type power = 1) {
        Monomial m(nvars);
        m.e_.at(var) = power;
        return m;
    }

    std::size_t size() const noexcept { return e_.size(); }
    exponent_type operator[](std::size_t i) const { return e_[i]; }
    exponent_type& operator[](std::size_t i) { return e_[i]; }
    const std::vector<exponent_type>& exponents() const noexcept { return e_; }

    std::uint64_t degree() const { return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0}); }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
    }

    bool is_squarefree() const {
        return std::all_of(e_.begin(), e_.end(), [](auto x) { return x <= 1; });
    }

    /// Bit i set when variable i occurs. Contexts beyond 64 variables are not supported here.
    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i]) m |= std::uint64_t{1} << i;
        return m;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        check(a, b);
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }

    /// Exact quotient; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        check(a, b);
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b.e_[i] > a.e_[i]) throw Error("monomial division is not exact");
            r.e_[i] = a.e_[i] - b.e_[i];
        }
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        check(a, b);
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        check(a, b);
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : e_) h = (h ^ x) * 1099511628211ull;
        return h;
    }

private:
    std::vector<exponent_type> e_;

    static void check(const Monomial& a, const Monomial& b) {
        if (a.size() != b.size()) throw ContextMismatch("monomials of different lengths");
    }
};

/// Lex comparison under `order`.
inline std::strong_ordering compare(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
    for (auto v : order.ranking()) {
        if (a[v] != b[v]) return a[v] <=> b[v];
    }
    return std::strong_ordering::equal;
}

/// cmp_monomials with context checks.
inline std::strong_ordering cmp_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
    if (a.size() != order.size() || b.size() != order.size())
        throw ContextMismatch("monomial length does not match the order");
    return compare(a, b, order);
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace gvdkit
