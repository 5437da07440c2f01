#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "gvdkit/errors.hpp"

namespace gvdkit {

/// Ground field: the rationals or GF(p) for a word-sized prime p.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return {}; }

    static FieldSpec prime(std::uint64_t p) {
        if (!is_prime(p)) throw BadParameter("field characteristic " + std::to_string(p) + " is not prime");
        return FieldSpec{Kind::PrimeField, p};
    }

    bool is_rationals() const noexcept { return kind == Kind::Rationals; }

    std::string to_string() const { return is_rationals() ? "QQ" : "GF(" + std::to_string(p) + ")"; }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

    static bool is_prime(std::uint64_t n) noexcept {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d <= n / d; ++d)
            if (n % d == 0) return false;
        return true;
    }
};

/// An element of a FieldSpec. Rationals are kept in lowest terms, residues in [0, p).
class FieldElement {
public:
    struct Residue {
        std::uint64_t value;
        std::uint64_t p;
        friend bool operator==(const Residue&, const Residue&) = default;
    };

    FieldElement() : v_(mpq_class(0)) {}
    explicit FieldElement(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
    FieldElement(std::uint64_t value, std::uint64_t p) : v_(Residue{value % p, p}) {}

    static FieldElement from_int(const FieldSpec& spec, long long n) {
        if (spec.is_rationals()) return FieldElement(mpq_class(static_cast<long>(n)));
        const auto p = static_cast<long long>(spec.p);
        long long r = n % p;
        if (r < 0) r += p;
        return FieldElement(static_cast<std::uint64_t>(r), spec.p);
    }

    static FieldElement from_mpz(const FieldSpec& spec, const mpz_class& n) {
        if (spec.is_rationals()) return FieldElement(mpq_class(n));
        mpz_class r = n % mpz_class(static_cast<unsigned long>(spec.p));
        if (r < 0) r += static_cast<unsigned long>(spec.p);
        return FieldElement(r.get_ui(), spec.p);
    }

    static FieldElement zero(const FieldSpec& spec) { return from_int(spec, 0); }
    static FieldElement one(const FieldSpec& spec) { return from_int(spec, 1); }

    bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    const Residue& residue() const { return std::get<Residue>(v_); }

    FieldSpec spec() const {
        if (is_rational()) return FieldSpec::rationals();
        return FieldSpec{FieldSpec::Kind::PrimeField, residue().p};
    }

    bool is_zero() const {
        if (is_rational()) return sgn(rational()) == 0;
        return residue().value == 0;
    }

    bool is_one() const {
        if (is_rational()) return rational() == 1;
        return residue().value == 1;
    }

    FieldElement operator-() const {
        if (is_rational()) return FieldElement(mpq_class(-rational()));
        const auto& r = residue();
        return FieldElement(r.value == 0 ? 0 : r.p - r.value, r.p);
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        if (a.is_rational() && b.is_rational()) return FieldElement(mpq_class(a.rational() + b.rational()));
        const auto [x, y, p] = residues(a, b);
        std::uint64_t s = x + y;
        if (s >= p || s < x) s -= p;
        return FieldElement(s, p);
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        if (a.is_rational() && b.is_rational()) return FieldElement(mpq_class(a.rational() * b.rational()));
        const auto [x, y, p] = residues(a, b);
        const auto prod = static_cast<unsigned __int128>(x) * y % p;
        return FieldElement(static_cast<std::uint64_t>(prod), p);
    }

    FieldElement inverse() const {
        if (is_zero()) throw ZeroInversion();
        if (is_rational()) return FieldElement(mpq_class(1 / rational()));
        // Fermat: a^(p-2)
        const auto& r = residue();
        return pow_mod(r.value, r.p - 2, r.p);
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        if (a.is_rational() != b.is_rational()) return false;
        if (a.is_rational()) return a.rational() == b.rational();
        return a.residue() == b.residue();
    }

    /// Sign used when printing; residues are always printed as non-negative.
    bool is_negative() const { return is_rational() && sgn(rational()) < 0; }

    std::string to_string() const {
        if (is_rational()) return rational().get_str();
        return std::to_string(residue().value);
    }

private:
    std::variant<mpq_class, Residue> v_;

    struct Triple {
        std::uint64_t x, y, p;
    };

    static Triple residues(const FieldElement& a, const FieldElement& b) {
        if (a.is_rational() || b.is_rational())
            throw ContextMismatch("mixing rational and prime-field elements");
        if (a.residue().p != b.residue().p) throw ContextMismatch("mixing different prime fields");
        return {a.residue().value, b.residue().value, a.residue().p};
    }

    static FieldElement pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
        unsigned __int128 result = 1, b = base % p;
        while (exp > 0) {
            if (exp & 1) result = result * b % p;
            b = b * b % p;
            exp >>= 1;
        }
        return FieldElement(static_cast<std::uint64_t>(result), p);
    }
};

/// Multiplicative inverse of a in the given field.
inline FieldElement field_inverse(const FieldElement& a, const FieldSpec& spec) {
    if (!(a.spec() == spec)) throw ContextMismatch("element does not belong to " + spec.to_string());
    return a.inverse();
}

}  // namespace gvdkit
