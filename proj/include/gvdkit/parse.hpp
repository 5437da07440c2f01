#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gvdkit/ideal.hpp"

namespace gvdkit {

namespace detail {

class ExprParser {
public:
    ExprParser(const RingPtr& r, std::string_view text, std::size_t line, std::size_t col0)
        : r_(r), s_(text), line_(line), col0_(col0) {}

    Polynomial parse() {
        skip();
        if (at_end()) fail("expected an expression");
        auto p = expr();
        skip();
        if (!at_end()) fail(std::string("unexpected '") + s_[i_] + "'");
        return p;
    }

private:
    const RingPtr& r_;
    std::string_view s_;
    std::size_t i_ = 0;
    std::size_t line_, col0_;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + i_); }

    bool at_end() const { return i_ >= s_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (!at_end() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc(r_);
        bool first = true;
        for (;;) {
            skip();
            bool neg = false;
            if (eat('+')) {
            } else if (eat('-')) {
                neg = true;
            } else if (!first) {
                break;
            }
            auto t = term();
            acc = neg ? acc - t : acc + t;
            first = false;
        }
        return acc;
    }

    Polynomial term() {
        auto acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                const auto at = i_;
                auto d = factor();
                if (!d.is_constant()) {
                    i_ = at;
                    fail("division is only allowed by a nonzero constant");
                }
                acc = acc.scale(d.leading_coeff().inverse());
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial factor() {
        skip();
        if (eat('-')) return -factor();
        auto b = base();
        if (eat('^')) {
            skip();
            auto e = integer();
            if (!e.fits_ulong_p() || e > 1000) fail("exponent too large");
            b = b.pow(static_cast<unsigned>(e.get_ui()));
        }
        return b;
    }

    mpz_class integer() {
        skip();
        const auto start = i_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected an integer");
        return mpz_class(std::string(s_.substr(start, i_ - start)));
    }

    Polynomial base() {
        skip();
        if (at_end()) fail("expected a term after the operator");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            auto p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Polynomial::constant(r_, FieldElement::from_mpz(r_->field, integer()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = i_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name(s_.substr(start, i_ - start));
            auto v = r_->ctx.index_of(name);
            if (!v) {
                i_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Polynomial::variable(r_, *v);
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace detail

inline Polynomial parse_polynomial(const RingPtr& r, std::string_view text, std::size_t line = 1, std::size_t col0 = 1) {
    return detail::ExprParser(r, text, line, col0).parse();
}

/// Parsed ideal file. `order` is empty when the file has no order line.
struct IdealFile {
    FieldSpec field;
    std::vector<std::string> ring;
    std::vector<std::string> order;
    std::vector<std::string> gens;  // canonical printed forms
    RingPtr ring_ptr;
    Ideal ideal;

    /// Variables greatest first: the order line, or the ring line when absent.
    std::vector<std::string> order_or_ring() const { return order.empty() ? ring : order; }
};

inline FieldSpec parse_field(std::string_view v, std::size_t line, std::size_t col) {
    v = detail::trim(v);
    if (v == "QQ") return FieldSpec::rationals();
    if (v.starts_with("GF(") && v.ends_with(")")) {
        auto digits = v.substr(3, v.size() - 4);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos || digits.size() > 18)
            throw ParseError("bad field characteristic", line, col);
        auto p = std::stoull(std::string(digits));
        if (!FieldSpec::is_prime(p)) throw ParseError("field characteristic is not prime", line, col);
        return FieldSpec::prime(p);
    }
    throw ParseError("field must be QQ or GF(p)", line, col);
}

inline IdealFile parse_ideal_file(std::string_view text) {
    IdealFile f;
    bool have_field = false, have_ring = false, have_order = false, in_gens = false;
    struct Pending {
        std::string text;
        std::size_t line, col;
    };
    std::vector<Pending> pending;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto body = detail::trim(raw);
        if (body.empty()) continue;
        const std::size_t lead = static_cast<std::size_t>(body.data() - raw.data());
        auto colon = body.find(':');
        auto key = colon == std::string_view::npos ? std::string_view{} : detail::trim(body.substr(0, colon));
        auto value_col = lead + colon + 2;
        auto value = colon == std::string_view::npos ? std::string_view{} : body.substr(colon + 1);
        if (!in_gens) {
            if (key == "field") {
                if (have_field || have_ring) throw ParseError("field line must come first", lineno, lead + 1);
                f.field = parse_field(value, lineno, value_col);
                have_field = true;
            } else if (key == "ring") {
                if (have_ring) throw ParseError("duplicate ring line", lineno, lead + 1);
                f.ring = detail::split_words(value);
                if (f.ring.empty()) throw ParseError("ring needs at least one variable", lineno, value_col);
                have_ring = true;
            } else if (key == "order") {
                if (!have_ring) throw ParseError("order line before ring line", lineno, lead + 1);
                if (have_order) throw ParseError("duplicate order line", lineno, lead + 1);
                std::string v(value);
                std::vector<std::string> names;
                std::size_t start = 0;
                for (;;) {
                    auto gt = v.find('>', start);
                    auto piece = detail::trim(std::string_view(v).substr(start, gt == std::string::npos ? std::string::npos : gt - start));
                    if (piece.empty() || piece.find_first_of(" \t") != std::string_view::npos)
                        throw ParseError("malformed order", lineno, value_col + start);
                    names.emplace_back(piece);
                    if (gt == std::string::npos) break;
                    start = gt + 1;
                }
                f.order = names;
                have_order = true;
            } else if (key == "gens") {
                if (!have_ring) throw ParseError("gens before ring line", lineno, lead + 1);
                in_gens = true;
                auto rest = detail::trim(value);
                if (!rest.empty())
                    pending.push_back({std::string(rest), lineno, lead + 1 + static_cast<std::size_t>(rest.data() - body.data())});
            } else {
                throw ParseError("expected field:, ring:, order: or gens:", lineno, lead + 1);
            }
        } else {
            pending.push_back({std::string(body), lineno, lead + 1});
        }
    }
    if (!have_ring) throw ParseError("missing ring line", lineno, 1);
    if (!in_gens) throw ParseError("missing gens line", lineno, 1);
    VarContext ctx;
    try {
        ctx = VarContext(f.ring);
    } catch (const BadParameter& e) {
        throw ParseError(e.what(), 1, 1);
    }
    std::optional<MonomialOrder> ord;
    if (have_order) {
        try {
            ord = order_from_names(ctx, f.order);
        } catch (const BadParameter& e) {
            throw ParseError(e.what(), 1, 1);
        }
    }
    f.ring_ptr = make_ring(f.field, ctx, ord);
    std::vector<Polynomial> gens;
    for (const auto& p : pending) gens.push_back(parse_polynomial(f.ring_ptr, p.text, p.line, p.col));
    for (const auto& g : gens) f.gens.push_back(g.to_string());
    f.ideal = Ideal(f.ring_ptr, gens);
    return f;
}

inline Ideal parse_ideal(std::string_view text) { return parse_ideal_file(text).ideal; }

/// Print in the file grammar; re-parsing gives the same canonical generators.
inline std::string format_ideal_file(const Ideal& I, bool with_order = true) {
    const auto& R = I.ring();
    std::string out;
    if (!R->field.is_rationals()) out += "field: " + R->field.to_string() + "\n";
    out += "ring:";
    for (const auto& n : R->ctx.names()) out += " " + n;
    out += "\n";
    if (with_order && !R->order.is_natural()) {
        out += "order: ";
        for (std::size_t i = 0; i < R->order.size(); ++i)
            out += (i ? " > " : "") + R->ctx.name(R->order.ranking()[i]);
        out += "\n";
    }
    out += "gens:\n";
    for (const auto& g : I.gens()) out += g.to_string() + "\n";
    return out;
}

}  // namespace gvdkit
