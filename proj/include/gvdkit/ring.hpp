#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gvdkit/errors.hpp"
#include "gvdkit/field.hpp"

namespace gvdkit {

/// Ordered list of distinct variable names.
class VarContext {
public:
    VarContext() = default;

    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw BadParameter("duplicate variable '" + names_[i] + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t require(const std::string& name) const {
        auto i = index_of(name);
        if (!i) throw BadParameter("unknown variable '" + name + "'");
        return *i;
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    VarContext without(const std::string& name) const {
        std::vector<std::string> out;
        for (const auto& n : names_)
            if (n != name) out.push_back(n);
        return VarContext(std::move(out));
    }

    /// A name not used by this context, built from `stem`.
    std::string fresh_name(const std::string& stem = "_t") const {
        if (!contains(stem)) return stem;
        for (std::size_t k = 1;; ++k) {
            auto cand = stem + std::to_string(k);
            if (!contains(cand)) return cand;
        }
    }

    friend bool operator==(const VarContext& a, const VarContext& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Lexicographic order given by a ranking of the variables; rank 0 is the greatest variable.
class MonomialOrder {
public:
    MonomialOrder() = default;

    static MonomialOrder natural(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        return MonomialOrder(std::move(p));
    }

    static MonomialOrder lex(std::vector<std::size_t> ranking) { return MonomialOrder(std::move(ranking)); }

    const std::vector<std::size_t>& ranking() const noexcept { return ranking_; }
    std::size_t size() const noexcept { return ranking_.size(); }
    std::size_t greatest() const { return ranking_.at(0); }
    std::size_t rank_of(std::size_t var) const { return rank_.at(var); }

    /// Same relative order with `var` moved to the top.
    MonomialOrder with_greatest(std::size_t var) const {
        std::vector<std::size_t> p{var};
        for (auto v : ranking_)
            if (v != var) p.push_back(v);
        return MonomialOrder(std::move(p));
    }

    bool is_natural() const {
        for (std::size_t i = 0; i < ranking_.size(); ++i)
            if (ranking_[i] != i) return false;
        return true;
    }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) { return a.ranking_ == b.ranking_; }

private:
    explicit MonomialOrder(std::vector<std::size_t> ranking) : ranking_(std::move(ranking)), rank_(ranking_.size()) {
        std::vector<bool> seen(ranking_.size(), false);
        for (std::size_t r = 0; r < ranking_.size(); ++r) {
            const auto v = ranking_[r];
            if (v >= ranking_.size() || seen[v]) throw BadParameter("monomial order is not a permutation");
            seen[v] = true;
            rank_[v] = r;
        }
    }

    std::vector<std::size_t> ranking_;
    std::vector<std::size_t> rank_;
};

/// Polynomial ring: field, variables and the lex order polynomials are sorted under.
struct Ring {
    FieldSpec field;
    VarContext ctx;
    MonomialOrder order;

    std::size_t nvars() const noexcept { return ctx.size(); }

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.field == b.field && a.ctx == b.ctx && a.order == b.order;
    }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(FieldSpec field, VarContext ctx, std::optional<MonomialOrder> order = std::nullopt) {
    auto n = ctx.size();
    MonomialOrder ord = order ? *order : MonomialOrder::natural(n);
    if (ord.size() != n) throw BadParameter("order does not cover the ring variables");
    return std::make_shared<const Ring>(Ring{field, std::move(ctx), std::move(ord)});
}

inline RingPtr make_ring(FieldSpec field, const std::vector<std::string>& names) {
    return make_ring(field, VarContext(names));
}

/// Order given by variable names, greatest first.
inline MonomialOrder order_from_names(const VarContext& ctx, const std::vector<std::string>& greatest_first) {
    if (greatest_first.size() != ctx.size()) throw BadParameter("order must list every ring variable exactly once");
    std::vector<std::size_t> p;
    for (const auto& n : greatest_first) p.push_back(ctx.require(n));
    return MonomialOrder::lex(std::move(p));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

inline RingPtr with_order(const RingPtr& r, MonomialOrder order) {
    if (r->order == order) return r;
    return make_ring(r->field, r->ctx, std::move(order));
}

inline RingPtr natural_ring(const RingPtr& r) { return with_order(r, MonomialOrder::natural(r->nvars())); }

/// Ring over `ctx` whose order is the order of `r` restricted to the shared names.
inline RingPtr induced_ring(const RingPtr& r, const VarContext& ctx) {
    std::vector<std::string> ranked;
    for (auto v : r->order.ranking())
        if (ctx.contains(r->ctx.name(v))) ranked.push_back(r->ctx.name(v));
    for (const auto& n : ctx.names())
        if (!r->ctx.contains(n)) ranked.push_back(n);
    return make_ring(r->field, ctx, order_from_names(ctx, ranked));
}

/// Ring without `name`, keeping the induced order.
inline RingPtr drop_variable(const RingPtr& r, const std::string& name) { return induced_ring(r, r->ctx.without(name)); }

/// Ring with fresh variables appended to the context and placed above every existing variable.
inline RingPtr elimination_ring(const RingPtr& r, std::size_t count, std::vector<std::string>* fresh = nullptr) {
    auto names = r->ctx.names();
    std::vector<std::string> added;
    VarContext probe(names);
    for (std::size_t k = 0; k < count; ++k) {
        auto n = probe.fresh_name("_t" + (k == 0 ? std::string() : std::to_string(k)));
        names.push_back(n);
        added.push_back(n);
        probe = VarContext(names);
    }
    std::vector<std::size_t> p;
    for (std::size_t k = 0; k < count; ++k) p.push_back(r->nvars() + k);
    for (auto v : r->order.ranking()) p.push_back(v);
    if (fresh) *fresh = added;
    return make_ring(r->field, VarContext(std::move(names)), MonomialOrder::lex(std::move(p)));
}

}  // namespace gvdkit
