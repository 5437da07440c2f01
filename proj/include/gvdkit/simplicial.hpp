#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gvdkit/monomial_ideal.hpp"
#include "gvdkit/search_counter.hpp"

namespace gvdkit {

using FaceMask = std::uint64_t;

/// Facets over an ordered vertex set. Vertices lying in no facet are allowed; the void complex has no facets.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    SimplicialComplex(std::vector<std::string> vertices, std::vector<FaceMask> facets)
        : vertices_(std::move(vertices)), facets_(std::move(facets)) {
        if (vertices_.size() > 64) throw BadParameter("complexes support at most 64 vertices");
        VarContext check(vertices_);  // rejects duplicates
        const FaceMask all = universe();
        for (auto f : facets_)
            if (f & ~all) throw BadParameter("facet uses a vertex outside the vertex set");
        normalize();
    }

    /// Complex on the same (already validated) vertex set.
    SimplicialComplex with_facets(std::vector<FaceMask> facets) const {
        SimplicialComplex d;
        d.vertices_ = vertices_;
        d.facets_ = std::move(facets);
        const FaceMask all = universe();
        for (auto f : d.facets_)
            if (f & ~all) throw BadParameter("facet uses a vertex outside the vertex set");
        d.normalize();
        return d;
    }

    static SimplicialComplex void_complex(std::vector<std::string> vertices) { return {std::move(vertices), {}}; }
    static SimplicialComplex empty_face(std::vector<std::string> vertices) { return {std::move(vertices), {0}}; }
    static SimplicialComplex simplex(std::vector<std::string> vertices) {
        auto n = vertices.size();
        return {std::move(vertices), {n == 64 ? ~FaceMask{0} : (FaceMask{1} << n) - 1}};
    }

    static SimplicialComplex from_named(std::vector<std::string> vertices,
                                        const std::vector<std::vector<std::string>>& facets) {
        VarContext ctx(vertices);
        std::vector<FaceMask> masks;
        for (const auto& f : facets) {
            FaceMask m = 0;
            for (const auto& v : f) {
                auto i = ctx.index_of(v);
                if (!i) throw UnknownVertex("unknown vertex '" + v + "'");
                m |= FaceMask{1} << *i;
            }
            masks.push_back(m);
        }
        return {std::move(vertices), std::move(masks)};
    }

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    std::size_t nverts() const noexcept { return vertices_.size(); }
    const std::vector<FaceMask>& facets() const noexcept { return facets_; }

    FaceMask universe() const {
        return vertices_.size() == 64 ? ~FaceMask{0} : (FaceMask{1} << vertices_.size()) - 1;
    }

    bool is_void() const { return facets_.empty(); }
    bool is_empty_face() const { return facets_.size() == 1 && facets_[0] == 0; }
    bool is_simplex() const { return facets_.size() == 1; }

    bool contains(FaceMask f) const {
        return std::any_of(facets_.begin(), facets_.end(), [f](FaceMask g) { return (f & g) == f; });
    }

    /// Union of the facets: the vertices that are faces.
    FaceMask face_vertices() const {
        FaceMask m = 0;
        for (auto f : facets_) m |= f;
        return m;
    }

    /// Size of the largest facet; -1 for the void complex.
    int max_facet_size() const {
        int best = -1;
        for (auto f : facets_) best = std::max(best, std::popcount(f));
        return best;
    }

    int dim() const { return is_void() ? -2 : max_facet_size() - 1; }

    bool is_pure() const {
        for (auto f : facets_)
            if (std::popcount(f) != std::popcount(facets_.front())) return false;
        return true;
    }

    std::size_t vertex_index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == name) return i;
        throw UnknownVertex("unknown vertex '" + name + "'");
    }

    std::vector<std::string> face_names(FaceMask f) const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (f >> i & 1) out.push_back(vertices_[i]);
        return out;
    }

    std::string face_string(FaceMask f) const {
        std::string s = "{";
        bool first = true;
        for (const auto& n : face_names(f)) {
            s += (first ? "" : ",") + n;
            first = false;
        }
        return s + "}";
    }

    /// "{}" is the void complex and "{{}}" the complex {∅}.
    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < facets_.size(); ++i) s += (i ? "," : "") + face_string(facets_[i]);
        return s + "}";
    }

    std::vector<std::vector<std::string>> facet_names() const {
        std::vector<std::vector<std::string>> out;
        for (auto f : facets_) out.push_back(face_names(f));
        return out;
    }

    /// Every face, the empty face included.
    std::vector<FaceMask> faces() const {
        std::set<FaceMask> all;
        for (auto f : facets_) {
            for (FaceMask s = f;; s = (s - 1) & f) {
                all.insert(s);
                if (s == 0) break;
            }
        }
        return {all.begin(), all.end()};
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertices_ == b.vertices_ && a.facets_ == b.facets_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<FaceMask> facets_;

    void normalize() {
        std::sort(facets_.begin(), facets_.end());
        facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());
        std::vector<FaceMask> keep;
        for (auto f : facets_) {
            bool sub = false;
            for (auto g : facets_)
                if (g != f && (f & g) == f) {
                    sub = true;
                    break;
                }
            if (!sub) keep.push_back(f);
        }
        facets_ = std::move(keep);
    }
};

struct StarLinkDel {
    SimplicialComplex star, link, del;
};

/// Subcomplexes over the same vertex set as `d`.
inline StarLinkDel star_link_del(const SimplicialComplex& d, std::size_t v) {
    if (v >= d.nverts()) throw UnknownVertex("vertex index out of range");
    const FaceMask bit = FaceMask{1} << v;
    std::vector<FaceMask> star, link, del;
    for (auto f : d.facets()) {
        if (f & bit) {
            star.push_back(f);
            link.push_back(f & ~bit);
        }
        del.push_back(f & ~bit);
    }
    return {d.with_facets(std::move(star)), d.with_facets(std::move(link)), d.with_facets(std::move(del))};
}

inline StarLinkDel star_link_del(const SimplicialComplex& d, const std::string& v) {
    return star_link_del(d, d.vertex_index(v));
}

/// No facet of the link is a facet of the deletion.
inline bool is_shedding_vertex(const SimplicialComplex& d, std::size_t v) {
    auto parts = star_link_del(d, v);
    for (auto f : parts.link.facets())
        if (std::find(parts.del.facets().begin(), parts.del.facets().end(), f) != parts.del.facets().end()) return false;
    return true;
}

/// Complex on a smaller vertex set; `v` must lie in no facet.
inline SimplicialComplex drop_vertex(const SimplicialComplex& d, std::size_t v) {
    const FaceMask bit = FaceMask{1} << v;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d.nverts(); ++i)
        if (i != v) names.push_back(d.vertices()[i]);
    std::vector<FaceMask> facets;
    for (auto f : d.facets()) {
        if (f & bit) throw BadParameter("vertex still lies in a facet");
        const FaceMask low = f & (bit - 1);
        facets.push_back(low | ((f >> 1) & ~(bit - 1)));
    }
    return {std::move(names), std::move(facets)};
}

/// Cone from a vertex outside every facet.
inline SimplicialComplex cone(const SimplicialComplex& d, std::size_t v) {
    std::vector<FaceMask> facets;
    for (auto f : d.facets()) facets.push_back(f | FaceMask{1} << v);
    return {d.vertices(), std::move(facets)};
}

/// Minimal non-faces, as vertex sets.
inline std::vector<FaceMask> minimal_nonfaces(const SimplicialComplex& d) {
    std::vector<FaceMask> complements;
    for (auto f : d.facets()) complements.push_back(d.universe() & ~f);
    return minimal_transversals(complements);
}

inline Polynomial face_monomial(const RingPtr& r, FaceMask f) {
    Monomial m(r->nvars());
    for (std::size_t i = 0; i < r->nvars(); ++i)
        if (f >> i & 1) m[i] = 1;
    return Polynomial::monomial(r, FieldElement::one(r->field), m);
}

inline Ideal stanley_reisner(const SimplicialComplex& d, const RingPtr& r) {
    if (r->ctx.names() != d.vertices()) throw ContextMismatch("ring variables differ from the vertex set");
    std::vector<Polynomial> gens;
    for (auto m : minimal_nonfaces(d)) gens.push_back(face_monomial(r, m));
    return Ideal(r, gens);
}

inline Ideal stanley_reisner(const SimplicialComplex& d, FieldSpec field = FieldSpec::rationals()) {
    return stanley_reisner(d, make_ring(field, d.vertices()));
}

/// Complex of a squarefree monomial ideal; non-monomial generators are replaced by the canonical basis when that is monomial.
inline SimplicialComplex complex_of(const Ideal& I) {
    std::vector<Polynomial> gens = I.gens();
    if (!I.gens_are_monomials()) {
        gens = I.canonical().elements;
        for (const auto& g : gens)
            if (!g.is_monomial()) throw NotMonomial(g.to_string());
    }
    std::vector<FaceMask> supports;
    for (const auto& g : gens) {
        if (!g.leading_monomial().is_squarefree()) throw NotSquarefree("generator " + g.to_string() + " is not squarefree");
        supports.push_back(g.leading_monomial().support_mask());
    }
    SimplicialComplex probe(I.ctx().names(), {});
    std::vector<FaceMask> facets;
    for (auto t : minimal_transversals(supports)) facets.push_back(probe.universe() & ~t);
    return {I.ctx().names(), std::move(facets)};
}

// ---------------------------------------------------------------------------
// vertex decomposition

enum class VDMode { Pure, Nonpure, OrderCompatible };

inline const char* to_string(VDMode m) {
    switch (m) {
        case VDMode::Pure: return "pure";
        case VDMode::Nonpure: return "nonpure";
        case VDMode::OrderCompatible: return "order-compatible";
    }
    return "?";
}

struct VDNode;

struct VDAttempt {
    std::size_t vertex = 0;
    std::string failure;  // link-facet-in-deletion | link | deletion
    std::string detail;
    std::shared_ptr<const VDNode> child;  // the refuted link or deletion
};

struct VDNode {
    enum class Case { Void, Empty, Simplex, Shed, Refuted };
    Case kind = Case::Refuted;
    std::vector<FaceMask> facets;
    std::optional<std::size_t> vertex;  // shed vertex
    std::shared_ptr<const VDNode> link, del;
    std::string reason;  // for refutations
    std::vector<VDAttempt> attempts;
};

inline const char* to_string(VDNode::Case c) {
    switch (c) {
        case VDNode::Case::Void: return "void";
        case VDNode::Case::Empty: return "empty";
        case VDNode::Case::Simplex: return "simplex";
        case VDNode::Case::Shed: return "shed";
        case VDNode::Case::Refuted: return "refuted";
    }
    return "?";
}

struct VDResult {
    bool decomposable = false;
    VDMode mode = VDMode::Pure;
    std::vector<std::string> vertices;
    std::vector<std::size_t> order;  // search order, greatest first
    std::shared_ptr<const VDNode> root;
};

namespace detail {

class VDSearch {
public:
    VDSearch(VDMode mode, std::vector<std::size_t> order) : mode_(mode), order_(std::move(order)) {}

    std::shared_ptr<const VDNode> run(const SimplicialComplex& d) {
        auto it = memo_.find(d.facets());
        if (it != memo_.end()) return it->second;
        auto node = std::make_shared<VDNode>();
        node->facets = d.facets();
        if (mode_ != VDMode::Nonpure && !d.is_pure()) {
            node->reason = "not pure";
        } else if (d.is_void()) {
            node->kind = VDNode::Case::Void;
        } else if (d.is_empty_face()) {
            node->kind = VDNode::Case::Empty;
        } else if (d.is_simplex()) {
            node->kind = VDNode::Case::Simplex;
        } else {
            shed(d, *node);
        }
        memo_.emplace(d.facets(), node);
        return node;
    }

private:
    VDMode mode_;
    std::vector<std::size_t> order_;  // vertices greatest first
    std::map<std::vector<FaceMask>, std::shared_ptr<const VDNode>> memo_;

    void shed(const SimplicialComplex& d, VDNode& node) {
        const FaceMask present = d.face_vertices();
        std::string tried;
        for (auto v : order_) {
            if (!(present >> v & 1)) continue;
            ++search_counter();
            auto parts = star_link_del(d, v);
            VDAttempt a{v, "", "", nullptr};
            if (mode_ == VDMode::Nonpure) {
                for (auto f : parts.link.facets()) {
                    if (std::find(parts.del.facets().begin(), parts.del.facets().end(), f) != parts.del.facets().end()) {
                        a.failure = "link-facet-in-deletion";
                        a.detail = "link facet " + d.face_string(f) + " is a deletion facet";
                        break;
                    }
                }
            }
            std::shared_ptr<const VDNode> lk, dl;
            if (a.failure.empty()) {
                lk = run(parts.link);
                if (lk->kind == VDNode::Case::Refuted) a = {v, "link", "link not decomposable", lk};
            }
            if (a.failure.empty()) {
                dl = run(parts.del);
                if (dl->kind == VDNode::Case::Refuted) a = {v, "deletion", "deletion not decomposable", dl};
            }
            if (a.failure.empty()) {
                node.kind = VDNode::Case::Shed;
                node.vertex = v;
                node.link = lk;
                node.del = dl;
                return;
            }
            tried += (tried.empty() ? "" : "; ") + d.vertices()[v] + ": " + a.detail;
            node.attempts.push_back(std::move(a));
            if (mode_ == VDMode::OrderCompatible) break;
        }
        node.reason = tried.empty() ? "no vertex" : tried;
    }
};

}  // namespace detail

/// Vertex decomposability. `vertex_order` (greatest first) is required for the order-compatible mode and
/// sets the search order otherwise; default is ascending vertex index.
inline VDResult vertex_decomposable(const SimplicialComplex& d, VDMode mode,
                                    std::optional<std::vector<std::size_t>> vertex_order = std::nullopt) {
    std::vector<std::size_t> order;
    if (vertex_order) {
        order = *vertex_order;
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i || sorted.size() != d.nverts())
                throw BadParameter("vertex order must list every vertex once");
    } else {
        if (mode == VDMode::OrderCompatible) throw BadParameter("order-compatible mode needs a vertex order");
        for (std::size_t i = 0; i < d.nverts(); ++i) order.push_back(i);
    }
    detail::VDSearch search(mode, order);
    VDResult r;
    r.mode = mode;
    r.vertices = d.vertices();
    r.order = order;
    r.root = search.run(d);
    r.decomposable = r.root->kind != VDNode::Case::Refuted;
    return r;
}

inline VDResult vertex_decomposable(const SimplicialComplex& d, VDMode mode, const std::vector<std::string>& names) {
    std::vector<std::size_t> order;
    for (const auto& n : names) order.push_back(d.vertex_index(n));
    return vertex_decomposable(d, mode, order);
}

// ---------------------------------------------------------------------------
// homology

namespace detail {

/// Rank of a dense matrix over the field by Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<FieldElement>> m) {
    std::size_t rank = 0;
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        auto inv = m[rank][c].inverse();
        for (std::size_t k = c; k < cols; ++k) m[rank][k] = m[rank][k] * inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            auto f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] = m[r][k] - f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Ranks of the boundary maps of the augmented chain complex; index i is the map from i-faces to (i-1)-faces.
inline std::vector<std::size_t> boundary_ranks(const std::vector<std::vector<FaceMask>>& by_dim, const FieldSpec& field) {
    // by_dim[k] holds faces with k vertices
    std::vector<std::size_t> ranks(by_dim.size(), 0);
    for (std::size_t k = 1; k < by_dim.size(); ++k) {
        const auto& rows = by_dim[k - 1];
        const auto& cols = by_dim[k];
        if (rows.empty() || cols.empty()) continue;
        std::map<FaceMask, std::size_t> row_index;
        for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
        std::vector<std::vector<FieldElement>> m(rows.size(), std::vector<FieldElement>(cols.size(), FieldElement::zero(field)));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            int sign = 1;
            for (auto bits = cols[j]; bits; bits &= bits - 1) {
                auto face = cols[j] & ~(bits & -bits);
                m[row_index.at(face)][j] = FieldElement::from_int(field, sign);
                sign = -sign;
            }
        }
        ranks[k] = matrix_rank(std::move(m));
    }
    return ranks;
}

/// Reduced Betti numbers, index i for dimension i (i from -1 stored at position 0).
inline std::vector<std::size_t> reduced_betti(const std::vector<FaceMask>& faces, const FieldSpec& field) {
    std::size_t top = 0;
    for (auto f : faces) top = std::max<std::size_t>(top, std::popcount(f));
    std::vector<std::vector<FaceMask>> by_dim(top + 1);
    for (auto f : faces) by_dim[std::popcount(f)].push_back(f);
    auto ranks = boundary_ranks(by_dim, field);
    std::vector<std::size_t> betti(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
        const auto out = ranks[k];
        const auto in = k + 1 <= top ? ranks[k + 1] : 0;
        betti[k] = by_dim[k].size() - out - in;
    }
    return betti;
}

}  // namespace detail

/// Reduced Betti numbers of the complex: entry i is the rank of reduced homology in dimension i - 1.
inline std::vector<std::size_t> reduced_homology(const SimplicialComplex& d, const FieldSpec& field = FieldSpec::rationals()) {
    if (d.is_void()) throw VoidComplex();
    return detail::reduced_betti(d.faces(), field);
}

/// Reisner's criterion: every link has vanishing reduced homology below its top dimension.
inline bool reisner_cm(const SimplicialComplex& d, const FieldSpec& field = FieldSpec::rationals()) {
    if (d.is_void()) throw VoidComplex();
    auto all = d.faces();
    for (auto f : all) {
        std::vector<FaceMask> link;
        for (auto g : all)
            if ((g & f) == 0 && d.contains(g | f)) link.push_back(g);
        auto betti = detail::reduced_betti(link, field);
        // the top dimension of the link is betti.size() - 2
        for (std::size_t k = 0; k + 1 < betti.size(); ++k)
            if (betti[k] != 0) return false;
    }
    return true;
}

}  // namespace gvdkit
