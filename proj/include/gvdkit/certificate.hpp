#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gvdkit/liaison.hpp"
#include "gvdkit/parse.hpp"

namespace gvdkit {

using Json = nlohmann::json;  // std::map objects, so keys serialize sorted

inline constexpr int kSchemaVersion = 1;

namespace cert {

/// Member `k` of object `j`, or a discarded value that matches nothing.
inline const Json& field(const Json& j, const char* k) {
    static const Json absent = Json::value_t::discarded;
    if (!j.is_object()) return absent;
    auto it = j.find(k);
    return it == j.end() ? absent : *it;
}

/// Member `k` of a recorded counterpart, when there is one.
inline const Json* sub(const Json* rec, const char* k) { return rec ? &field(*rec, k) : nullptr; }

inline Json polys(const std::vector<Polynomial>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

inline Json order_names(const RingPtr& r) {
    Json a = Json::array();
    for (auto v : r->order.ranking()) a.push_back(r->ctx.name(v));
    return a;
}

inline Json ring_json(const RingPtr& r) {
    return {{"field", r->field.to_string()}, {"ring", r->ctx.names()}, {"order", order_names(r)}};
}

inline Json ideal_json(const Ideal& I) {
    auto j = ring_json(I.ring());
    j["gens"] = polys(I.gens());
    return j;
}

inline Json evidence(const Evidence& e) { return {{"tag", to_string(e.tag)}, {"rule", e.rule}}; }

inline Json optional_evidence(const std::optional<Evidence>& e) { return e ? evidence(*e) : Json(nullptr); }

inline Json scalars(const std::vector<FieldElement>& a) {
    Json out = Json::array();
    for (const auto& x : a) out.push_back(x.to_string());
    return out;
}

inline Json complex_json(const SimplicialComplex& d) {
    return {{"vertices", d.vertices()}, {"facets", d.facet_names()}};
}

namespace detail {

inline Json face_names(FaceMask f, const std::vector<std::string>& vertices) {
    Json a = Json::array();
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (f >> i & 1) a.push_back(vertices[i]);
    return a;
}

inline Json facet_names(const std::vector<FaceMask>& facets, const std::vector<std::string>& vertices) {
    Json a = Json::array();
    for (auto f : facets) a.push_back(face_names(f, vertices));
    return a;
}

using VDMemo = std::map<const VDNode*, Json>;

inline Json vd_node(const VDNode& n, const std::vector<std::string>& vertices, VDMemo& memo);

inline Json vd_child(const VDNode& c, const std::vector<std::string>& vertices, VDMemo& memo) {
    auto it = memo.find(&c);
    if (it != memo.end()) return it->second;
    return memo.emplace(&c, vd_node(c, vertices, memo)).first->second;
}

inline Json vd_node(const VDNode& n, const std::vector<std::string>& vertices, VDMemo& memo) {
    Json j{{"case", to_string(n.kind)}, {"facets", facet_names(n.facets, vertices)}};
    if (n.kind == VDNode::Case::Shed) {
        j["vertex"] = vertices[*n.vertex];
        j["link"] = vd_child(*n.link, vertices, memo);
        j["del"] = vd_child(*n.del, vertices, memo);
    }
    if (n.kind == VDNode::Case::Refuted) {
        j["reason"] = n.reason;
        Json at = Json::array();
        for (const auto& a : n.attempts) {
            Json e{{"vertex", vertices[a.vertex]}, {"failure", a.failure}, {"detail", a.detail}};
            if (a.child) e["child"] = vd_child(*a.child, vertices, memo);
            at.push_back(std::move(e));
        }
        j["attempts"] = std::move(at);
    }
    return j;
}

inline bool is_str(const Json& j, const std::string& s) {
    return j.is_string() && j.get_ref<const std::string&>() == s;
}

inline bool is_face(const Json& j, FaceMask f, const std::vector<std::string>& vertices) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(std::popcount(f))) return false;
    std::size_t k = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (f >> i & 1 && !is_str(j[k++], vertices[i])) return false;
    return true;
}

using VDMatchMemo = std::set<std::pair<const VDNode*, const Json*>>;

// vd_node_matches(n, j) holds exactly when vd_node(n) == j.
inline bool vd_node_matches(const VDNode& n, const Json& j, const std::vector<std::string>& vertices, VDMatchMemo& memo) {
    if (!j.is_object() || memo.count({&n, &j})) return j.is_object();
    const auto& fs = field(j, "facets");
    if (!is_str(field(j, "case"), to_string(n.kind)) || !fs.is_array() || fs.size() != n.facets.size()) return false;
    for (std::size_t i = 0; i < n.facets.size(); ++i)
        if (!is_face(fs[i], n.facets[i], vertices)) return false;
    bool ok = true;
    if (n.kind == VDNode::Case::Shed) {
        ok = j.size() == 5 && is_str(field(j, "vertex"), vertices[*n.vertex]) &&
             vd_node_matches(*n.link, field(j, "link"), vertices, memo) &&
             vd_node_matches(*n.del, field(j, "del"), vertices, memo);
    } else if (n.kind == VDNode::Case::Refuted) {
        const auto& at = field(j, "attempts");
        ok = j.size() == 4 && is_str(field(j, "reason"), n.reason) && at.is_array() && at.size() == n.attempts.size();
        for (std::size_t i = 0; ok && i < n.attempts.size(); ++i) {
            const auto& a = n.attempts[i];
            const auto& e = at[i];
            ok = e.is_object() && e.size() == (a.child ? 4u : 3u) && is_str(field(e, "vertex"), vertices[a.vertex]) &&
                 is_str(field(e, "failure"), a.failure) && is_str(field(e, "detail"), a.detail) &&
                 (!a.child || vd_node_matches(*a.child, field(e, "child"), vertices, memo));
        }
    } else {
        ok = j.size() == 2;
    }
    if (ok) memo.insert({&n, &j});
    return ok;
}

inline bool vd_matches(const VDResult& r, const Json& j) {
    if (!j.is_object() || j.size() != 5 || !is_str(field(j, "mode"), to_string(r.mode)) ||
        field(j, "vertices") != Json(r.vertices) || field(j, "decomposable") != Json(r.decomposable))
        return false;
    const auto& order = field(j, "order");
    if (!order.is_array() || order.size() != r.order.size()) return false;
    for (std::size_t i = 0; i < r.order.size(); ++i)
        if (!is_str(order[i], r.vertices[r.order[i]])) return false;
    VDMatchMemo memo;
    return vd_node_matches(*r.root, field(j, "tree"), r.vertices, memo);
}

}  // namespace detail

inline Json vd_node(const VDNode& n, const std::vector<std::string>& vertices) {
    detail::VDMemo memo;
    return detail::vd_node(n, vertices, memo);
}

/// With a recorded counterpart `rec` equal to the serialization, `rec` is reused instead of serializing again.
inline Json vd_result(const VDResult& r, const Json* rec = nullptr) {
    if (rec && detail::vd_matches(r, *rec)) return *rec;
    Json order = Json::array();
    for (auto v : r.order) order.push_back(r.vertices[v]);
    return {{"mode", to_string(r.mode)},
            {"vertices", r.vertices},
            {"order", order},
            {"decomposable", r.decomposable},
            {"tree", vd_node(*r.root, r.vertices)}};
}

inline Json optional_vd(const std::optional<VDResult>& r, const Json* rec = nullptr) {
    return r ? vd_result(*r, rec) : Json(nullptr);
}

inline std::string case_name(GVDNode::Case c) {
    switch (c) {
        case GVDNode::Case::Unit: return "unit";
        case GVDNode::Case::Indeterminates: return "indeterminates";
        case GVDNode::Case::Decompose: return "decompose";
        case GVDNode::Case::Refuted: return "refuted";
    }
    return "?";
}

namespace detail {

using NodeMemo = std::map<const GVDNode*, Json>;

inline Json node(const GVDNode& n, NodeMemo& memo);

/// Serialized child; memoized search trees share subtrees, which serialize once.
inline Json child(const GVDNodePtr& c, NodeMemo& memo) {
    if (!c) return nullptr;
    auto it = memo.find(c.get());
    if (it != memo.end()) return it->second;
    auto j = node(*c, memo);
    memo.emplace(c.get(), j);
    return j;
}

inline Json node(const GVDNode& n, NodeMemo& memo) {
    Json j{{"case", case_name(n.kind)},
           {"ring", n.ring->ctx.names()},
           {"order", order_names(n.ring)},
           {"gb", polys(n.gb)},
           {"conditional", n.conditional},
           {"cm", n.cm},
           {"cm_rule", n.cm_rule},
           {"unmixed", optional_evidence(n.unmixed)}};
    if (n.kind == GVDNode::Case::Refuted) {
        j["reason"] = n.reason;
        Json at = Json::array();
        for (const auto& a : n.attempts) {
            Json e{{"y", a.y}, {"failure", a.failure}, {"detail", a.detail}, {"split_gb", polys(a.split_gb)}};
            e["child"] = child(a.child, memo);
            at.push_back(std::move(e));
        }
        j["attempts"] = std::move(at);
        return j;
    }
    if (n.kind != GVDNode::Case::Decompose) return j;
    j["y"] = n.y;
    j["tried"] = n.tried();
    j["split_gb"] = polys(n.split_gb);
    j["in_y"] = polys(n.in_y);
    j["C"] = polys(n.C);
    j["N"] = polys(n.N);
    j["degeneracy"] = to_string(n.degeneracy);
    j["degeneracy_rule"] = n.degeneracy_rule;
    j["nondegeneracy_witness"] = n.nondegeneracy_witness ? Json(n.nondegeneracy_witness->to_string()) : Json(nullptr);
    j["heights"] = {{"I", n.ht_I}, {"C", n.ht_C}, {"N", n.ht_N}};
    j["nonpure"] = n.nonpure ? Json(to_string(*n.nonpure)) : Json(nullptr);
    j["c_branch"] = child(n.c_branch, memo);
    j["n_branch"] = child(n.n_branch, memo);
    j["n_radical"] = optional_evidence(n.n_radical);
    j["n_cm"] = optional_evidence(n.n_cm);
    j["n_vd"] = optional_vd(n.n_vd);
    j["vd"] = optional_vd(n.vd);
    if (n.depth_scalars) {
        j["depth_lemma"] = {{"scalars", scalars(*n.depth_scalars)}, {"u", n.depth_u->to_string()}, {"v", n.depth_v->to_string()}};
    } else {
        j["depth_lemma"] = nullptr;
    }
    return j;
}

// Structural comparison of a node with a document, without serializing the node.
// node_matches(n, j) holds exactly when node(n) == j.

inline bool is_bool(const Json& j, bool b) { return j.is_boolean() && j.get<bool>() == b; }

inline bool is_int(const Json& j, long v) {
    if (j.is_number_unsigned()) return v >= 0 && j.get<std::uint64_t>() == static_cast<std::uint64_t>(v);
    return j.is_number_integer() && j.get<std::int64_t>() == v;
}

inline bool is_polys(const Json& j, const std::vector<Polynomial>& ps) {
    if (!j.is_array() || j.size() != ps.size()) return false;
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (!is_str(j[i], ps[i].to_string())) return false;
    return true;
}

inline bool is_names(const Json& j, const std::vector<std::string>& names) {
    if (!j.is_array() || j.size() != names.size()) return false;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!is_str(j[i], names[i])) return false;
    return true;
}

inline bool is_order(const Json& j, const RingPtr& r) {
    const auto& rk = r->order.ranking();
    if (!j.is_array() || j.size() != rk.size()) return false;
    for (std::size_t i = 0; i < rk.size(); ++i)
        if (!is_str(j[i], r->ctx.name(rk[i]))) return false;
    return true;
}

inline bool is_evidence(const Json& j, const std::optional<Evidence>& e) {
    if (!e) return j.is_null();
    return j.is_object() && j.size() == 2 && is_str(field(j, "tag"), to_string(e->tag)) &&
           is_str(field(j, "rule"), e->rule);
}

inline bool is_vd(const Json& j, const std::optional<VDResult>& r) { return r ? vd_matches(*r, j) : j.is_null(); }

using MatchMemo = std::set<std::pair<const GVDNode*, const Json*>>;

inline bool node_matches(const GVDNode& n, const Json& j, MatchMemo& memo);

inline bool child_matches(const GVDNodePtr& c, const Json& j, MatchMemo& memo) {
    if (!c) return j.is_null();
    if (memo.count({c.get(), &j})) return true;
    if (!node_matches(*c, j, memo)) return false;
    memo.insert({c.get(), &j});
    return true;
}

inline bool node_matches(const GVDNode& n, const Json& j, MatchMemo& memo) {
    if (!j.is_object()) return false;
    auto f = [&](const char* k) -> const Json& { return field(j, k); };
    if (!(is_str(f("case"), case_name(n.kind)) && is_names(f("ring"), n.ring->ctx.names()) &&
          is_order(f("order"), n.ring) && is_polys(f("gb"), n.gb) && is_bool(f("conditional"), n.conditional) &&
          is_bool(f("cm"), n.cm) && is_str(f("cm_rule"), n.cm_rule) && is_evidence(f("unmixed"), n.unmixed)))
        return false;
    if (n.kind == GVDNode::Case::Refuted) {
        const auto& at = f("attempts");
        if (j.size() != 10 || !is_str(f("reason"), n.reason) || !at.is_array() || at.size() != n.attempts.size())
            return false;
        for (std::size_t i = 0; i < n.attempts.size(); ++i) {
            const auto& a = n.attempts[i];
            const auto& e = at[i];
            if (!e.is_object() || e.size() != 5 || !is_str(field(e, "y"), a.y) ||
                !is_str(field(e, "failure"), a.failure) || !is_str(field(e, "detail"), a.detail) ||
                !is_polys(field(e, "split_gb"), a.split_gb) || !child_matches(a.child, field(e, "child"), memo))
                return false;
        }
        return true;
    }
    if (n.kind != GVDNode::Case::Decompose) return j.size() == 8;
    const auto& ht = f("heights");
    const auto& dl = f("depth_lemma");
    bool depth_ok = false;
    if (!n.depth_scalars) {
        depth_ok = dl.is_null();
    } else {
        depth_ok = dl.is_object() && dl.size() == 3 && field(dl, "scalars") == scalars(*n.depth_scalars) &&
                   is_str(field(dl, "u"), n.depth_u->to_string()) && is_str(field(dl, "v"), n.depth_v->to_string());
    }
    return j.size() == 26 && depth_ok && is_str(f("y"), n.y) && is_names(f("tried"), n.tried()) &&
           is_polys(f("split_gb"), n.split_gb) && is_polys(f("in_y"), n.in_y) && is_polys(f("C"), n.C) &&
           is_polys(f("N"), n.N) && is_str(f("degeneracy"), to_string(n.degeneracy)) &&
           is_str(f("degeneracy_rule"), n.degeneracy_rule) &&
           (n.nondegeneracy_witness ? is_str(f("nondegeneracy_witness"), n.nondegeneracy_witness->to_string())
                                    : f("nondegeneracy_witness").is_null()) &&
           ht.is_object() && ht.size() == 3 &&
           is_int(field(ht, "I"), n.ht_I) && is_int(field(ht, "C"), n.ht_C) && is_int(field(ht, "N"), n.ht_N) &&
           (n.nonpure ? is_str(f("nonpure"), to_string(*n.nonpure)) : f("nonpure").is_null()) &&
           child_matches(n.c_branch, f("c_branch"), memo) && child_matches(n.n_branch, f("n_branch"), memo) &&
           is_evidence(f("n_radical"), n.n_radical) && is_evidence(f("n_cm"), n.n_cm) &&
           is_vd(f("n_vd"), n.n_vd) && is_vd(f("vd"), n.vd);
}

}  // namespace detail

inline Json node(const GVDNode& n) {
    detail::NodeMemo memo;
    return detail::node(n, memo);
}

/// True when `j` is the serialization of `n`.
inline bool node_matches(const GVDNode& n, const Json& j) {
    detail::MatchMemo memo;
    return detail::node_matches(n, j, memo);
}

inline Json gvd_result(const GVDResult& r, const Json* rec = nullptr) {
    const Json* root = sub(rec, "root");
    return {{"certified", r.certified},
            {"conditional", r.conditional},
            {"variant", to_string(r.options.variant)},
            {"unmixed_mode", to_string(r.options.unmixed)},
            {"root", root && node_matches(*r.root, *root) ? *root : node(*r.root)}};
}

inline Json witness_checks(const WitnessChecks& c) {
    return {{"containment", c.containment}, {"u_regular", c.u_regular}, {"v_regular", c.v_regular},
            {"identity", c.identity},       {"graded", c.graded},       {"heights", c.heights},
            {"saturated", c.saturated},     {"note", c.note}};
}

inline Json witness(const BiliaisonWitness& w) {
    return {{"y", w.y},
            {"scalars", scalars(w.scalars)},
            {"u", w.u.to_string()},
            {"v", w.v.to_string()},
            {"q", polys(w.q)},
            {"g", polys(w.g)},
            {"C", polys(w.C_gens)},
            {"N", polys(w.N_gens)},
            {"degree_shift", w.degree_shift ? Json(*w.degree_shift) : Json(nullptr)},
            {"strategy", w.strategy},
            {"seed", w.seed},
            {"attempts", w.attempts},
            {"checks", witness_checks(w.checks)}};
}

inline Json chain(const GlicciChain& c, const Json* rec = nullptr) {
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        steps.push_back({{"kind", to_string(s.kind)},
                         {"context", s.context},
                         {"ideal", polys(s.ideal)},
                         {"y", s.y},
                         {"witness", s.witness ? witness(*s.witness) : Json(nullptr)},
                         {"C", polys(s.C)},
                         {"N", polys(s.N)},
                         {"n_cm", evidence(s.n_cm)},
                         {"n_g0", evidence(s.n_g0)},
                         {"next", polys(s.next)},
                         {"note", s.note}});
    }
    return {{"variant", to_string(c.variant)},
            {"steps", steps},
            {"terminal", {{"ring", c.terminal_ring->ctx.names()}, {"gens", polys(c.terminal)}, {"kind", c.terminal_kind}}},
            {"length", c.length},
            {"conditional", c.conditional},
            {"gvd", gvd_result(c.certificate, sub(rec, "gvd"))}};
}

inline Json groebner(const GroebnerCertificate& g, const std::vector<Polynomial>& C_gens,
                     const std::vector<Polynomial>& N_gens, const Json* rec = nullptr) {
    return {{"y", g.ring->ctx.name(g.y)},
            {"order", order_names(g.ring)},
            {"q", polys(g.q)},
            {"r", polys(g.r)},
            {"h", polys(g.h)},
            {"C", polys(C_gens)},
            {"N", polys(N_gens)},
            {"verified", g.verified},
            {"n_unmixed", evidence(g.n_unmixed)},
            {"n_vd", optional_vd(g.n_vd, sub(rec, "n_vd"))},
            {"initial", polys(g.initial)},
            {"buchberger_agrees", g.buchberger_agrees},
            {"input_reduced", g.input_reduced}};
}

inline Json order_compatible(const OrderCompatibleResult& r, const Json* rec = nullptr) {
    return {{"order", r.order},
            {"certified", r.certified},
            {"conditional", r.conditional},
            {"recursion", gvd_result(r.recursion, sub(rec, "recursion"))},
            {"initial_squarefree", r.initial_squarefree},
            {"initial_ideal", polys(r.initial_ideal)},
            {"strategy_b", r.strategy_b},
            {"complex_vd", optional_vd(r.complex_vd, sub(rec, "complex_vd"))}};
}

inline Json split(const CNSplit& s) {
    return {{"y", s.y_name},
            {"split_gb", polys(s.gb->elements)},
            {"squarefree", s.squarefree},
            {"in_y", polys(s.in_y.gens())},
            {"C", polys(s.C.gens())},
            {"N", polys(s.N.gens())}};
}

/// Every evidence tag appearing anywhere below `j`.
inline void collect_tags(const Json& j, std::set<std::string>& out) {
    if (j.is_object()) {
        auto t = j.find("tag");
        if (t != j.end() && t->is_string() && j.contains("rule")) out.insert(t->get<std::string>());
        for (const auto& [k, v] : j.items()) collect_tags(v, out);
    } else if (j.is_array()) {
        for (const auto& v : j) collect_tags(v, out);
    }
}

inline std::string status_name(int exit_code) {
    switch (exit_code) {
        case 0: return "certified";
        case 1: return "refuted";
        case 2: return "conditional";
    }
    return "error";
}

/// The certificate envelope around a command's result.
inline Json envelope(const std::string& command, Json inputs, Json options, std::uint64_t seed, Json result,
                     int exit_code) {
    std::set<std::string> tags;
    collect_tags(result, tags);
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"inputs", std::move(inputs)},
            {"options", std::move(options)},
            {"seed", seed},
            {"result", std::move(result)},
            {"evidence_tags", tags},
            {"exit_code", exit_code},
            {"status", status_name(exit_code)}};
}

}  // namespace cert

}  // namespace gvdkit
