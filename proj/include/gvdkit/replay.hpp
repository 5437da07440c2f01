#pragma once

#include <map>
#include <string>
#include <vector>

#include "gvdkit/certificate.hpp"

namespace gvdkit {

class ReplayMismatch : public Error {
public:
    explicit ReplayMismatch(const std::string& what) : Error("replay mismatch: " + what) {}
};

namespace replay {

/// Counts verified facts; any failed expectation aborts the replay.
struct Session {
    std::size_t checks = 0;

    void expect(bool ok, const std::string& what) {
        if (!ok) throw ReplayMismatch(what);
        ++checks;
    }
};

/// First path at which two documents differ, or empty.
inline std::string first_difference(const Json& a, const Json& b, const std::string& path = "") {
    if (a.is_number() && b.is_number()) return a == b ? "" : (path.empty() ? "/" : path);
    if (a.type() != b.type()) return path.empty() ? "/" : path;
    if (a.is_object()) {
        for (const auto& [k, v] : a.items()) {
            if (!b.contains(k)) return path + "/" + k;
            auto d = first_difference(v, b.at(k), path + "/" + k);
            if (!d.empty()) return d;
        }
        for (const auto& [k, v] : b.items())
            if (!a.contains(k)) return path + "/" + k;
        return "";
    }
    if (a.is_array()) {
        if (a.size() != b.size()) return path + "[size]";
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto d = first_difference(a[i], b[i], path + "/" + std::to_string(i));
            if (!d.empty()) return d;
        }
        return "";
    }
    return a == b ? "" : (path.empty() ? "/" : path);
}

inline void expect_same(Session& s, const Json& rebuilt, const Json& recorded, const std::string& what) {
    if (rebuilt == recorded) return s.expect(true, what);
    auto d = first_difference(rebuilt, recorded);
    if (d.empty()) return s.expect(true, what);
    const auto ptr = Json::json_pointer(d == "/" ? "" : d.substr(0, d.find("[size]")));
    auto show = [&](const Json& j) { return j.contains(ptr) ? j.at(ptr).dump().substr(0, 200) : std::string("(absent)"); };
    s.expect(false, what + " differs at " + d + ": rebuilt " + show(rebuilt) + ", recorded " + show(recorded));
}

inline FieldSpec field_from(const std::string& f) { return parse_field(f, 1, 1); }

inline RingPtr ring_from(const Json& j) {
    VarContext ctx(j.at("ring").get<std::vector<std::string>>());
    return make_ring(field_from(j.at("field").get<std::string>()), ctx,
                     order_from_names(ctx, j.at("order").get<std::vector<std::string>>()));
}

inline std::vector<Polynomial> polys_from(const Json& a, const RingPtr& r) {
    std::vector<Polynomial> out;
    for (const auto& p : a) out.push_back(parse_polynomial(r, p.get<std::string>()));
    return out;
}

inline Ideal ideal_from(const Json& inputs) {
    auto R = ring_from(inputs);
    return Ideal(R, polys_from(inputs.at("gens"), R));
}

inline std::vector<FieldElement> scalars_from(const Json& a, const FieldSpec& f) {
    auto R = make_ring(f, std::vector<std::string>{"t"});
    std::vector<FieldElement> out;
    for (const auto& x : a) {
        auto c = parse_polynomial(R, x.get<std::string>());
        out.push_back(c.is_zero() ? FieldElement::zero(f) : c.leading_coeff());
    }
    return out;
}

inline std::optional<Evidence> evidence_from(const Json& j) {
    if (j.is_null()) return std::nullopt;
    const auto t = j.at("tag").get<std::string>();
    Evidence e;
    e.rule = j.at("rule").get<std::string>();
    if (t == "Exact") e.tag = EvidenceTag::Exact;
    else if (t == "SufficientViaVD") e.tag = EvidenceTag::SufficientViaVD;
    else if (t == "Assumed") e.tag = EvidenceTag::Assumed;
    else throw ReplayMismatch("unknown evidence tag " + t);
    return e;
}

inline Variant variant_from(const std::string& v) {
    for (auto x : {Variant::Full, Variant::Weak, Variant::OrderCompatible, Variant::Nonpure})
        if (to_string(x) == v) return x;
    throw ReplayMismatch("unknown variant " + v);
}

inline UnmixedMode mode_from(const std::string& v) {
    for (auto x : {UnmixedMode::Assume, UnmixedMode::Monomial, UnmixedMode::Certify})
        if (to_string(x) == v) return x;
    throw ReplayMismatch("unknown unmixed mode " + v);
}

inline VDMode vd_mode_from(const std::string& v) {
    for (auto x : {VDMode::Pure, VDMode::Nonpure, VDMode::OrderCompatible})
        if (to_string(x) == v) return x;
    throw ReplayMismatch("unknown complex mode " + v);
}

/// The recorded basis is the reduced GB of J under J's order with y greatest: it is reduced, lies in J, and
/// generates J (J's basis under its own order is already trusted). Seeds J's memo with it.
inline std::shared_ptr<const ReducedGB> verified_split_gb(Session& s, const Ideal& J, std::size_t y, const Json& recorded) {
    const auto ord = J.ring()->order.with_greatest(y);
    if (ord == J.ring()->order || J.has_cached_gb(ord)) {
        auto G = J.gb(ord);
        s.expect(cert::polys(G->elements) == recorded, "split basis for " + J.ctx().name(y));
        return G;
    }
    auto R = with_order(J.ring(), ord);
    auto G = polys_from(recorded, R);
    const auto base = J.gb();
    s.expect(is_reduced_groebner_basis(G, R), "recorded basis with " + J.ctx().name(y) + " greatest is a reduced GB");
    for (const auto& g : G) s.expect(normal_form_in(g.in_ring(base->ring), base->elements, base->ring).is_zero(), "split basis lies in the ideal");
    for (const auto& g : base->elements) s.expect(normal_form_in(g.in_ring(R), G, R).is_zero(), "split basis generates the ideal");
    auto out = detail::make_gb(R, std::move(G));
    J.seed_gb(out);
    return out;
}

/// in_y I = N + yC, which equals C ∩ (N + <y>) since y is regular modulo C: the in_y forms are a GB and every y·c
/// reduces to zero by them.
inline void check_decomposition_identity(Session& s, const CNSplit& sp) {
    const auto& R = sp.split_ring;
    const auto iny = sp.in_y.gens();
    s.expect(is_groebner_basis(iny, R), "in_y forms are a Groebner basis");
    auto yv = Polynomial::variable(R, sp.y);
    for (const auto& c : sp.C.gens()) s.expect(normal_form_in(yv * c, iny, R).is_zero(), "y*C lies in in_y I");
}

inline Ideal initial_of(const Ideal& J) { return leading_ideal(*J.gb(), J.ring()); }

class VDReplayer {
public:
    VDReplayer(Session& s, VDMode mode, std::vector<std::size_t> order) : s_(s), mode_(mode), order_(std::move(order)) {}

    std::shared_ptr<const VDNode> node(const SimplicialComplex& d, const Json& rec) {
        auto n = std::make_shared<VDNode>();
        n->facets = d.facets();
        const auto c = rec.at("case").get<std::string>();
        const bool pure_needed = mode_ != VDMode::Nonpure;
        if (c == "void") {
            s_.expect(d.is_void(), "void complex");
            n->kind = VDNode::Case::Void;
        } else if (c == "empty") {
            s_.expect(d.is_empty_face(), "complex {∅}");
            n->kind = VDNode::Case::Empty;
        } else if (c == "simplex") {
            s_.expect(d.is_simplex() && !d.is_empty_face(), "simplex");
            n->kind = VDNode::Case::Simplex;
        } else if (c == "shed") {
            const auto v = d.vertex_index(rec.at("vertex").get<std::string>());
            s_.expect(d.face_vertices() >> v & 1, "shed vertex lies in a face");
            s_.expect(!pure_needed || d.is_pure(), "pure at a shedding step");
            s_.expect(!d.is_void() && !d.is_simplex(), "shed complex is not a base case");
            if (mode_ == VDMode::OrderCompatible) s_.expect(v == first_present(d), "order-compatible vertex");
            auto parts = star_link_del(d, v);
            if (mode_ == VDMode::Nonpure) s_.expect(is_shedding_vertex(d, v), "shedding vertex");
            n->kind = VDNode::Case::Shed;
            n->vertex = v;
            n->link = node(parts.link, rec.at("link"));
            n->del = node(parts.del, rec.at("del"));
            s_.expect(n->link->kind != VDNode::Case::Refuted && n->del->kind != VDNode::Case::Refuted, "decomposable link and deletion");
        } else if (c == "refuted") {
            refuted(d, rec, *n);
        } else {
            throw ReplayMismatch("unknown complex node " + c);
        }
        return n;
    }

private:
    Session& s_;
    VDMode mode_;
    std::vector<std::size_t> order_;

    std::size_t first_present(const SimplicialComplex& d) const {
        for (auto v : order_)
            if (d.face_vertices() >> v & 1) return v;
        return d.nverts();
    }

    void refuted(const SimplicialComplex& d, const Json& rec, VDNode& n) {
        n.kind = VDNode::Case::Refuted;
        if (rec.at("reason") == "not pure") {
            s_.expect(mode_ != VDMode::Nonpure && !d.is_pure(), "complex is not pure");
            n.reason = "not pure";
            return;
        }
        s_.expect(!d.is_void() && !d.is_simplex(), "refuted complex is not a base case");
        s_.expect(mode_ == VDMode::Nonpure || d.is_pure(), "refuted complex is pure");
        std::vector<std::size_t> expected;
        for (auto v : order_)
            if (d.face_vertices() >> v & 1) {
                expected.push_back(v);
                if (mode_ == VDMode::OrderCompatible) break;
            }
        const auto& at = rec.at("attempts");
        s_.expect(at.size() == expected.size(), "every vertex tried");
        std::string tried;
        for (std::size_t i = 0; i < at.size(); ++i) {
            const auto& a = at[i];
            const auto v = d.vertex_index(a.at("vertex").get<std::string>());
            s_.expect(v == expected[i], "vertex attempt order");
            VDAttempt out{v, a.at("failure").get<std::string>(), "", nullptr};
            auto parts = star_link_del(d, v);
            const auto& del = parts.del.facets();
            std::optional<FaceMask> shared;
            if (mode_ == VDMode::Nonpure)
                for (auto f : parts.link.facets())
                    if (std::find(del.begin(), del.end(), f) != del.end()) {
                        shared = f;
                        break;
                    }
            if (out.failure == "link-facet-in-deletion") {
                s_.expect(shared.has_value(), "not a shedding vertex");
                out.detail = "link facet " + d.face_string(*shared) + " is a deletion facet";
            } else if (out.failure == "link" || out.failure == "deletion") {
                out.child = node(out.failure == "link" ? parts.link : parts.del, a.at("child"));
                s_.expect(out.child->kind == VDNode::Case::Refuted, out.failure + " is not decomposable");
                out.detail = out.failure == "link" ? "link not decomposable" : "deletion not decomposable";
            } else {
                throw ReplayMismatch("unknown vertex failure " + out.failure);
            }
            tried += (tried.empty() ? "" : "; ") + d.vertices()[v] + ": " + out.detail;
            n.attempts.push_back(std::move(out));
        }
        n.reason = tried.empty() ? "no vertex" : tried;
    }
};

inline VDResult replay_vd(Session& s, const SimplicialComplex& d, const Json& rec) {
    VDResult r;
    r.mode = vd_mode_from(rec.at("mode").get<std::string>());
    r.vertices = d.vertices();
    for (const auto& v : rec.at("order")) r.order.push_back(d.vertex_index(v.get<std::string>()));
    s.expect(r.order.size() == d.nverts(), "vertex order lists every vertex");
    VDReplayer vr(s, r.mode, r.order);
    r.root = vr.node(d, rec.at("tree"));
    r.decomposable = r.root->kind != VDNode::Case::Refuted;
    return r;
}

/// Rebuilds a GVD tree from verified computations, following the recorded variable choices; the caller
/// compares the rebuilt tree's serialization with the recorded one.
class GVDReplayer {
public:
    GVDReplayer(Session& s, Variant v, UnmixedMode m) : s_(s), variant_(v), mode_(m) {}

    GVDNodePtr node(const Ideal& J, const Json& rec) {
        auto key = detail::memo_key(J);
        auto it = memo_.find(key);
        if (it != memo_.end() && *it->second.first == rec) return it->second.second;
        auto n = std::make_shared<GVDNode>();
        n->ring = J.ring();
        n->gb = J.gb()->elements;
        s_.expect(cert::polys(n->gb) == rec.at("gb"), "node basis");
        s_.expect(J.ctx().names() == rec.at("ring").get<std::vector<std::string>>(), "node variables");
        const auto c = rec.at("case").get<std::string>();
        if (c == "unit" || c == "indeterminates") {
            base(J, c, *n);
        } else if (c == "decompose") {
            decompose(J, rec, *n);
        } else if (c == "refuted") {
            refuted(J, rec, *n);
        } else {
            throw ReplayMismatch("unknown node case " + c);
        }
        GVDNodePtr out = n;
        memo_[key] = {&rec, out};
        return out;
    }

    /// The CNSplit verified at each decompose node, by node basis.
    const CNSplit* split_at(const GVDNode& n) const {
        auto it = splits_.find(&n);
        return it == splits_.end() ? nullptr : &it->second;
    }

    /// Verify a recorded unmixedness claim about J; `vd` is the recorded tree for rules that rest on one.
    void unmixed_claim(const Ideal& J, const Evidence& e, const Json& vd, std::optional<VDResult>& vd_out) {
        check_unmixed_rule(J, e, vd, vd_out);
    }

    std::optional<BiliaisonWitness> depth_witness(const GVDNode& n) const {
        auto it = depth_.find(&n);
        if (it == depth_.end()) return std::nullopt;
        return it->second;
    }

private:
    Session& s_;
    Variant variant_;
    UnmixedMode mode_;
    std::map<std::string, std::pair<const Json*, GVDNodePtr>> memo_;
    std::map<const GVDNode*, CNSplit> splits_;
    std::map<const GVDNode*, BiliaisonWitness> depth_;

    bool need_unmixed() const { return detail::requires_unmixed(variant_); }

    void base(const Ideal& J, const std::string& c, GVDNode& n) {
        const auto G = J.gb();
        std::string rule;
        if (c == "unit") {
            s_.expect(G->is_unit(), "unit ideal");
            n.kind = GVDNode::Case::Unit;
            rule = "unit";
        } else {
            s_.expect(!G->is_unit() && J.indeterminates().has_value(), "generated by indeterminates");
            n.kind = GVDNode::Case::Indeterminates;
            rule = G->is_zero() ? "zero" : "indeterminates";
        }
        n.cm = true;
        n.cm_rule = rule;
        if (need_unmixed()) n.unmixed = Evidence{EvidenceTag::Exact, rule};
    }

    std::size_t var(const Ideal& J, const Json& name) {
        auto i = J.ctx().index_of(name.get<std::string>());
        s_.expect(i.has_value(), "variable " + name.get<std::string>() + " exists");
        return *i;
    }

    bool monomial(const Ideal& J) const { return detail::all_monomial(J.gb()->elements); }

    // ---- evidence claims; a false claim needs no proof

    std::optional<VDResult> replay_initial_vd(const Ideal& J, const Json& rec) {
        s_.expect(!rec.is_null(), "decomposition of the initial complex recorded");
        s_.expect(all_squarefree_leads(J.gb()->elements), "squarefree initial ideal");
        auto delta = complex_of(initial_of(J));
        auto r = replay_vd(s_, delta, rec);
        s_.expect(r.mode == VDMode::Pure && r.decomposable, "initial complex vertex decomposable");
        return r;
    }

    void check_initial_reisner(const Ideal& J) {
        s_.expect(all_squarefree_leads(J.gb()->elements), "squarefree initial ideal");
        auto delta = complex_of(initial_of(J));
        s_.expect(!delta.is_void() && reisner_cm(delta, J.ring()->field), "initial complex Cohen-Macaulay");
    }

    /// CM claim under a rule the intrinsic facts produce.
    void check_cm_rule(const Ideal& J, const std::string& rule, const Json& vd, std::optional<VDResult>& vd_out) {
        const auto G = J.gb();
        if (rule == "hypersurface") {
            s_.expect(G->elements.size() == 1 && !G->is_unit(), "principal ideal");
        } else if (rule == "reisner") {
            s_.expect(monomial(J) && all_squarefree_leads(G->elements), "squarefree monomial ideal");
            s_.expect(reisner_cm(complex_of(J), J.ring()->field), "Reisner criterion");
        } else if (rule == "squarefree-initial-vd") {
            if (!vd_out) vd_out = replay_initial_vd(J, vd);
        } else if (rule == "squarefree-initial-reisner") {
            check_initial_reisner(J);
        } else if (rule == "unit" || rule == "indeterminates") {
            s_.expect(G->is_unit() || J.indeterminates().has_value(), "trivial ideal");
        } else {
            throw ReplayMismatch("unknown CM rule " + rule);
        }
    }

    void check_unmixed_rule(const Ideal& J, const Evidence& e, const Json& vd, std::optional<VDResult>& vd_out) {
        const auto& r = e.rule;
        if (r == "unit") {
            s_.expect(e.tag == EvidenceTag::Exact && J.gb()->is_unit(), "unit ideal");
        } else if (r == "zero") {
            s_.expect(e.tag == EvidenceTag::Exact && J.gb()->is_zero(), "zero ideal");
        } else if (r == "indeterminates") {
            s_.expect(e.tag == EvidenceTag::Exact && !J.gb()->is_unit() && J.indeterminates().has_value(),
                      "generated by indeterminates");
        } else if (r == "monomial-associated-primes") {
            s_.expect(e.tag == EvidenceTag::Exact && monomial(J) && monomial_unmixed(J), "monomial ideal unmixed");
        } else if (r == "principal") {
            s_.expect(e.tag == EvidenceTag::Exact && J.gb()->elements.size() == 1, "principal ideal");
        } else if (r == "squarefree-initial-vd") {
            s_.expect(e.tag == EvidenceTag::SufficientViaVD, "vd evidence tag");
            if (!vd_out) vd_out = replay_initial_vd(J, vd);
        } else if (r == "squarefree-initial-reisner") {
            s_.expect(e.tag == EvidenceTag::SufficientViaVD, "reisner evidence tag");
            check_initial_reisner(J);
        } else if (r == "assume-mode") {
            s_.expect(e.tag == EvidenceTag::Assumed && mode_ == UnmixedMode::Assume, "assume mode");
        } else if (r == "no-certificate") {
            s_.expect(e.tag == EvidenceTag::Assumed, "missing evidence is Assumed");
        } else {
            throw ReplayMismatch("unknown unmixedness rule " + r);
        }
    }

    void check_radical_rule(const Ideal& J, const Evidence& e) {
        const auto G = J.gb();
        const auto& r = e.rule;
        if (e.tag == EvidenceTag::Assumed) {
            s_.expect(r == "no-certificate", "missing evidence is Assumed");
        } else if (r == "unit" || r == "indeterminates") {
            s_.expect(G->is_unit() || J.indeterminates().has_value(), "trivial ideal");
        } else if (r == "monomial") {
            s_.expect(monomial(J) && all_squarefree_leads(G->elements), "squarefree monomial ideal");
        } else if (r == "squarefree-generator") {
            s_.expect(G->elements.size() == 1 && squarefree_polynomial(G->elements[0]).value_or(false), "squarefree generator");
        } else if (r == "squarefree-initial") {
            s_.expect(all_squarefree_leads(G->elements), "squarefree initial ideal");
        } else {
            throw ReplayMismatch("unknown radical rule " + r);
        }
        s_.expect(e.tag == (r == "squarefree-initial" ? EvidenceTag::SufficientViaVD : EvidenceTag::Exact) ||
                      e.tag == EvidenceTag::Assumed,
                  "radical evidence tag");
    }

    /// N fails the weak-variant evidence, by an exact computation.
    void check_n_refutation(const Ideal& N, const std::string& why) {
        const auto G = N.gb();
        if (why == "N is not radical") {
            const bool mono = monomial(N) && !all_squarefree_leads(G->elements);
            const bool principal = G->elements.size() == 1 && squarefree_polynomial(G->elements[0]) == false;
            s_.expect(mono || principal, "N is not radical");
        } else if (why == "N is not Cohen-Macaulay") {
            s_.expect(all_squarefree_leads(G->elements), "N has a squarefree initial ideal");
            auto delta = monomial(N) ? complex_of(N) : complex_of(initial_of(N));
            s_.expect(!reisner_cm(delta, N.ring()->field), "N is not Cohen-Macaulay");
        } else {
            throw ReplayMismatch("unknown N refutation " + why);
        }
    }

    // ---- nodes

    void decompose(const Ideal& J, const Json& rec, GVDNode& n) {
        n.kind = GVDNode::Case::Decompose;
        const auto y = var(J, rec.at("y"));
        n.y = J.ctx().name(y);
        if (variant_ == Variant::OrderCompatible) s_.expect(y == J.ring()->order.greatest(), "order-compatible y is greatest");
        auto sp = split_from_gb(J, y, verified_split_gb(s_, J, y, rec.at("split_gb")));
        s_.expect(sp.squarefree, "squarefree in " + n.y);
        check_decomposition_identity(s_, sp);
        n.split_gb = sp.gb->elements;
        n.in_y = sp.in_y.gens();
        n.C = sp.Cc.gens();
        n.N = sp.Nc.gens();
        auto deg = classify_degeneracy(sp);
        n.degeneracy = deg.kind;
        n.degeneracy_rule = deg.rule;
        n.nondegeneracy_witness = deg.witness;
        n.ht_I = height(J);
        n.ht_C = deg.ht_C;
        n.ht_N = deg.ht_N;
        s_.expect(!(deg.kind == Degeneracy::EqualRadicals && detail::involves(sp.gb->elements, y)), "radical at equal radicals");
        if (deg.kind == Degeneracy::Nondegenerate && need_unmixed())
            s_.expect(n.ht_C == n.ht_I && n.ht_I == n.ht_N + 1, "height lemma");
        if (variant_ == Variant::Nonpure) {
            auto np = nonpure_gvd_check(sp, false);
            s_.expect(np.holds, "nonpure condition");
            n.nonpure = np.kind;
        }
        const bool weak = variant_ == Variant::Weak;
        if (weak && deg.kind != Degeneracy::Nondegenerate) {
            n.n_branch = node(sp.Nc, rec.at("n_branch"));
            s_.expect(n.n_branch->ok(), "N-branch decomposes");
        } else {
            n.c_branch = node(sp.Cc, rec.at("c_branch"));
            s_.expect(n.c_branch->ok(), "C-branch decomposes");
            if (weak) {
                n.n_radical = evidence_from(rec.at("n_radical"));
                n.n_cm = evidence_from(rec.at("n_cm"));
                s_.expect(n.n_radical && n.n_cm, "N evidence recorded");
                check_radical_rule(sp.Nc, *n.n_radical);
                if (n.n_cm->tag != EvidenceTag::Assumed) {
                    check_cm_rule(sp.Nc, n.n_cm->rule, rec.at("n_vd"), n.n_vd);
                    const auto& r = n.n_cm->rule;
                    const bool exact = r == "hypersurface" || r == "reisner" || r == "unit" || r == "indeterminates";
                    s_.expect(n.n_cm->tag == (exact ? EvidenceTag::Exact : EvidenceTag::SufficientViaVD), "N CM evidence tag");
                } else {
                    s_.expect(n.n_cm->rule == "no-certificate", "missing evidence is Assumed");
                }
            } else {
                n.n_branch = node(sp.Nc, rec.at("n_branch"));
                s_.expect(n.n_branch->ok(), "N-branch decomposes");
            }
        }
        evidence(J, sp, deg, rec, n);
        n.conditional = (n.unmixed && n.unmixed->tag == EvidenceTag::Assumed) ||
                        (n.n_radical && n.n_radical->tag == EvidenceTag::Assumed) ||
                        (n.n_cm && n.n_cm->tag == EvidenceTag::Assumed) || (n.c_branch && n.c_branch->conditional) ||
                        (n.n_branch && n.n_branch->conditional);
        // the search record of variables skipped before y is informational
        for (const auto& t : rec.at("tried")) {
            auto s = t.get<std::string>();
            auto colon = s.find(": ");
            n.attempts.push_back({s.substr(0, colon), "", colon == std::string::npos ? "" : s.substr(colon + 2), {}, nullptr});
        }
        splits_.emplace(&n, sp);
    }

    void evidence(const Ideal& J, const CNSplit& sp, const DegeneracyReport& deg, const Json& rec, GVDNode& n) {
        n.cm = rec.at("cm").get<bool>();
        n.cm_rule = rec.at("cm_rule").get<std::string>();
        auto un = evidence_from(rec.at("unmixed"));
        s_.expect(un.has_value() == need_unmixed(), "unmixedness evidence present iff required");
        const auto& depth = rec.at("depth_lemma");
        if (!depth.is_null()) {
            s_.expect(deg.kind == Degeneracy::Nondegenerate && J.gens_homogeneous(), "depth lemma at a homogeneous nondegenerate split");
            const bool c_cm = n.c_branch && n.c_branch->cm;
            const bool n_cm = n.n_branch ? n.n_branch->cm : (n.n_cm && n.n_cm->tag != EvidenceTag::Assumed);
            s_.expect(c_cm && n_cm, "C and N Cohen-Macaulay for the depth lemma");
            auto a = scalars_from(depth.at("scalars"), J.ring()->field);
            auto w = replay_witness(sp, a);
            s_.expect(w.checks.all(), "depth lemma witness checks");
            n.depth_scalars = a;
            n.depth_u = w.u;
            n.depth_v = w.v;
            depth_.emplace(&n, w);
        }
        auto transfer = [&](const std::string& rule, const std::string& want) {
            s_.expect(deg.kind != Degeneracy::Nondegenerate && n.n_branch, "transfer from N at a degenerate split");
            s_.expect(rule == "transfer-from-N:" + want, "transferred rule");
        };
        if (n.cm) {
            if (n.cm_rule == "depth-lemma") {
                s_.expect(n.depth_scalars.has_value(), "depth lemma recorded");
            } else if (n.cm_rule.starts_with("transfer-from-N:")) {
                transfer(n.cm_rule, n.n_branch ? n.n_branch->cm_rule : "");
                s_.expect(n.n_branch->cm, "N is Cohen-Macaulay");
            } else {
                check_cm_rule(J, n.cm_rule, rec.at("vd"), n.vd);
            }
        }
        if (un) {
            if (un->rule == "depth-lemma") {
                s_.expect(un->tag == EvidenceTag::SufficientViaVD && n.depth_scalars.has_value(), "depth lemma recorded");
            } else if (un->rule.starts_with("transfer-from-N:")) {
                s_.expect(n.n_branch && n.n_branch->unmixed, "N-branch unmixedness");
                transfer(un->rule, n.n_branch->unmixed->rule);
                s_.expect(un->tag == n.n_branch->unmixed->tag, "transferred tag");
            } else {
                check_unmixed_rule(J, *un, rec.at("vd"), n.vd);
            }
            n.unmixed = un;
        }
    }

    void refuted(const Ideal& J, const Json& rec, GVDNode& n) {
        n.kind = GVDNode::Case::Refuted;
        const auto G = J.gb();
        s_.expect(!G->is_unit() && !J.indeterminates(), "refuted ideal is not a base case");
        const auto& at = rec.at("attempts");
        if (at.empty() && rec.at("reason").get<std::string>().starts_with("not unmixed (")) {
            s_.expect(need_unmixed() && monomial(J) && !monomial_unmixed(J), "monomial ideal is mixed");
            n.reason = "not unmixed (monomial-associated-primes)";
            return;
        }
        std::vector<std::size_t> expected;
        if (variant_ == Variant::OrderCompatible) {
            expected.push_back(J.ring()->order.greatest());
        } else {
            expected = J.ring()->order.ranking();
        }
        const bool height_stop = !at.empty() && at.back().at("failure") == "heights";
        if (height_stop) {
            s_.expect(at.size() <= expected.size(), "attempts within the candidates");
        } else {
            s_.expect(at.size() == expected.size(), "every variable tried");
        }
        for (std::size_t i = 0; i < at.size(); ++i) {
            const auto y = var(J, at[i].at("y"));
            s_.expect(y == expected[i], "variable attempt order");
            n.attempts.push_back(attempt(J, y, at[i]));
        }
        if (height_stop) {
            n.reason = "not unmixed (height lemma fails at " + n.attempts.back().y + ")";
        } else {
            n.reason = n.attempts.empty() ? "no variable to shed" : "every variable refuted";
        }
    }

    GVDAttempt attempt(const Ideal& J, std::size_t y, const Json& a) {
        GVDAttempt out;
        out.y = J.ctx().name(y);
        out.failure = a.at("failure").get<std::string>();
        auto sp = split_from_gb(J, y, verified_split_gb(s_, J, y, a.at("split_gb")));
        out.split_gb = sp.gb->elements;
        const auto& f = out.failure;
        if (f == "not-squarefree") {
            s_.expect(!sp.squarefree, "not squarefree in " + out.y);
            out.detail = "not squarefree in " + out.y;
            return out;
        }
        s_.expect(sp.squarefree, "squarefree in " + out.y);
        if (f == "decomposition-fails") {
            auto v = verify_gvd(sp);
            s_.expect(!v.holds || !v.saturation_matches || !v.sum_matches, "decomposition fails");
            out.detail = "decomposition equality fails";
            return out;
        }
        auto deg = classify_degeneracy(sp);
        const bool weak = variant_ == Variant::Weak;
        if (f == "not-radical") {
            s_.expect(deg.kind == Degeneracy::EqualRadicals && detail::involves(sp.gb->elements, y), "equal radicals, y in the basis");
            out.detail = "equal radicals with " + out.y + " in the Groebner basis, so not radical";
        } else if (f == "heights") {
            const auto hI = height(J);
            s_.expect(need_unmixed() && deg.kind == Degeneracy::Nondegenerate && (deg.ht_C != hI || hI != deg.ht_N + 1),
                      "height lemma fails");
            out.detail = "heights C=" + std::to_string(deg.ht_C) + " I=" + std::to_string(hI) + " N=" +
                         std::to_string(deg.ht_N);
        } else if (f == "nonpure") {
            auto np = nonpure_gvd_check(sp, false);
            s_.expect(variant_ == Variant::Nonpure && !np.holds, "nonpure condition fails");
            out.detail = np.reason;
        } else if (f == "c-branch") {
            if (weak) s_.expect(deg.kind == Degeneracy::Nondegenerate, "C-branch needed");
            out.child = node(sp.Cc, a.at("child"));
            s_.expect(!out.child->ok(), "C-branch refuted");
            out.detail = "C-branch refuted";
        } else if (f == "n-branch") {
            if (weak) s_.expect(deg.kind != Degeneracy::Nondegenerate, "N-branch needed");
            out.child = node(sp.Nc, a.at("child"));
            s_.expect(!out.child->ok(), "N-branch refuted");
            out.detail = "N-branch refuted";
        } else if (f == "n-evidence") {
            s_.expect(weak && deg.kind == Degeneracy::Nondegenerate, "N evidence needed");
            out.detail = a.at("detail").get<std::string>();
            check_n_refutation(sp.Nc, out.detail);
        } else {
            throw ReplayMismatch("unknown failure " + f);
        }
        return out;
    }
};

inline GVDResult replay_gvd(Session& s, const Ideal& J, const Json& rec, GVDReplayer& r) {
    GVDResult out;
    out.options.variant = variant_from(rec.at("variant").get<std::string>());
    out.options.unmixed = mode_from(rec.at("unmixed_mode").get<std::string>());
    out.root = r.node(J, rec.at("root"));
    out.certified = out.root->ok();
    out.conditional = out.certified && out.root->conditional;
    return out;
}

}  // namespace replay

}  // namespace gvdkit
