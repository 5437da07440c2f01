#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gvdkit/gvd_search.hpp"

namespace gvdkit {

// ---------------------------------------------------------------------------
// Gröbner certification from a GVD shape

struct GroebnerCertificate {
    RingPtr ring;
    std::size_t y = 0;
    std::vector<Polynomial> q, r, h;
    std::vector<std::string> verified;  // hypothesis names, in the order checked
    Evidence n_unmixed;
    std::optional<VDResult> n_vd;  // when the unmixedness evidence rests on it
    std::vector<Polynomial> initial;  // <y in(q_i), in(h_j)>
    bool buchberger_agrees = false;   // Buchberger on the gens gives their interreduction
    bool input_reduced = false;
};

namespace detail {

inline Polynomial lead_monomial_of(const Polynomial& p) {
    return Polynomial::monomial(p.ring(), FieldElement::one(p.ring()->field), p.leading_monomial());
}

inline bool reduces_to_zero(const Polynomial& f, const std::vector<Polynomial>& G, const RingPtr& r) {
    return normal_form_in(f, G, r).is_zero();
}

}  // namespace detail

namespace detail {

/// <basis> ⊆ <gens>, by reduction when `gens` is already a GB and by Buchberger otherwise.
inline bool generated_by(const std::vector<Polynomial>& basis, const std::vector<Polynomial>& gens, const RingPtr& R,
                         bool allow_shortcut) {
    const auto G = allow_shortcut && is_groebner_basis(gens, R) ? gens : buchberger_in(gens, R).elements;
    for (const auto& g : basis)
        if (!reduces_to_zero(g, G, R)) return false;
    return true;
}

}  // namespace detail

/// Unmixedness of N for certify_groebner: fills the evidence, returns nullopt without a certificate.
using UnmixedCheck = std::function<std::optional<bool>(const Ideal& N, Evidence& ev, std::optional<VDResult>& vd)>;

/// Check that `gens` (shape y q_i + r_i, h_j) form a Gröbner basis via the 2-minor criterion, then cross-check
/// with Buchberger. Throws HypothesisFailed naming the first failed hypothesis. Without `cross_check` (replay),
/// the Buchberger run on `gens` is skipped: the criterion already proves the basis, so its interreduction is
/// the reduced GB. `unmixed` replaces the intrinsic facts of N when given.
inline GroebnerCertificate certify_groebner(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& C_gens,
                                            const std::vector<Polynomial>& N_gens, std::size_t y,
                                            const MonomialOrder& ord, bool cross_check = true,
                                            const UnmixedCheck& unmixed = {}) {
    if (gens.empty()) throw BadParameter("certify_groebner needs generators");
    auto R = with_order(gens.front().ring(), ord);
    if (y >= R->nvars()) throw BadParameter("variable index out of range");
    GroebnerCertificate cert;
    cert.ring = R;
    cert.y = y;
    auto yv = Polynomial::variable(R, y);
    auto mark = [&](const char* name) { cert.verified.emplace_back(name); };
    std::vector<Polynomial> G, Cg, Ng;
    for (const auto& g : gens) G.push_back(g.in_ring(R));
    for (const auto& g : C_gens) Cg.push_back(g.in_ring(R));
    for (const auto& g : N_gens) Ng.push_back(g.in_ring(R));

    for (const auto& g : G) {
        const auto d = g.degree_in(y);
        if (d > 1) throw HypothesisFailed("squarefree-in-y");
        if (d == 0) {
            cert.h.push_back(g);
            continue;
        }
        auto q = coeff_in(g, y, 1);
        auto rest = g - yv * q;
        if (!(g.leading_monomial() == (yv * q).leading_monomial())) throw HypothesisFailed("leading-term");
        cert.q.push_back(q);
        cert.r.push_back(rest);
    }
    mark("y-free-coefficients");
    mark("leading-term");
    for (const auto& g : Cg)
        if (g.involves(y)) throw HypothesisFailed("C-involves-y");
    for (const auto& g : Ng)
        if (g.involves(y)) throw HypothesisFailed("N-involves-y");

    if (!is_groebner_basis(Cg, R)) throw HypothesisFailed("C-groebner");
    if (!is_groebner_basis(Ng, R)) throw HypothesisFailed("N-groebner");
    mark("C-groebner");
    mark("N-groebner");
    // N = <h_j> and C = <q_i> + N
    for (const auto& h : cert.h)
        if (!detail::reduces_to_zero(h, Ng, R)) throw HypothesisFailed("N-generators");
    if (!detail::generated_by(Ng, cert.h, R, !cross_check)) throw HypothesisFailed("N-generators");
    std::vector<Polynomial> qh = cert.q;
    qh.insert(qh.end(), cert.h.begin(), cert.h.end());
    for (const auto& g : qh)
        if (!detail::reduces_to_zero(g, Cg, R)) throw HypothesisFailed("C-generators");
    if (!detail::generated_by(Cg, qh, R, !cross_check)) throw HypothesisFailed("C-generators");
    mark("C-generators");
    mark("N-generators");

    std::vector<Polynomial> tilde, n_lead, c_lead;
    for (const auto& q : cert.q) tilde.push_back(yv * detail::lead_monomial_of(q));
    for (const auto& h : cert.h) tilde.push_back(detail::lead_monomial_of(h));
    for (const auto& g : Ng) n_lead.push_back(detail::lead_monomial_of(g));
    for (const auto& g : Cg) c_lead.push_back(detail::lead_monomial_of(g));
    const long ht_tilde = height(Ideal(R, tilde));
    const long ht_N = Ng.empty() ? 0 : height(Ideal(R, n_lead));
    const long ht_C = height(Ideal(R, c_lead));
    if (ht_tilde <= ht_N) throw HypothesisFailed("height-I");
    if (ht_C <= ht_N) throw HypothesisFailed("height-C");
    mark("height-I");
    mark("height-C");

    Ideal N(R, Ng);
    std::optional<bool> n_unmixed;
    if (unmixed) {
        n_unmixed = unmixed(N, cert.n_unmixed, cert.n_vd);
    } else {
        auto facts = intrinsic_facts(N);
        n_unmixed = facts.unmixed;
        cert.n_unmixed = facts.unmixed_evidence;
        if (cert.n_unmixed.rule == "squarefree-initial-vd") cert.n_vd = facts.vd;
    }
    if (n_unmixed && !*n_unmixed) throw HypothesisFailed("N-unmixed");
    if (!n_unmixed) cert.n_unmixed = Evidence{EvidenceTag::Assumed, "no-certificate"};
    mark("N-unmixed");

    for (std::size_t i = 0; i < cert.q.size(); ++i)
        for (std::size_t j = i + 1; j < cert.q.size(); ++j) {
            auto minor = cert.q[i] * cert.r[j] - cert.q[j] * cert.r[i];
            if (!detail::reduces_to_zero(minor, Ng, R)) throw HypothesisFailed("two-minors");
        }
    mark("two-minors");

    cert.initial = tilde;
    auto inter = reduce_basis(G, R);
    auto bb = cross_check ? buchberger_in(G, R) : ReducedGB{R, inter};
    cert.buchberger_agrees = bb.elements == inter;
    cert.input_reduced = inter.size() == G.size() && is_reduced_groebner_basis(G, R);
    if (!cert.buchberger_agrees) throw HypothesisFailed("buchberger-cross-check");
    std::vector<Polynomial> bb_lead;
    for (const auto& g : bb.elements) bb_lead.push_back(detail::lead_monomial_of(g));
    if (!ideal_equal(Ideal(R, bb_lead), Ideal(R, tilde))) throw HypothesisFailed("initial-ideal-cross-check");
    mark("buchberger-cross-check");
    return cert;
}

// ---------------------------------------------------------------------------
// glicci chains

struct GlicciStep {
    enum class Kind { Biliaison, UnitC, EqualRadicals };
    Kind kind = Kind::Biliaison;
    std::vector<std::string> context;  // ambient variables, greatest first
    std::vector<Polynomial> ideal;     // reduced GB of the ideal at this step
    std::string y;
    std::optional<BiliaisonWitness> witness;
    std::vector<Polynomial> C, N;  // contracted
    Evidence n_cm, n_g0;
    std::vector<Polynomial> next;  // ideal the step moves to, in the contracted ring
    std::string note;
};

inline std::string to_string(GlicciStep::Kind k) {
    switch (k) {
        case GlicciStep::Kind::Biliaison: return "biliaison";
        case GlicciStep::Kind::UnitC: return "unit-c";
        case GlicciStep::Kind::EqualRadicals: return "equal-radicals";
    }
    return "?";
}

struct GlicciChain {
    Variant variant = Variant::Full;
    std::vector<GlicciStep> steps;
    RingPtr terminal_ring;
    std::vector<Polynomial> terminal;
    std::string terminal_kind;  // unit | zero | indeterminates
    std::size_t length = 0;     // number of biliaison steps
    bool conditional = false;
    GVDResult certificate;
};

struct GlicciOptions {
    Variant variant = Variant::Full;
    UnmixedMode unmixed = UnmixedMode::Certify;
    ScalarStrategy scalars;
};

namespace detail {

inline Ideal node_ideal(const GVDNode& n) { return seeded_ideal(n.ring, n.gb); }

inline std::vector<std::string> context_of(const RingPtr& r) {
    std::vector<std::string> out;
    for (auto v : r->order.ranking()) out.push_back(r->ctx.name(v));
    return out;
}

inline bool witness_accepted(const WitnessChecks& c) {
    return c.containment && c.regular() && c.identity && c.graded && c.heights;
}

/// The split at a decompose node, read off its recorded basis.
inline CNSplit node_split(const GVDNode& n) {
    auto J = node_ideal(n);
    const auto y = J.ctx().require(n.y);
    auto R = with_order(n.ring, n.ring->order.with_greatest(y));
    std::vector<Polynomial> G;
    for (const auto& g : n.split_gb) G.push_back(g.in_ring(R));
    return split_from_gb(J, y, make_gb(R, std::move(G)));
}

using WitnessSource = std::function<BiliaisonWitness(const CNSplit&, std::size_t step)>;

/// Walk a certified tree along C-branches; `witness` supplies the biliaison at each nondegenerate node.
inline GlicciChain walk_chain(const Ideal& I, GVDResult certificate, Variant variant, const WitnessSource& witness) {
    GlicciChain chain;
    chain.variant = variant;
    chain.certificate = std::move(certificate);
    chain.conditional = chain.certificate.conditional;

    const GVDNode* node = chain.certificate.root.get();
    while (node->kind == GVDNode::Case::Decompose) {
        GlicciStep step;
        step.context = detail::context_of(node->ring);
        step.ideal = node->gb;
        step.y = node->y;
        step.C = node->C;
        step.N = node->N;
        auto J = node_ideal(*node);
        const GVDNode* next = nullptr;
        if (node->degeneracy == Degeneracy::Nondegenerate) {
            step.kind = GlicciStep::Kind::Biliaison;
            auto w = witness(node_split(*node), chain.steps.size());
            if (!witness_accepted(w.checks))
                throw HypothesisFailed("witness at " + node->y + ": " + w.checks.note);
            if (!w.checks.saturated) step.note = "sqrt(I) is the maximal ideal";
            step.witness = w;
            if (node->n_branch) {
                const bool cond = node->n_branch->conditional;
                step.n_cm = node->n_branch->cm
                                ? Evidence{EvidenceTag::SufficientViaVD, "N:" + node->n_branch->cm_rule}
                                : Evidence{cond ? EvidenceTag::Assumed : EvidenceTag::SufficientViaVD,
                                           "N-branch GVD and homogeneous"};
                step.n_g0 = Evidence{cond ? EvidenceTag::Assumed : EvidenceTag::SufficientViaVD,
                                     "N-branch GVD, hence radical, hence G0"};
            } else {
                step.n_cm = node->n_cm.value_or(Evidence{EvidenceTag::Assumed, "no-certificate"});
                auto rad = node->n_radical.value_or(Evidence{EvidenceTag::Assumed, "no-certificate"});
                step.n_g0 = Evidence{rad.tag, "N radical (" + rad.rule + "), hence G0"};
            }
            if (step.n_cm.tag == EvidenceTag::Assumed || step.n_g0.tag == EvidenceTag::Assumed) chain.conditional = true;
            ++chain.length;
            next = node->c_branch.get();
        } else if (node->degeneracy == Degeneracy::UnitC) {
            step.kind = GlicciStep::Kind::UnitC;
            // I = N + <y> only when y itself is in the reduced basis
            const auto yi = J.ctx().require(node->y);
            auto yv = Polynomial::variable(node->ring, yi);
            bool plain = false;
            for (const auto& g : node->split_gb)
                if (g.in_ring(node->ring) == yv) plain = true;
            if (!plain) throw HypothesisFailed("unit-c-needs-change-of-variables");
            step.note = "I = N + <" + node->y + ">";
            next = node->n_branch.get();
        } else {
            step.kind = GlicciStep::Kind::EqualRadicals;
            step.note = "I = N, contract away " + node->y;
            next = node->n_branch ? node->n_branch.get() : node->c_branch.get();
        }
        if (!next) throw HypothesisFailed("missing branch at " + node->y);
        step.next = next->gb;
        chain.steps.push_back(std::move(step));
        node = next;
    }
    chain.terminal_ring = node->ring;
    chain.terminal = node->gb;
    chain.terminal_kind = node->kind == GVDNode::Case::Unit ? "unit" : (node->gb.empty() ? "zero" : "indeterminates");
    if (chain.length > I.nvars()) throw HypothesisFailed("chain longer than the number of variables");
    return chain;
}

}  // namespace detail

/// Follow the C-branches of a GVD certificate, emitting a verified witness at every nondegenerate node.
inline GlicciChain glicci_chain(const Ideal& I, const GlicciOptions& opts = {}) {
    if (!I.gens_homogeneous()) throw NotHomogeneous();
    GVDOptions go;
    go.variant = opts.variant;
    go.unmixed = opts.unmixed;
    go.scalars = opts.scalars;
    auto cert = is_gvd(I, go);
    if (!cert.certified) throw NoGVDCertificate();
    return detail::walk_chain(I, std::move(cert), opts.variant,
                              [&](const CNSplit& s, std::size_t) { return build_witness(s, opts.scalars); });
}

// ---------------------------------------------------------------------------
// from a biliaison back to a GVD

/// Recover the geometric vertex decomposition from an isomorphism C/N --f/g--> I/N with in_y(f) = y g.
/// Returns the split of I with respect to y, after checking it equals (C, N).
inline CNSplit gvd_from_biliaison(const Ideal& I, const Ideal& C, const Ideal& N, const Polynomial& f,
                                  const Polynomial& g, std::size_t y, const MonomialOrder& ord) {
    if (ord.greatest() != y) throw BadParameter("order must have y greatest");
    auto R = with_order(I.ring(), ord);
    Ideal IR(R, I.gens()), CR(R, C.gens()), NR(R, N.gens());
    auto fR = f.in_ring(R), gR = g.in_ring(R);
    auto yv = Polynomial::variable(R, y);

    if (!squarefree_in_y(IR, y, ord)) throw HypothesisFailed("squarefree-in-y");
    {
        const auto G = NR.gb();
        for (const auto& h : G->elements)
            if (h.involves(y)) throw HypothesisFailed("N-GB-involves-y");
    }
    if (fR.is_zero() || gR.is_zero()) throw HypothesisFailed("initial-form");
    if (!(initial_y_form(fR, y).monic() == (yv * gR).monic())) throw HypothesisFailed("initial-form");
    if (!ideal_member(fR, IR) || !ideal_member(gR, CR)) throw HypothesisFailed("f-in-I-g-in-C");
    if (!ideal_contains(IR, NR) || !ideal_contains(CR, NR)) throw HypothesisFailed("containment");
    if (!regular_mod(fR, NR)) throw HypothesisFailed("f-regular");
    if (!regular_mod(gR, NR)) throw HypothesisFailed("g-regular");
    // c f / g lands in I/N, and every generator of I is hit
    std::vector<Polynomial> gI;
    for (const auto& p : IR.gens()) gI.push_back(gR * p);
    auto gIN = ideal_sum(Ideal(R, gI), NR);
    for (const auto& c : CR.gens())
        if (!ideal_member(c * fR, gIN)) throw HypothesisFailed("well-defined");
    std::vector<Polynomial> fC;
    for (const auto& c : CR.gens()) fC.push_back(fR * c);
    auto fCN = ideal_sum(Ideal(R, fC), NR);
    for (const auto& p : IR.gens())
        if (!ideal_member(gR * p, fCN)) throw HypothesisFailed("surjective");

    auto s = cn_split(IR, y);
    auto rhs = intersect(Ideal(s.split_ring, CR.gens()), ideal_sum(Ideal(s.split_ring, NR.gens()), {Polynomial::variable(s.split_ring, y)}));
    if (!ideal_equal(s.in_y, rhs)) throw HypothesisFailed("decomposition-equality");
    if (!ideal_equal(s.C, Ideal(s.split_ring, CR.gens())) || !ideal_equal(s.N, Ideal(s.split_ring, NR.gens())))
        throw HypothesisFailed("split-mismatch");
    return s;
}

}  // namespace gvdkit
