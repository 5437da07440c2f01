#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvdkit/simplicial.hpp"
#include "gvdkit/witness.hpp"

namespace gvdkit {

enum class Variant { Full, Weak, OrderCompatible, Nonpure };
enum class UnmixedMode { Assume, Monomial, Certify };
enum class EvidenceTag { Exact, SufficientViaVD, Assumed };

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::Full: return "full";
        case Variant::Weak: return "weak";
        case Variant::OrderCompatible: return "order-compatible";
        case Variant::Nonpure: return "nonpure";
    }
    return "?";
}

inline std::string to_string(UnmixedMode m) {
    switch (m) {
        case UnmixedMode::Assume: return "assume";
        case UnmixedMode::Monomial: return "monomial";
        case UnmixedMode::Certify: return "certify";
    }
    return "?";
}

inline std::string to_string(EvidenceTag t) {
    switch (t) {
        case EvidenceTag::Exact: return "Exact";
        case EvidenceTag::SufficientViaVD: return "SufficientViaVD";
        case EvidenceTag::Assumed: return "Assumed";
    }
    return "?";
}

struct Evidence {
    EvidenceTag tag = EvidenceTag::Assumed;
    std::string rule;
};

/// What can be said about an ideal from its reduced GB alone. `*_exact` means a false value is a real no.
struct IdealFacts {
    std::optional<bool> unmixed;
    Evidence unmixed_evidence;
    bool cm = false, cm_exact = false;
    std::string cm_rule;
    bool radical = false, radical_exact = false;
    std::string radical_rule;
    std::optional<VDResult> vd;  // decomposition of the initial complex, when a rule relies on it
};

namespace detail {

inline Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        if (!t.mono[var]) continue;
        Term u = t;
        u.coeff = t.coeff * FieldElement::from_int(f.ring()->field, static_cast<long long>(t.mono[var]));
        u.mono[var] -= 1;
        out.push_back(std::move(u));
    }
    return Polynomial(f.ring(), std::move(out));
}

/// gcd(a, b) = a b / lcm(a, b), with the lcm read off <a> ∩ <b>.
inline Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.ring(), 1);
    const auto& R = a.ring();
    auto l = Ideal(R, intersect(Ideal(R, {a}), Ideal(R, {b})).gens()).gb()->elements.front();
    return divide_exact(a * b, l).monic();
}

}  // namespace detail

/// Squarefree test for one polynomial in characteristic zero: gcd(f, ∂f/∂x_1, ..., ∂f/∂x_n) is constant.
inline std::optional<bool> squarefree_polynomial(const Polynomial& f) {
    if (!f.ring()->field.is_rationals()) return std::nullopt;
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    Polynomial g = f;
    for (std::size_t v = 0; v < f.ring()->nvars(); ++v) {
        auto d = detail::partial_derivative(f, v);
        if (d.is_zero()) continue;
        g = detail::polynomial_gcd(g, d);
        if (g.is_constant()) return true;
    }
    return g.is_constant();
}

inline bool all_squarefree_leads(const std::vector<Polynomial>& G) {
    for (const auto& g : G)
        if (!g.leading_monomial().is_squarefree()) return false;
    return true;
}

inline Ideal leading_ideal(const ReducedGB& g, const RingPtr& target) {
    std::vector<Polynomial> lms;
    for (const auto& p : g.elements)
        lms.push_back(Polynomial::monomial(target, FieldElement::one(target->field), p.leading_monomial()));
    return Ideal(target, lms);
}

/// Facts from the reduced GB under the ring order, plus any extra bases supplied (same ideal, other orders).
inline IdealFacts intrinsic_facts(const Ideal& J, const std::vector<std::shared_ptr<const ReducedGB>>& extra = {}) {
    IdealFacts f;
    const auto G = J.gb();
    const auto& field = J.ring()->field;
    auto exact = [&](const std::string& rule) {
        f.unmixed = true;
        f.unmixed_evidence = {EvidenceTag::Exact, rule};
    };
    if (G->is_unit()) {
        exact("unit");
        f.cm = f.cm_exact = f.radical = f.radical_exact = true;
        f.cm_rule = f.radical_rule = "unit";
        return f;
    }
    if (J.indeterminates()) {
        exact(G->is_zero() ? "zero" : "indeterminates");
        f.cm = f.cm_exact = f.radical = f.radical_exact = true;
        f.cm_rule = f.radical_rule = "indeterminates";
        return f;
    }
    if (detail::all_monomial(G->elements)) {
        const bool mixed_free = monomial_unmixed(J);
        f.unmixed = mixed_free;
        f.unmixed_evidence = {EvidenceTag::Exact, "monomial-associated-primes"};
        f.radical_exact = true;
        f.radical = all_squarefree_leads(G->elements);
        f.radical_rule = "monomial";
        if (f.radical) {
            f.cm = reisner_cm(complex_of(J), field);
            f.cm_exact = true;
            f.cm_rule = "reisner";
        }
        return f;
    }
    if (G->elements.size() == 1) {
        exact("principal");
        f.cm = f.cm_exact = true;
        f.cm_rule = "hypersurface";
        if (auto sq = squarefree_polynomial(G->elements[0])) {
            f.radical = *sq;
            f.radical_exact = true;
            f.radical_rule = "squarefree-generator";
        }
    }
    std::vector<std::shared_ptr<const ReducedGB>> bases{G};
    bases.insert(bases.end(), extra.begin(), extra.end());
    for (const auto& B : bases) {
        if (!all_squarefree_leads(B->elements)) continue;
        if (!f.radical) {
            f.radical = f.radical_exact = true;
            f.radical_rule = "squarefree-initial";
        }
        auto delta = complex_of(leading_ideal(*B, J.ring()));
        auto vd = vertex_decomposable(delta, VDMode::Pure);
        if (vd.decomposable) {
            f.vd = vd;
            if (!f.unmixed) {
                f.unmixed = true;
                f.unmixed_evidence = {EvidenceTag::SufficientViaVD, "squarefree-initial-vd"};
            }
            if (!f.cm) f.cm_rule = "squarefree-initial-vd";
            f.cm = f.cm_exact = true;
        } else if (!delta.is_void() && reisner_cm(delta, field)) {
            if (!f.unmixed) {
                f.unmixed = true;
                f.unmixed_evidence = {EvidenceTag::SufficientViaVD, "squarefree-initial-reisner"};
            }
            if (!f.cm) f.cm_rule = "squarefree-initial-reisner";
            f.cm = f.cm_exact = true;
        } else if (!f.cm) {
            // CM-ness of I and of a squarefree initial ideal agree
            f.cm_exact = true;
            f.cm_rule = "squarefree-initial-reisner";
        }
        break;
    }
    return f;
}

struct GVDOptions {
    Variant variant = Variant::Full;
    UnmixedMode unmixed = UnmixedMode::Certify;
    ScalarStrategy scalars;
    bool verify_oracle = true;  // run the intersection oracle and cross-checks at each accepted split
};

struct GVDNode;

/// One variable the search tried and gave up on. `split_gb` is the basis with y greatest, when it was computed.
struct GVDAttempt {
    std::string y;
    std::string failure;  // not-squarefree | decomposition-fails | not-radical | heights | nonpure | c-branch | n-branch | n-evidence
    std::string detail;
    std::vector<Polynomial> split_gb;
    std::shared_ptr<const GVDNode> child;  // the refuted branch
};

struct GVDNode {
    enum class Case { Unit, Indeterminates, Decompose, Refuted };
    Case kind = Case::Refuted;
    RingPtr ring;
    std::vector<Polynomial> gb;  // reduced GB under the ring order

    std::string y;
    std::vector<Polynomial> split_gb, in_y;  // in the ring with y greatest
    std::vector<Polynomial> C, N;            // contractions, reduced GBs under the induced order
    Degeneracy degeneracy = Degeneracy::Nondegenerate;
    std::string degeneracy_rule;
    std::optional<Polynomial> nondegeneracy_witness;  // element of C^c outside sqrt(N^c)
    long ht_I = 0, ht_C = 0, ht_N = 0;
    std::optional<NonpureCase> nonpure;
    std::shared_ptr<const GVDNode> c_branch, n_branch;
    std::optional<Evidence> n_radical, n_cm;  // weak variant, nondegenerate split
    std::optional<VDResult> n_vd;

    std::optional<Evidence> unmixed;  // absent in the nonpure variant
    bool cm = false;
    std::string cm_rule;
    std::optional<VDResult> vd;  // backs any squarefree-initial-vd rule
    std::optional<std::vector<FieldElement>> depth_scalars;
    std::optional<Polynomial> depth_u, depth_v;

    std::vector<GVDAttempt> attempts;
    std::string reason;
    bool conditional = false;

    bool ok() const { return kind != Case::Refuted; }

    std::vector<std::string> tried() const {
        std::vector<std::string> out;
        for (const auto& a : attempts) out.push_back(a.y + ": " + a.detail);
        return out;
    }
};

using GVDNodePtr = std::shared_ptr<const GVDNode>;

struct GVDResult {
    bool certified = false;
    bool conditional = false;
    GVDOptions options;
    GVDNodePtr root;
};

namespace detail {

inline std::string memo_key(const Ideal& J) {
    std::string k;
    for (const auto& n : J.ctx().names()) k += n + ",";
    k += "|";
    for (auto v : J.ring()->order.ranking()) k += std::to_string(v) + ",";
    k += "|";
    const auto G = J.gb();
    for (const auto& g : G->elements) k += g.to_string() + ";";
    return k;
}

inline bool requires_unmixed(Variant v) { return v != Variant::Nonpure; }

inline bool involves(const std::vector<Polynomial>& G, std::size_t y) {
    for (const auto& g : G)
        if (g.involves(y)) return true;
    return false;
}

inline Evidence evidence_of(bool exact, const std::string& rule) {
    return {exact ? EvidenceTag::Exact : EvidenceTag::SufficientViaVD, rule};
}

/// Radical and CM evidence for N in a weak nondegenerate split; nullopt refutes the split.
inline std::optional<std::pair<Evidence, Evidence>> weak_n_evidence(const IdealFacts& f, std::string& why) {
    Evidence rad, cm;
    if (f.radical) {
        rad = evidence_of(f.radical_rule != "squarefree-initial", f.radical_rule);
    } else if (f.radical_exact) {
        why = "N is not radical";
        return std::nullopt;
    } else {
        rad = {EvidenceTag::Assumed, "no-certificate"};
    }
    if (f.cm) {
        const bool exact = f.cm_rule == "hypersurface" || f.cm_rule == "reisner" || f.cm_rule == "unit" ||
                           f.cm_rule == "indeterminates";
        cm = evidence_of(exact, f.cm_rule);
    } else if (f.cm_exact) {
        why = "N is not Cohen-Macaulay";
        return std::nullopt;
    } else {
        cm = {EvidenceTag::Assumed, "no-certificate"};
    }
    return std::pair{rad, cm};
}

class GVDSearch {
public:
    explicit GVDSearch(GVDOptions opts) : opts_(opts) {}

    GVDNodePtr run(const Ideal& J) {
        auto key = memo_key(J);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto node = std::make_shared<GVDNode>();
        solve(J, *node);
        GVDNodePtr out = node;
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    GVDOptions opts_;
    std::map<std::string, GVDNodePtr> memo_;

    IdealFacts facts_for(const Ideal& J) const {
        const bool monomial = detail::all_monomial(J.gb()->elements);
        if ((opts_.unmixed == UnmixedMode::Monomial || opts_.variant == Variant::Nonpure) && !monomial)
            throw NotMonomial(J.to_string());
        return intrinsic_facts(J);
    }

    void solve(const Ideal& J, GVDNode& node) {
        node.ring = J.ring();
        const auto G = J.gb();
        node.gb = G->elements;
        const bool need_unmixed = requires_unmixed(opts_.variant);
        auto base = [&](GVDNode::Case c, const std::string& rule) {
            node.kind = c;
            node.cm = true;
            node.cm_rule = rule;
            if (need_unmixed) {
                node.unmixed = Evidence{EvidenceTag::Exact, rule};
            }
        };
        if (G->is_unit()) return base(GVDNode::Case::Unit, "unit");
        if (J.indeterminates()) return base(GVDNode::Case::Indeterminates, G->is_zero() ? "zero" : "indeterminates");

        const auto facts = facts_for(J);
        if (need_unmixed && facts.unmixed && !*facts.unmixed) {
            node.reason = "not unmixed (" + facts.unmixed_evidence.rule + ")";
            return;
        }
        std::vector<std::size_t> candidates;
        if (opts_.variant == Variant::OrderCompatible) {
            candidates.push_back(J.ring()->order.greatest());
        } else {
            candidates = J.ring()->order.ranking();
        }
        const long ht_I = height(J);
        for (auto y : candidates) {
            ++search_counter();
            const auto& yname = J.ctx().name(y);
            auto s = cn_split(J, y);
            auto fail = [&](const char* kind, std::string detail, GVDNodePtr child = nullptr) {
                node.attempts.push_back({yname, kind, std::move(detail), s.gb->elements, std::move(child)});
            };
            if (!s.squarefree) {
                fail("not-squarefree", "not squarefree in " + yname);
                continue;
            }
            if (opts_.verify_oracle) {
                auto v = verify_gvd(s);
                if (!v.holds || !v.saturation_matches || !v.sum_matches) {
                    fail("decomposition-fails", "decomposition equality fails");
                    continue;
                }
            }
            auto deg = classify_degeneracy(s);
            const bool y_free_gb = !involves(s.gb->elements, y);
            if (deg.kind == Degeneracy::EqualRadicals && !y_free_gb) {
                fail("not-radical", "equal radicals with " + yname + " in the Groebner basis, so not radical");
                continue;
            }
            if (deg.kind == Degeneracy::Nondegenerate && need_unmixed &&
                (deg.ht_C != ht_I || ht_I != deg.ht_N + 1)) {
                fail("heights", "heights C=" + std::to_string(deg.ht_C) + " I=" + std::to_string(ht_I) + " N=" +
                                    std::to_string(deg.ht_N));
                node.reason = "not unmixed (height lemma fails at " + yname + ")";
                return;
            }
            std::optional<NonpureCheck> np;
            if (opts_.variant == Variant::Nonpure) {
                np = nonpure_gvd_check(s, false);
                if (!np->holds) {
                    fail("nonpure", np->reason);
                    continue;
                }
            }
            GVDNodePtr c, n;
            std::optional<std::pair<Evidence, Evidence>> n_ev;
            std::optional<VDResult> n_vd;
            const bool weak = opts_.variant == Variant::Weak;
            if (weak && deg.kind != Degeneracy::Nondegenerate) {
                n = run(s.Nc);
                if (!n->ok()) {
                    fail("n-branch", "N-branch refuted", n);
                    continue;
                }
            } else {
                c = run(s.Cc);
                if (!c->ok()) {
                    fail("c-branch", "C-branch refuted", c);
                    continue;
                }
                if (weak) {
                    std::string why;
                    auto nf = intrinsic_facts(s.Nc);
                    n_ev = weak_n_evidence(nf, why);
                    if (n_ev && n_ev->second.rule == "squarefree-initial-vd") n_vd = nf.vd;
                    if (!n_ev) {
                        fail("n-evidence", why);
                        continue;
                    }
                } else {
                    n = run(s.Nc);
                    if (!n->ok()) {
                        fail("n-branch", "N-branch refuted", n);
                        continue;
                    }
                }
            }
            node.kind = GVDNode::Case::Decompose;
            node.y = yname;
            node.split_gb = s.gb->elements;
            node.in_y = s.in_y.gens();
            node.C = s.Cc.gens();
            node.N = s.Nc.gens();
            node.degeneracy = deg.kind;
            node.degeneracy_rule = deg.rule;
            node.nondegeneracy_witness = deg.witness;
            node.ht_I = ht_I;
            node.ht_C = deg.ht_C;
            node.ht_N = deg.ht_N;
            if (np) node.nonpure = np->kind;
            node.c_branch = c;
            node.n_branch = n;
            if (n_ev) {
                node.n_radical = n_ev->first;
                node.n_cm = n_ev->second;
                node.n_vd = n_vd;
            }
            settle_evidence(J, s, deg, facts, node);
            node.conditional = (node.unmixed && node.unmixed->tag == EvidenceTag::Assumed) ||
                               (node.n_radical && node.n_radical->tag == EvidenceTag::Assumed) ||
                               (node.n_cm && node.n_cm->tag == EvidenceTag::Assumed) ||
                               (c && c->conditional) || (n && n->conditional);
            return;
        }
        node.kind = GVDNode::Case::Refuted;
        node.reason = node.attempts.empty() ? "no variable to shed" : "every variable refuted";
    }

    void settle_evidence(const Ideal& J, const CNSplit& s, const DegeneracyReport& deg, const IdealFacts& facts,
                         GVDNode& node) {
        node.cm = facts.cm;
        node.cm_rule = facts.cm_rule;
        if (!requires_unmixed(opts_.variant)) return;
        if (opts_.unmixed == UnmixedMode::Assume) {
            node.unmixed = Evidence{EvidenceTag::Assumed, "assume-mode"};
        } else if (facts.unmixed) {
            node.unmixed = facts.unmixed_evidence;
        }
        const bool degenerate = deg.kind != Degeneracy::Nondegenerate;
        if (degenerate && node.n_branch && node.n_branch->unmixed) {
            // R/I ≅ R'/N^c (C = <1>), or I = N (equal radicals, y-free basis)
            if (!node.unmixed) {
                node.unmixed = Evidence{node.n_branch->unmixed->tag, "transfer-from-N:" + node.n_branch->unmixed->rule};
            }
            if (!node.cm && node.n_branch->cm) {
                node.cm = true;
                node.cm_rule = "transfer-from-N:" + node.n_branch->cm_rule;
            }
        }
        if (!degenerate && opts_.unmixed == UnmixedMode::Certify && (!node.unmixed || !node.cm)) try_depth_lemma(J, s, node);
        if (!node.unmixed) node.unmixed = Evidence{EvidenceTag::Assumed, "no-certificate"};
        if (node.cm_rule == "squarefree-initial-vd" || node.unmixed->rule == "squarefree-initial-vd") node.vd = facts.vd;
    }

    void try_depth_lemma(const Ideal& J, const CNSplit& s, GVDNode& node) {
        if (!J.gens_homogeneous()) return;
        const bool c_cm = node.c_branch && node.c_branch->cm;
        const bool n_cm = node.n_branch ? node.n_branch->cm : (node.n_cm && node.n_cm->tag != EvidenceTag::Assumed);
        if (!c_cm || !n_cm || node.ht_C != node.ht_I || node.ht_I != node.ht_N + 1) return;
        try {
            auto w = build_witness(s, opts_.scalars);
            if (!w.checks.all()) return;
            node.depth_scalars = w.scalars;
            node.depth_u = w.u;
            node.depth_v = w.v;
        } catch (const ScalarSearchExhausted&) {
            return;
        }
        if (!node.unmixed) node.unmixed = Evidence{EvidenceTag::SufficientViaVD, "depth-lemma"};
        if (!node.cm) {
            node.cm = true;
            node.cm_rule = "depth-lemma";
        }
    }
};

}  // namespace detail

/// Recursive search over variables in the ring order (greatest first), backtracking on refutation.
inline GVDResult is_gvd(const Ideal& I, const GVDOptions& opts = {}) {
    detail::GVDSearch search(opts);
    GVDResult r;
    r.options = opts;
    r.root = search.run(I);
    r.certified = r.root->ok();
    r.conditional = r.certified && r.root->conditional;
    return r;
}

inline GVDResult is_gvd(const Ideal& I, Variant variant, UnmixedMode mode) {
    GVDOptions o;
    o.variant = variant;
    o.unmixed = mode;
    return is_gvd(I, o);
}

struct OrderCompatibleResult {
    bool certified = false;
    bool conditional = false;
    GVDResult recursion;  // strategy A
    bool initial_squarefree = false;  // strategy B
    std::vector<Polynomial> initial_ideal;
    std::optional<VDResult> complex_vd;
    bool strategy_b = false;
    std::vector<std::string> order;
};

/// Both strategies: recursion shedding the largest variable, and the squarefree initial ideal route.
inline OrderCompatibleResult is_order_compatible_gvd(const Ideal& I, const MonomialOrder& ord,
                                                     const ScalarStrategy& scalars = {}) {
    auto R = with_order(I.ring(), ord);
    Ideal J(R, I.gens());
    OrderCompatibleResult out;
    for (auto v : ord.ranking()) out.order.push_back(R->ctx.name(v));
    GVDOptions o;
    o.variant = Variant::OrderCompatible;
    o.unmixed = UnmixedMode::Certify;
    o.scalars = scalars;
    out.recursion = is_gvd(J, o);

    auto G = J.gb();
    out.initial_squarefree = all_squarefree_leads(G->elements);
    for (const auto& p : G->elements) out.initial_ideal.push_back(Polynomial::monomial(R, FieldElement::one(R->field), p.leading_monomial()));
    if (out.initial_squarefree) {
        auto delta = complex_of(Ideal(R, out.initial_ideal));
        out.complex_vd = vertex_decomposable(delta, VDMode::OrderCompatible, ord.ranking());
        out.strategy_b = out.complex_vd->decomposable;
    }
    const bool a_sure = out.recursion.certified && !out.recursion.conditional;
    if ((a_sure && !out.strategy_b) || (out.strategy_b && !out.recursion.certified))
        throw StrategyDisagreement(std::string("recursion ") + (out.recursion.certified ? "certifies" : "refutes") +
                                   ", initial-ideal route " + (out.strategy_b ? "certifies" : "refutes"));
    out.certified = out.strategy_b && out.recursion.certified;
    out.conditional = out.certified && out.recursion.conditional;
    return out;
}

inline OrderCompatibleResult is_order_compatible_gvd(const Ideal& I, const std::vector<std::string>& greatest_first) {
    return is_order_compatible_gvd(I, order_from_names(I.ctx(), greatest_first));
}

}  // namespace gvdkit
