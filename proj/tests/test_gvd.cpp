#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "complex_oracles.hpp"
#include "gvdkit/gvd_search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gvdtest;

namespace {

Ideal nolex() { return parse_ideal(read_data("ex-nolex.ideal")); }
Ideal weak_example() { return parse_ideal(read_data("ex-weak.ideal")); }
Ideal minors23() { return parse_ideal(read_data("minors-2x3.ideal")); }

Ideal in_ring(const RingPtr& r, std::initializer_list<const char*> gens) { return I(r, gens); }

/// Walk a certificate and apply `f` to every Decompose node.
void each_decompose(const GVDNodePtr& n, const std::function<void(const GVDNode&)>& f) {
    if (!n || n->kind != GVDNode::Case::Decompose) return;
    f(*n);
    each_decompose(n->c_branch, f);
    each_decompose(n->n_branch, f);
}

/// Generators y q + r with q a short linear form and r a signed monomial, plus optionally one y-free binomial.
/// Variable 0 of `r` is y. Kept sparse so lex bases stay small.
std::vector<Polynomial> sparse_y_generators(std::mt19937_64& rng, const RingPtr& r, int count, bool extra) {
    const std::size_t n = r->nvars();
    std::uniform_int_distribution<std::size_t> var(1, n - 1);
    std::uniform_int_distribution<int> coin(0, 1), deg(0, 2);
    auto signed_monomial = [&]() {
        Monomial m(n);
        for (int d = deg(rng); d > 0; --d) m[var(rng)] += 1;
        return Polynomial::monomial(r, FieldElement::from_int(r->field, coin(rng) ? 1 : -1), m);
    };
    std::vector<Polynomial> g;
    for (int k = 0; k < count; ++k) {
        auto q = Polynomial::variable(r, var(rng));
        if (coin(rng)) q = q + Polynomial::variable(r, var(rng)).scale(FieldElement::from_int(r->field, coin(rng) ? 1 : -1));
        if (q.is_zero()) q = Polynomial::variable(r, var(rng));
        g.push_back(Polynomial::variable(r, 0) * q + signed_monomial() * Polynomial::variable(r, var(rng)));
    }
    if (extra) g.push_back(signed_monomial() * Polynomial::variable(r, var(rng)) + signed_monomial());
    return g;
}

std::vector<std::string> names(unsigned n) {
    std::vector<std::string> v;
    for (unsigned i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
    return v;
}

}  // namespace

TEST(SquarefreeInY, Examples) {
    auto J = nolex();
    EXPECT_TRUE(squarefree_in_y(J, J.ctx().require("y")));
    EXPECT_FALSE(squarefree_in_y(J, J.ctx().require("s")));
    auto r = ring("x y");
    EXPECT_FALSE(squarefree_in_y(in_ring(r, {"y^2 - x"}), 1));
    EXPECT_TRUE(squarefree_in_y(in_ring(r, {"x*y", "x^3"}), 1));
    EXPECT_THROW(squarefree_in_y(in_ring(r, {"x*y"}), 1, r->order), BadParameter);
}

TEST(CNSplit, NolexExample) {
    auto J = nolex();
    auto s = cn_split(J, "y");
    ASSERT_TRUE(s.squarefree);
    const auto& R = s.split_ring;
    EXPECT_TRUE(ideal_equal(s.C, in_ring(R, {"z*s - x^2", "w*r"})));
    EXPECT_TRUE(ideal_equal(s.N, in_ring(R, {"w*r*(z*x + s^2 + z^2 + w*r)"})));
    for (const auto& g : s.C_gens()) EXPECT_FALSE(g.involves(s.y));
    for (const auto& g : s.N_gens()) EXPECT_FALSE(g.involves(s.y));
    EXPECT_EQ(s.Cc.ctx().names().size(), 5u);
    EXPECT_TRUE(ideal_equal(s.Cc, in_ring(s.contracted, {"z*s - x^2", "w*r"})));
}

TEST(CNSplit, StandardExample) {
    auto J = minors23();
    auto s = cn_split(J, "x23");
    EXPECT_TRUE(ideal_equal(s.Cc, in_ring(s.contracted, {"x11", "x12"})));
    EXPECT_TRUE(ideal_equal(s.Nc, in_ring(s.contracted, {"x22*x11 - x21*x12"})));
}

TEST(CNSplit, FreeOfY) {
    auto r = ring("x y z");
    auto J = in_ring(r, {"x*z - z^2", "x^2"});
    auto s = cn_split(J, 1);
    EXPECT_TRUE(ideal_equal(s.C, Ideal(s.split_ring, J.gens())));
    EXPECT_TRUE(ideal_equal(s.N, s.C));
    EXPECT_TRUE(ideal_equal(s.in_y, s.C));
    EXPECT_TRUE(s.y_elements().empty());
}

TEST(CNSplit, ShapeIsGroebner) {
    // the seeded bases are Gröbner bases, checked by the S-pair criterion
    std::mt19937_64 rng(7);
    auto r = ring("y a b c");
    int seen = 0;
    for (int trial = 0; trial < 60 && seen < 20; ++trial) {
        Ideal J(r, sparse_y_generators(rng, r, 3, false));
        auto s = cn_split(J, 0);
        if (!s.squarefree || J.is_unit()) continue;
        ++seen;
        EXPECT_TRUE(is_groebner_basis(s.C.gens(), s.split_ring));
        EXPECT_TRUE(is_groebner_basis(s.N.gens(), s.split_ring));
        EXPECT_TRUE(is_reduced_groebner_basis(s.in_y.gens(), s.split_ring));
        EXPECT_EQ(s.Cc.gb()->elements, buchberger_in(s.Cc.gens(), s.contracted).elements);
    }
    EXPECT_GE(seen, 5);
}

TEST(VerifyGVD, NolexHolds) {
    auto v = verify_gvd(nolex(), 1);
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(v.saturation_matches);
    EXPECT_TRUE(v.sum_matches);
}

TEST(VerifyGVD, NotSquarefreePinned) {
    // y^2 - x: C = <1>, N = <0>, in_y I = <y^2>, while C ∩ (N + <y>) = <y>
    auto r = ring("x y");
    auto s = cn_split(in_ring(r, {"y^2 - x"}), 1);
    EXPECT_FALSE(s.squarefree);
    EXPECT_TRUE(s.C.is_unit());
    EXPECT_TRUE(s.N.is_zero());
    EXPECT_TRUE(ideal_equal(s.in_y, in_ring(s.split_ring, {"y^2"})));
    auto v = verify_gvd(s);
    EXPECT_FALSE(v.holds);
    EXPECT_FALSE(v.saturation_matches == false && v.sum_matches == false);
}

TEST(VerifyGVD, RandomSquarefreeSplitsHold) {
    std::mt19937_64 rng(11);
    auto r = ring("y a b c");
    int seen = 0;
    for (int trial = 0; trial < 80 && seen < 25; ++trial) {
        std::uniform_int_distribution<int> count(1, 3);
        Ideal J(r, sparse_y_generators(rng, r, count(rng), true));
        auto s = cn_split(J, 0);
        if (!s.squarefree) continue;
        ++seen;
        auto v = verify_gvd(s);
        EXPECT_TRUE(v.holds) << J.to_string();
        EXPECT_TRUE(v.saturation_matches) << J.to_string();
        EXPECT_TRUE(v.sum_matches) << J.to_string();
        // in_< I = in_< C ∩ (in_< N + <y>) under the split order
        const auto& ord = s.order();
        auto lhs = initial_ideal(J, ord);
        auto rhs = intersect(initial_ideal(s.C, ord),
                             ideal_sum(initial_ideal(s.N, ord), {Polynomial::variable(s.split_ring, 0)}));
        EXPECT_TRUE(ideal_equal(Ideal(s.split_ring, lhs.gens()), rhs)) << J.to_string();
    }
    EXPECT_GE(seen, 10);
}

TEST(Degeneracy, Examples) {
    auto r = ring("x y");
    auto a = classify_degeneracy(cn_split(in_ring(r, {"y*x", "x"}), 1));
    EXPECT_EQ(a.kind, Degeneracy::EqualRadicals);
    auto b = classify_degeneracy(cn_split(in_ring(r, {"y - x"}), 1));
    EXPECT_EQ(b.kind, Degeneracy::UnitC);
    auto c = classify_degeneracy(cn_split(nolex(), 1));
    EXPECT_EQ(c.kind, Degeneracy::Nondegenerate);
    EXPECT_EQ(c.ht_C, 2);
    EXPECT_EQ(c.ht_N, 1);
}

TEST(Degeneracy, RadicalRuleFindsWitness) {
    // C = <x>, N = <x z> have equal height 1 but sqrt N misses x
    auto r = ring("x y z");
    auto d = classify_degeneracy(cn_split(in_ring(r, {"x*y", "x*z"}), 1));
    EXPECT_EQ(d.kind, Degeneracy::Nondegenerate);
    EXPECT_EQ(d.rule, "radical");
    ASSERT_TRUE(d.witness.has_value());
    EXPECT_EQ(d.witness->to_string(), "x");
}

TEST(Degeneracy, EqualRadicalsOnRadicalIdealsIsYFree) {
    // exhaustive over squarefree monomial ideals on 4 vertices: equal radicals forces I = C = N
    for (const auto& f : all_complexes(4)) {
        auto J = stanley_reisner(to_complex(f, names(4)));
        for (std::size_t y = 0; y < 4; ++y) {
            auto s = cn_split(J, y);
            if (classify_degeneracy(s).kind != Degeneracy::EqualRadicals) continue;
            for (const auto& g : s.gb->elements) EXPECT_FALSE(g.involves(y));
            EXPECT_TRUE(ideal_equal(s.C, s.N));
            EXPECT_TRUE(ideal_equal(Ideal(s.split_ring, J.gens()), s.N));
        }
    }
}

TEST(Nonpure, Examples) {
    auto r = ring("x y z");
    auto c = nonpure_gvd_check(in_ring(r, {"x*y", "x*z"}), 1);
    EXPECT_FALSE(c.holds);
    EXPECT_EQ(c.kind, NonpureCase::Fails);

    auto r4 = ring("y x1 x2 x3");
    auto J = in_ring(r4, {"y*x1", "y*x2", "y*x3"});
    auto d = nonpure_gvd_check(J, 0);
    EXPECT_TRUE(d.holds);
    EXPECT_EQ(d.kind, NonpureCase::DisjointMinPrimes);
    auto s = cn_split(J, 0);
    EXPECT_EQ(height(s.Cc), 3);
    EXPECT_EQ(height(J), 1);

    EXPECT_THROW(nonpure_gvd_check(in_ring(r, {"x*y - z^2"}), 1), NotMonomial);
}

TEST(Nonpure, AgreesWithHeightLemmaOnPureSplits) {
    // at a nondegenerate split of an unmixed monomial ideal satisfying the height lemma, the nonpure condition holds
    for (const auto& f : all_complexes(4)) {
        auto J = stanley_reisner(to_complex(f, names(4)));
        if (J.is_unit() || !monomial_unmixed(J)) continue;
        for (std::size_t y = 0; y < 4; ++y) {
            auto s = cn_split(J, y);
            auto d = classify_degeneracy(s);
            if (d.kind != Degeneracy::Nondegenerate) continue;
            auto c = nonpure_gvd_check(s);
            if (d.ht_C == height(J) && height(J) == d.ht_N + 1 && monomial_unmixed(s.Nc) && monomial_unmixed(s.Cc))
                EXPECT_TRUE(c.holds) << J.to_string() << " y=" << y;
        }
    }
}

TEST(IsGVD, IndeterminatesLeaf) {
    auto r = ring("x1 x2 x3 x4");
    auto res = is_gvd(in_ring(r, {"x2", "x4"}));
    ASSERT_TRUE(res.certified);
    EXPECT_EQ(res.root->kind, GVDNode::Case::Indeterminates);
    EXPECT_FALSE(res.conditional);
    auto zero = is_gvd(Ideal(r, {}));
    EXPECT_EQ(zero.root->kind, GVDNode::Case::Indeterminates);
    auto unit = is_gvd(in_ring(r, {"x1 + 1", "x1"}));
    EXPECT_EQ(unit.root->kind, GVDNode::Case::Unit);
}

TEST(IsGVD, NolexCertificate) {
    auto res = is_gvd(nolex(), Variant::Full, UnmixedMode::Certify);
    ASSERT_TRUE(res.certified);
    EXPECT_FALSE(res.conditional);
    const auto& root = *res.root;
    EXPECT_EQ(root.y, "y");
    EXPECT_EQ(root.degeneracy, Degeneracy::Nondegenerate);
    ASSERT_TRUE(root.c_branch && root.n_branch);
    EXPECT_EQ(root.c_branch->y, "s");
    EXPECT_EQ(root.n_branch->y, "x");
    auto rc = root.c_branch->ring;
    auto sr = with_order(rc, rc->order.with_greatest(rc->ctx.require("s")));
    EXPECT_TRUE(ideal_equal(Ideal(sr, root.c_branch->in_y), in_ring(sr, {"z*s", "w*r"})));
    auto rn = root.n_branch->ring;
    auto xr = with_order(rn, rn->order.with_greatest(rn->ctx.require("x")));
    EXPECT_TRUE(ideal_equal(Ideal(xr, root.n_branch->in_y), in_ring(xr, {"w*r*z*x"})));
    each_decompose(res.root, [](const GVDNode& n) {
        if (n.degeneracy == Degeneracy::Nondegenerate) {
            EXPECT_EQ(n.ht_C, n.ht_I);
            EXPECT_EQ(n.ht_I, n.ht_N + 1);
        }
        EXPECT_TRUE(n.unmixed.has_value());
    });
}

TEST(IsGVD, WeakButNotFull) {
    auto full = is_gvd(weak_example(), Variant::Full, UnmixedMode::Certify);
    EXPECT_FALSE(full.certified);
    auto weak = is_gvd(weak_example(), Variant::Weak, UnmixedMode::Certify);
    ASSERT_TRUE(weak.certified);
    EXPECT_EQ(weak.root->y, "y");
    EXPECT_FALSE(weak.root->n_branch);
    ASSERT_TRUE(weak.root->n_radical && weak.root->n_cm);
    EXPECT_NE(weak.root->n_radical->tag, EvidenceTag::Assumed);
    EXPECT_NE(weak.root->n_cm->tag, EvidenceTag::Assumed);
    EXPECT_FALSE(weak.conditional);
}

TEST(IsGVD, NonpureVariant) {
    auto r = ring("y x1 x2 x3");
    auto J = in_ring(r, {"y*x1", "y*x2", "y*x3"});
    EXPECT_FALSE(is_gvd(J, Variant::Full, UnmixedMode::Monomial).certified);
    auto np = is_gvd(J, Variant::Nonpure, UnmixedMode::Monomial);
    ASSERT_TRUE(np.certified);
    EXPECT_FALSE(np.root->unmixed.has_value());
    EXPECT_EQ(np.root->nonpure, NonpureCase::DisjointMinPrimes);
    EXPECT_THROW(is_gvd(nolex(), Variant::Nonpure, UnmixedMode::Certify), NotMonomial);

    auto r3 = ring("x y z");
    EXPECT_TRUE(is_gvd(in_ring(r3, {"x*y", "x*z"}), Variant::Nonpure, UnmixedMode::Monomial).certified);
}

TEST(IsGVD, NonpureMatchesNonpureVertexDecomposition) {
    for (const auto& f : all_complexes(4)) {
        auto d = to_complex(f, names(4));
        auto J = stanley_reisner(d);
        EXPECT_EQ(is_gvd(J, Variant::Nonpure, UnmixedMode::Monomial).certified,
                  oracle_vd(f, 4, false)) << J.to_string();
    }
}

TEST(IsGVD, AssumeModeIsConditional) {
    auto res = is_gvd(nolex(), Variant::Full, UnmixedMode::Assume);
    ASSERT_TRUE(res.certified);
    EXPECT_TRUE(res.conditional);
    EXPECT_EQ(res.root->unmixed->tag, EvidenceTag::Assumed);
}

TEST(IsGVD, MonomialModeRejectsPolynomials) {
    EXPECT_THROW(is_gvd(nolex(), Variant::Full, UnmixedMode::Monomial), NotMonomial);
}

TEST(IsGVD, MixedIdealRefuted) {
    auto r = ring("x y z");
    auto res = is_gvd(in_ring(r, {"x*y", "x*z"}), Variant::Full, UnmixedMode::Monomial);
    EXPECT_FALSE(res.certified);
    EXPECT_NE(res.root->reason.find("unmixed"), std::string::npos);
}

TEST(IsGVD, NotRadicalRefuted) {
    auto r = ring("x y");
    EXPECT_FALSE(is_gvd(in_ring(r, {"x^2"})).certified);
    EXPECT_FALSE(is_gvd(in_ring(r, {"x^2*y"})).certified);
}

TEST(IsGVD, VertexDecomposableIffGVDThreeVertices) {
    for (const auto& f : all_complexes(3)) {
        auto J = stanley_reisner(to_complex(f, names(3)));
        auto res = is_gvd(J, Variant::Full, UnmixedMode::Monomial);
        EXPECT_EQ(res.certified, oracle_vd(f, 3, true)) << J.to_string();
        EXPECT_FALSE(res.conditional);
    }
}

TEST(IsGVD, FullImpliesWeak) {
    for (const auto& f : all_complexes(4)) {
        auto J = stanley_reisner(to_complex(f, names(4)));
        auto full = is_gvd(J, Variant::Full, UnmixedMode::Monomial);
        if (!full.certified) continue;
        EXPECT_TRUE(is_gvd(J, Variant::Weak, UnmixedMode::Monomial).certified) << J.to_string();
    }
    EXPECT_TRUE(is_gvd(nolex(), Variant::Weak, UnmixedMode::Certify).certified);
    EXPECT_TRUE(is_gvd(minors23(), Variant::Weak, UnmixedMode::Certify).certified);
}

TEST(IsGVD, CertifiedIdealsAreRadical) {
    // products of generator factors: membership in the radical must imply membership
    auto J = nolex();
    const auto& R = J.ring();
    std::vector<Polynomial> factors{P(R, "y"), P(R, "z*s - x^2"), P(R, "w"), P(R, "r"),
                                    P(R, "z^2 + z*x + w*r + s^2"), P(R, "x"), P(R, "s")};
    ASSERT_TRUE(is_gvd(J).certified);
    std::mt19937_64 rng(3);
    int in_radical = 0;
    for (int t = 0; t < 40; ++t) {
        Polynomial f = Polynomial::constant(R, 1);
        for (const auto& p : factors)
            if (rng() % 2) f = f * p;
        if (radical_member(f, J)) {
            ++in_radical;
            EXPECT_TRUE(ideal_member(f, J)) << f.to_string();
        }
    }
    EXPECT_GT(in_radical, 3);
}

TEST(IsGVD, DeterministicAndMemoized) {
    auto a = is_gvd(nolex());
    auto before = detail::search_counter().load();
    auto b = is_gvd(nolex());
    EXPECT_GT(detail::search_counter().load(), before);
    std::function<std::string(const GVDNodePtr&)> dump = [&](const GVDNodePtr& n) -> std::string {
        if (!n) return "-";
        std::string s = std::to_string(static_cast<int>(n->kind)) + n->y + "[";
        for (const auto& g : n->gb) s += g.to_string() + ",";
        return s + "](" + dump(n->c_branch) + ")(" + dump(n->n_branch) + ")";
    };
    EXPECT_EQ(dump(a.root), dump(b.root));
}

TEST(SquarefreePolynomial, Examples) {
    auto r = ring("x y");
    EXPECT_EQ(squarefree_polynomial(P(r, "x*y + 1")), true);
    EXPECT_EQ(squarefree_polynomial(P(r, "(x - y)^2*(x + 1)")), false);
    EXPECT_EQ(squarefree_polynomial(P(r, "x^2 - y^2")), true);
    auto p = ring("x y", FieldSpec::prime(7));
    EXPECT_FALSE(squarefree_polynomial(P(p, "x*y")).has_value());
}

TEST(OrderCompatible, StanleyReisnerPath) {
    // path v0 - v1 - v2 - v3 is vertex decomposable compatibly with v0 > v1 > v2 > v3
    SimplicialComplex d(names(4), {0b0011, 0b0110, 0b1100});
    auto J = stanley_reisner(d);
    auto oc = is_order_compatible_gvd(J, J.ring()->order);
    EXPECT_EQ(oc.certified, vertex_decomposable(d, VDMode::OrderCompatible, std::vector<std::size_t>{0, 1, 2, 3}).decomposable);
    EXPECT_TRUE(oc.certified);
    EXPECT_FALSE(oc.conditional);
}

TEST(OrderCompatible, VeroneseThree) {
    auto J = parse_ideal(read_data("hankel-3.ideal"));
    auto oc = is_order_compatible_gvd(J, std::vector<std::string>{"x3", "x2", "x1", "x0"});
    EXPECT_TRUE(oc.initial_squarefree);
    EXPECT_TRUE(oc.certified);
}

TEST(OrderCompatible, NolexRefutedOnSampledOrders) {
    auto J = nolex();
    std::vector<std::string> v = J.ctx().names();
    std::sort(v.begin(), v.end());
    int k = 0;
    do {
        if (k++ % 37) continue;
        auto oc = is_order_compatible_gvd(J, v);
        EXPECT_FALSE(oc.initial_squarefree);
        EXPECT_FALSE(oc.certified);
    } while (std::next_permutation(v.begin(), v.end()));
}

TEST(OrderCompatible, AgreesWithVertexDecompositionExhaustively) {
    for (const auto& f : all_complexes(3)) {
        auto d = to_complex(f, names(3));
        auto J = stanley_reisner(d);
        std::vector<std::size_t> perm{0, 1, 2};
        do {
            std::vector<std::string> nm;
            for (auto p : perm) nm.push_back("v" + std::to_string(p));
            auto oc = is_order_compatible_gvd(J, nm);
            EXPECT_EQ(oc.certified, vertex_decomposable(d, VDMode::OrderCompatible, perm).decomposable);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}
