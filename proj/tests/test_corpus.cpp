#include <gtest/gtest.h>

#include "gvdkit/corpus.hpp"
#include "gvdkit/liaison.hpp"
#include "support.hpp"

using namespace gvdtest;

namespace {

/// Every north-west rank condition, no essential-set pruning.
Ideal schubert_oracle(const std::string& perm) {
    auto w = parse_permutation(perm);
    auto J = schubert(w);
    const auto& R = J.ring();
    const auto n = w.size();
    auto M = detail::generic_matrix(R, n, n);
    std::vector<Polynomial> gens;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            for (auto& g : detail::minors_of(M, schubert_rank(w, i, j) + 1, i, j)) gens.push_back(g);
    return Ideal(R, gens);
}

}  // namespace

TEST(Corpus, Hankel) {
    auto H = hankel(2);
    EXPECT_TRUE(ideal_equal(H, I(H.ring(), {"x0*x2 - x1^2"})));
    EXPECT_EQ(hankel(5).gens().size(), 10u);
    EXPECT_THROW(hankel(0), BadParameter);
}

TEST(Corpus, MinorsMatchStandardExample) {
    auto M = minors(2, 2, 3);
    auto D = parse_ideal(read_data("minors-2x3.ideal"));
    EXPECT_EQ(M.ctx().names(), D.ctx().names());
    EXPECT_EQ(M.ring()->order.ranking(), D.ring()->order.ranking());
    EXPECT_TRUE(ideal_equal(M, Ideal(M.ring(), D.gens())));
    EXPECT_EQ(minors(3, 3, 3).gens().size(), 1u);
    EXPECT_THROW(minors(3, 2, 3), BadParameter);
}

TEST(Corpus, SchubertSmallCases) {
    auto J = schubert("2143");
    EXPECT_TRUE(ideal_equal(J, I(J.ring(), {"x11",
                                            "x11*x22*x33 - x11*x23*x32 - x12*x21*x33 + x12*x23*x31 + x13*x21*x32 - x13*x22*x31"})));
    auto K = schubert("1432");
    EXPECT_TRUE(ideal_equal(K, I(K.ring(), {"x11*x22 - x12*x21", "x11*x23 - x13*x21", "x12*x23 - x13*x22",
                                            "x11*x32 - x12*x31", "x21*x32 - x22*x31"})));
    EXPECT_TRUE(schubert("1234").is_zero());
    EXPECT_THROW(schubert("1224"), BadParameter);
}

TEST(Corpus, EssentialSetMatchesAllRankConditions) {
    std::string w = "1234";
    do {
        EXPECT_TRUE(ideal_equal(schubert(w), schubert_oracle(w))) << w;
    } while (std::next_permutation(w.begin(), w.end()));
}

TEST(Corpus, SchubertOrderCompatibleAndGlicci) {
    for (const char* w : {"2143", "1432"}) {
        auto J = schubert(w);
        auto oc = is_order_compatible_gvd(J, J.ring()->order);
        EXPECT_TRUE(oc.certified) << w;
        EXPECT_FALSE(oc.conditional) << w;
        EXPECT_TRUE(oc.initial_squarefree) << w;
        auto chain = glicci_chain(J, {Variant::OrderCompatible});
        EXPECT_NE(chain.terminal_kind, "unit");
        for (const auto& s : chain.steps)
            if (s.witness) EXPECT_TRUE(detail::witness_accepted(s.witness->checks)) << w;
    }
}
