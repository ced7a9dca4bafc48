#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "iso/grouplab.hpp"

using namespace iso;

namespace {

std::vector<int> split_J(int rank) {
    std::vector<int> j(rank);
    std::iota(j.begin(), j.end(), 0);
    return j;
}

}  // namespace

TEST_CASE("ring matrix helpers: inverse over local rings") {
    FiniteRing R = FiniteRing::zmod(4);
    RingMat m = {1, 2, 0, 3};  // [[1,2],[0,3]] over Z/4
    RingMat inv = rm_inverse(R, m, 2);
    CHECK(rm_mul(R, m, inv, 2) == rm_identity(2));
    CHECK(rm_mul(R, inv, m, 2) == rm_identity(2));
    RingMat sing = {2, 0, 0, 1};
    CHECK_THROWS_AS(rm_inverse(R, sing, 2), std::invalid_argument);
}

TEST_CASE("elementary group orders match the classical formulas") {
    ElementaryGroup e2(/*A2 over F2*/ 'A', 2, split_J(2), FiniteRing::parse("F2"));
    CHECK(e2.group().size() == 168);  // SL3(F2)

    ElementaryGroup e3('A', 2, split_J(2), FiniteRing::parse("F3"));
    CHECK(e3.group().size() == 5616);  // SL3(F3)

    ElementaryGroup e4('A', 2, split_J(2), FiniteRing::zmod(4));
    CHECK(e4.group().size() == 43008);  // SL3(Z/4) = 168 * 2^8

    ElementaryGroup edual('A', 2, split_J(2), FiniteRing::parse("F2[t]/(t^2)"));
    CHECK(edual.group().size() == 43008);

    ElementaryGroup ec('C', 2, split_J(2), FiniteRing::parse("F3"));
    CHECK(ec.group().size() == 51840);  // Sp4(F3)

    ElementaryGroup ea3('A', 3, {0, 1}, FiniteRing::parse("F2"));
    CHECK(ea3.group().size() == 20160);  // SL4(F2)
}

TEST_CASE("word witnesses reproduce their elements") {
    ElementaryGroup eg('A', 2, split_J(2), FiniteRing::parse("F3"));
    const MatrixGroup& G = eg.group();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int idx = static_cast<int>(rng() % G.size());
        RingMat prod = rm_identity(eg.dim());
        for (int g : G.word(idx))
            prod = rm_mul(eg.ring(), prod, G.generators()[g], eg.dim());
        CHECK(G.index_of(prod) == idx);
    }
}

TEST_CASE("congruence subgroup and level subgroups over Z/4") {
    ElementaryGroup eg('A', 2, split_J(2), FiniteRing::zmod(4));
    const FiniteRing& R = eg.ring();
    Ideal two = R.ideal_generated({2});

    std::vector<int> GI = congruence_subgroup(eg, two);
    CHECK(GI.size() == 256);  // kernel of SL3(Z/4) -> SL3(F2) has order 2^8

    std::vector<int> EI = elementary_level(eg, two);
    std::vector<int> ERI = elementary_normal_level(eg, two);
    CHECK(std::includes(ERI.begin(), ERI.end(), EI.begin(), EI.end()));
    CHECK(std::includes(GI.begin(), GI.end(), ERI.begin(), ERI.end()));
    CHECK(eg.group().is_normal(ERI));

    // trivial and full levels
    CHECK(elementary_level(eg, Ideal{0}) == std::vector<int>{0});
    CHECK(elementary_normal_level(eg, R.ideals().back()).size() == eg.group().size());
}

TEST_CASE("extract_ideal recovers the level of E(R,I) and rejects non-normal input") {
    for (const char* ring : {"Z/4", "F2[t]/(t^2)"}) {
        ElementaryGroup eg('A', 2, split_J(2), FiniteRing::parse(ring));
        const FiniteRing& R = eg.ring();
        CAPTURE(ring);
        for (const Ideal& I : R.ideals()) {
            std::vector<int> N = elementary_normal_level(eg, I);
            IdealWitness w = extract_ideal(eg, N);
            CHECK(w.found);
            CHECK(w.ideal == I);
            // each M_alpha is closed under addition and ring scaling
            for (std::size_t ai = 0; ai < w.M.size(); ++ai) {
                std::set<std::vector<int>> s(w.M[ai].begin(), w.M[ai].end());
                for (const auto& a : w.M[ai])
                    for (const auto& b : w.M[ai]) {
                        std::vector<int> sum(a.size());
                        for (std::size_t k = 0; k < a.size(); ++k) sum[k] = R.add(a[k], b[k]);
                        CHECK(s.count(sum) == 1);
                    }
            }
            IdealWitness f = finite_index_ideal(eg, N);
            CHECK(f.found);
            CHECK(f.ideal == I);
        }
        // a random non-normal subgroup should be rejected
        std::mt19937 rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            int x = static_cast<int>(rng() % eg.group().size());
            std::vector<int> H = eg.group().subgroup_closure({x});
            if (!eg.group().is_normal(H)) {
                CHECK_THROWS_AS(extract_ideal(eg, H), std::invalid_argument);
                break;
            }
        }
    }
}

TEST_CASE("random normal closures always carry an ideal (Theorem 1.3 desk run)") {
    for (auto [ring, series, rank] :
         {std::tuple<const char*, char, int>{"F2", 'A', 2}, {"F4", 'A', 2}, {"F3", 'C', 2}}) {
        ElementaryGroup eg(series, rank, split_J(rank), FiniteRing::parse(ring));
        const MatrixGroup& G = eg.group();
        std::mt19937 rng(20260823u);
        CAPTURE(ring);
        for (int trial = 0; trial < 5; ++trial) {
            int seed_elt = static_cast<int>(rng() % G.size());
            std::vector<int> N = G.normal_closure({seed_elt});
            IdealWitness w = extract_ideal(eg, N);
            CAPTURE(trial);
            CHECK(w.found);
            // over a field the ideal is (0) or R; nontrivial seeds outside the
            // center must land on R
            if (N.size() == G.size()) CHECK(w.ideal.size() == eg.ring().size());
        }
        // monotonicity on a nested pair: N1 = {1} vs N2 = everything
        IdealWitness w1 = extract_ideal(eg, {0});
        std::vector<int> everything(G.size());
        std::iota(everything.begin(), everything.end(), 0);
        IdealWitness w2 = extract_ideal(eg, everything);
        CHECK(w1.ideal.size() <= w2.ideal.size());
    }
}

TEST_CASE("Lemma 4.5: Z elements generate the level subgroup") {
    ElementaryGroup eg('A', 2, split_J(2), FiniteRing::zmod(4));
    for (const Ideal& I : eg.ring().ideals()) CHECK(verify_E_gen(eg, I));

    ElementaryGroup ef4('A', 2, split_J(2), FiniteRing::parse("F4"));
    CHECK(verify_E_gen(ef4, ef4.ring().ideals().back()));  // I = R
    CHECK(verify_E_gen(ef4, Ideal{0}));
}

TEST_CASE("Gauss decomposition and Cayley diameter") {
    ElementaryGroup eg('A', 2, split_J(2), FiniteRing::parse("F2"));
    GaussReport r = gauss_and_diameter(eg);
    CHECK(r.gauss_all);
    CHECK(r.checked == 168);
    CHECK(r.diameter >= 3);  // nonabelian: more than one unipotent factor needed
    long long total = 0;
    for (long long c : r.layer_histogram) total += c;
    CHECK(total == 168);

    ElementaryGroup ec('C', 2, split_J(2), FiniteRing::parse("F3"));
    GaussReport rc = gauss_and_diameter(ec);
    CHECK(rc.gauss_all);
    CHECK(rc.diameter >= 3);
    CHECK(rc.checked == 51840);
}
