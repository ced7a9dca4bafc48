#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "iso/relroots.hpp"

using namespace iso;

namespace {

RelativeRoot rr(IntVec v) { return RelativeRoot(std::move(v)); }

// Apply a diagram automorphism to a root in simple-root coordinates.
Root apply_perm(const IntVec& g, const Root& r) {
    IntVec out(r.c.size());
    for (std::size_t i = 0; i < r.c.size(); ++i) out[g[i]] = r.c[i];
    return Root(out);
}

}  // namespace

TEST_CASE("A2 with the swap automorphism gives a BC1 quotient") {
    RootSystem a2('A', 2);
    RelativeRootSystem rel(a2, {0, 1}, {{0, 1}, {1, 0}});
    CHECK(rel.rank() == 1);
    REQUIRE(rel.elements().size() == 4);
    CHECK(rel.contains(rr({1})));
    CHECK(rel.contains(rr({2})));
    CHECK(rel.contains(rr({-1})));
    CHECK(rel.contains(rr({-2})));
    CHECK(rel.multiple_bound(rr({1})) == 2);
    CHECK(rel.multiple_bound(rr({2})) == 1);
    CHECK(rel.fiber(rr({1})).size() == 2);  // a1 and a2
    CHECK(rel.fiber(rr({2})).size() == 1);  // the highest root
    CHECK(rel.max_root() == rr({2}));
}

TEST_CASE("A3 relative to {a1,a3} is a 6-element rank-2 system") {
    RootSystem a3('A', 3);
    RelativeRootSystem rel(a3, {0, 2}, {});
    CHECK(rel.rank() == 2);
    CHECK(rel.elements().size() == 6);
    CHECK(rel.positive().size() == 3);
    CHECK(rel.max_root() == rr({1, 1}));
    CHECK(rel.fiber(rr({1, 0})).size() == 2);  // a1, a1+a2
    CHECK(rel.fiber(rr({1, 1})).size() == 1);  // only a1+a2+a3
    auto [mx, mn] = rel.fiber_extremes(rr({1, 0}));
    CHECK(mn == Root(IntVec{1, 0, 0}));
    CHECK(mx == Root(IntVec{1, 1, 0}));
}

TEST_CASE("split projection is the identity") {
    RootSystem c3('C', 3);
    RelativeRootSystem rel(c3, {0, 1, 2}, {});
    CHECK(rel.elements().size() == c3.roots().size());
    for (const Root& r : c3.roots()) CHECK(rel.project(r) == r);
}

TEST_CASE("projection is linear and Gamma-invariant") {
    RootSystem d4('D', 4);
    // triality orbit {a1,a3,a4} with a2 fixed: the order-3 subgroup
    std::vector<IntVec> gamma;
    for (const auto& sub : d4.automorphisms().subgroup_list)
        if (sub.size() == 3) gamma = sub;
    REQUIRE(!gamma.empty());
    RelativeRootSystem rel(d4, {0, 1, 2, 3}, gamma);
    CHECK(rel.rank() == 2);
    for (const Root& a : d4.roots()) {
        for (const IntVec& g : gamma) CHECK(rel.project(apply_perm(g, a)) == rel.project(a));
        for (const Root& b : d4.roots()) {
            RelativeRoot s = rel.project(a) + rel.project(b);
            CHECK(s == rel.project(a + b));
        }
    }
}

TEST_CASE("invalid projection data is rejected") {
    RootSystem a3('A', 3);
    CHECK_THROWS_AS(RelativeRootSystem(a3, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(RelativeRootSystem(a3, {5}, {}), std::invalid_argument);
    // J = {a1} is not invariant under the flip a1 <-> a3
    CHECK_THROWS_AS(RelativeRootSystem(a3, {0}, {{0, 1, 2}, {2, 1, 0}}),
                    std::invalid_argument);
    // not a diagram automorphism
    CHECK_THROWS_AS(RelativeRootSystem(a3, {0}, {{0, 1, 2}, {1, 0, 2}}),
                    std::invalid_argument);
}

TEST_CASE("bracket sets in split A2") {
    RootSystem a2('A', 2);
    RelativeRootSystem rel(a2, {0, 1}, {});
    auto b1 = rel.bracket({rr({1, 0})}, {rr({0, 1})});
    CHECK(b1 == std::set<RelativeRoot>{rr({1, 1})});
    auto b2 = rel.bracket({rr({1, 1})}, {rr({-1, 0})});
    CHECK(b2 == std::set<RelativeRoot>{rr({0, 1})});
    // (i-j)*a1 reaches both +-a1
    auto b3 = rel.bracket({rr({1, 0})}, {rr({-1, 0})});
    CHECK(b3 == std::set<RelativeRoot>{rr({1, 0}), rr({-1, 0})});
    CHECK(RelativeRootSystem::anti_proportional(rr({1, 0}), rr({-1, 0})));
    CHECK(RelativeRootSystem::anti_proportional(rr({-2}), rr({1})));
    CHECK(!RelativeRootSystem::anti_proportional(rr({1, 0}), rr({0, 1})));
    CHECK(!RelativeRootSystem::anti_proportional(rr({1, 0}), rr({1, 1})));
}

TEST_CASE("bracket with multiples in the BC1 quotient") {
    RootSystem a2('A', 2);
    RelativeRootSystem rel(a2, {0, 1}, {{0, 1}, {1, 0}});
    // i*1 + j*1 hits 2 at i=j=1
    auto b = rel.bracket({rr({1})}, {rr({1})});
    CHECK(b == std::set<RelativeRoot>{rr({2})});
    // 2i - j sweeps every value as i,j > 0 vary
    auto b2 = rel.bracket({rr({2})}, {rr({-1})});
    CHECK(b2 == std::set<RelativeRoot>{rr({1}), rr({-1}), rr({2}), rr({-2})});
}

TEST_CASE("root_interval in the A3 quotient") {
    RootSystem a3('A', 3);
    RelativeRootSystem rel(a3, {0, 2}, {});
    auto [m, n] = rel.root_interval(rr({1, 0}), rr({0, 1}));
    CHECK(m == 0);
    CHECK(n == 1);
    auto [m2, n2] = rel.root_interval(rr({1, 1}), rr({0, 1}));
    CHECK(m2 == 1);
    CHECK(n2 == 0);
    CHECK_THROWS_AS(rel.root_interval(rr({1, 0}), rr({1, 1})), std::invalid_argument);

    // long root of split G2 stretches three steps along a1
    RootSystem g2('G', 2);
    RelativeRootSystem gr(g2, {0, 1}, {});
    auto [m3, n3] = gr.root_interval(rr({0, 1}), rr({1, 0}));
    CHECK(m3 == 0);
    CHECK(n3 == 3);
}

TEST_CASE("special chain between the lowest and highest roots of split A2") {
    RootSystem a2('A', 2);
    RelativeRootSystem rel(a2, {0, 1}, {});
    RelativeRoot amax = rel.max_root();
    auto chain = rel.find_special_chain(-amax, amax);
    REQUIRE(chain.has_value());
    // shortest, lexicographically smallest in canonical order: the simple root
    // (0,1) sorts first, so the chain is (sigma, max, max - sigma) with sigma = a2
    std::vector<RelativeRoot> expect = {rr({0, 1}), rr({1, 1}), rr({1, 0})};
    CHECK(*chain == expect);
    CHECK(rel.is_special_chain(-amax, *chain));
    // from a simple root, one hop suffices
    auto one = rel.find_special_chain(rr({1, 0}), amax);
    REQUIRE(one.has_value());
    CHECK(*one == std::vector<RelativeRoot>{rr({0, 1})});

    // matches the explicit construction, mirrored
    MaxChainResult mc = rel.construct_chain_max();
    CHECK(mc.case_tag == 'a');
    CHECK(mc.sigma == rr({0, 1}));
    REQUIRE(mc.chain.size() == 3);
    std::vector<RelativeRoot> mirrored;
    for (const auto& b : mc.chain) mirrored.push_back(-b);
    CHECK(mirrored == expect);
    CHECK(rel.is_special_chain(amax, mc.chain));
    // witnesses multiply down to the lowest root
    Root cur = a2.highest_root();
    for (std::size_t i = 0; i < mc.chain.size(); ++i) {
        CHECK(rel.project(mc.witnesses[i]) == mc.chain[i]);
        cur = cur + mc.witnesses[i];
        CHECK(a2.is_root(cur));
    }
    CHECK(cur == -a2.highest_root());
}

TEST_CASE("case (b) of the explicit chain construction appears for C2 over {a1}") {
    RootSystem c2('C', 2);
    RelativeRootSystem rel(c2, {0, 1}, {});  // split C2: max = 2a1+a2
    MaxChainResult mc = rel.construct_chain_max();
    CHECK(rel.is_special_chain(rel.max_root(), mc.chain));
    if (mc.case_tag == 'b') CHECK(mc.k >= 2);
}

TEST_CASE("special chain fault injection") {
    RootSystem a2('A', 2);
    std::string why;

    // mixed signs
    RelativeRootSystem rel(a2, {0, 1}, {});
    CHECK(!rel.is_special_chain(-rel.max_root(), {rr({1, 0}), rr({-1, -1})}, &why));
    CHECK(why.find("mixes") != std::string::npos);

    // partial sum leaves the system
    CHECK(!rel.is_special_chain(-rel.max_root(), {rr({1, 0}), rr({1, 0})}, &why));
    CHECK(why.find("partial sum") != std::string::npos);

    // nested-bracket zero: in the BC1 quotient every positive step is
    // proportional, so a chain from -2a to 2a trips the bracket condition
    RelativeRootSystem bc1(a2, {0, 1}, {{0, 1}, {1, 0}});
    CHECK(!bc1.is_special_chain(rr({-2}), {rr({1}), rr({2}), rr({1})}, &why));
    CHECK(why.find("bracket") != std::string::npos);
    CHECK(!bc1.find_special_chain(rr({-2}), rr({2})).has_value());

    // perturbed valid chain
    auto good = rel.find_special_chain(-rel.max_root(), rel.max_root());
    REQUIRE(good.has_value());
    std::vector<RelativeRoot> bad = *good;
    std::swap(bad[0], bad[1]);
    bad[2] = rr({1, 0});
    CHECK(!rel.is_special_chain(-rel.max_root(), bad, &why));
}

TEST_CASE("chain_to_max uses simple steps from positive starts") {
    RootSystem a3('A', 3);
    RelativeRootSystem rel(a3, {0, 2}, {});
    RelativeRoot amax = rel.max_root();
    for (const RelativeRoot& a : rel.elements()) {
        auto chain = rel.chain_to_max(a);
        RelativeRoot p = a;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (a.height() > 0) CHECK(chain[i].height() == 1);
            CHECK(chain[i].height() >= 1);
            CHECK(!RelativeRootSystem::anti_proportional(p, chain[i]));
            if (i == 0 && a.height() < 0) {
                // first step linearly independent of the start
                bool indep = false;
                for (std::size_t x = 0; x < a.c.size(); ++x)
                    for (std::size_t y = x + 1; y < a.c.size(); ++y)
                        if ((long)a.c[x] * chain[0].c[y] != (long)a.c[y] * chain[0].c[x])
                            indep = true;
                CHECK(indep);
            }
            p = p + chain[i];
            CHECK(rel.contains(p));
        }
        CHECK(p == amax);
    }
}

TEST_CASE("rebase_chain transports descending sequences") {
    RootSystem a3('A', 3);
    RelativeRootSystem rel(a3, {0, 2}, {});
    Root amax = a3.highest_root();  // (1,1,1)
    // descend by a3: (1,1,1) -> (1,1,0), endpoint minimal in its fiber? (1,1,0)-a2=(1,0,0)
    // same fiber => not minimal; descend once more by a2+a3 from the top instead:
    std::vector<Root> seq = {Root(IntVec{0, 1, 1})};
    // endpoint (1,0,0) = a1 is fiber-minimal
    auto rb = rel.rebase_chain(amax, seq, Root(IntVec{1, 1, 1}));
    REQUIRE(rb.size() == 1);
    CHECK(rel.project(rb[0]) == rel.project(seq[0]));

    for (const Root& a0 : rel.fiber(rel.max_root())) {
        auto r2 = rel.rebase_chain(amax, seq, a0);
        Root cur = a0;
        for (const Root& a : r2) {
            CHECK(a.height() > 0);
            cur = cur - a;
            CHECK(a3.is_root(cur));
        }
        CHECK(cur == Root(IntVec{1, 0, 0}));
    }

    // hypothesis violations are rejected
    CHECK_THROWS_AS(rel.rebase_chain(Root(IntVec{1, 0, 0}), seq, amax), std::invalid_argument);
    CHECK_THROWS_AS(rel.rebase_chain(amax, {Root(IntVec{0, 1, 0})}, amax),
                    std::invalid_argument);  // zero projection step
}

TEST_CASE("verify_section3 passes on the hand roster") {
    struct Case {
        char s;
        int r;
        std::vector<int> J;
        bool swapgroup;
    } roster[] = {
        {'A', 2, {0, 1}, false},    {'A', 3, {0, 2}, false},    {'C', 2, {0, 1}, false},
        {'C', 2, {0}, false},       {'B', 3, {0, 1, 2}, false}, {'A', 3, {0, 1, 2}, true},
        {'C', 3, {0, 1}, false},
    };
    for (const auto& c : roster) {
        RootSystem sys(c.s, c.r);
        std::vector<IntVec> gamma;
        if (c.swapgroup)
            for (const auto& sub : sys.automorphisms().subgroup_list)
                if (sub.size() == 2) gamma = sub;
        RelativeRootSystem rel(sys, c.J, gamma);
        auto results = rel.verify_section3();
        CHECK(results.size() >= 7);
        for (const auto& r : results) {
            if (r.lemma == "3.1m") continue;  // measured analogue, not asserted
            INFO(c.s << c.r << " lemma " << r.lemma << ": " << r.witness);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("verify_section3 on D4 with triality") {
    RootSystem d4('D', 4);
    std::vector<IntVec> gamma;
    for (const auto& sub : d4.automorphisms().subgroup_list)
        if (sub.size() == 3) gamma = sub;
    RelativeRootSystem rel(d4, {0, 1, 2, 3}, gamma);
    for (const auto& r : rel.verify_section3()) {
        if (r.lemma == "3.1m") continue;
        INFO("lemma " << r.lemma << ": " << r.witness);
        CHECK(r.pass);
    }
}

TEST_CASE("rank-1 quotients skip the rank-2 lemmas without failing") {
    RootSystem a2('A', 2);
    RelativeRootSystem rel(a2, {0, 1}, {{0, 1}, {1, 0}});
    auto results = rel.verify_section3();
    bool saw_measurement = false;
    for (const auto& r : results) {
        if (r.lemma == "3.1m") {
            saw_measurement = true;  // Gamma nontrivial: measured variant, not asserted
            continue;
        }
        INFO("lemma " << r.lemma << ": " << r.witness);
        CHECK(r.pass);
    }
    CHECK(saw_measurement);
}

TEST_CASE("case enumeration") {
    auto all = enumerate_cases(2, 1);
    int a2_cases = 0;
    for (const auto& c : all)
        if (c.series == 'A' && c.rank == 2) ++a2_cases;
    CHECK(a2_cases == 4);  // three J under id, one under the swap group

    auto strict = enumerate_cases(2, 2);
    for (const auto& c : strict) {
        RootSystem sys(c.series, c.rank);
        RelativeRootSystem rel(sys, c.J, c.Gamma);
        CHECK(rel.rank() >= 2);
    }
    // labels are unique
    std::set<std::string> labels;
    for (const auto& c : all) CHECK(labels.insert(c.label()).second);
}
