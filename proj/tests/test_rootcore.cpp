#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <set>
#include <numeric>
#include <algorithm>

#include "iso/rootcore.hpp"

using namespace iso;

namespace {

// Independent oracle: closure of the simple roots under the reflections
// s_b(a) = a - <a,b~> b, b simple. Counts must match the string-based builder.
std::size_t reflection_closure_count(const RootSystem& sys) {
    std::set<IntVec> all;
    std::vector<Root> frontier = sys.simple_roots();
    for (const Root& r : frontier) all.insert(r.c);
    while (!frontier.empty()) {
        std::vector<Root> next;
        for (const Root& a : frontier) {
            for (int b = 0; b < sys.rank(); ++b) {
                int pair = 0;
                for (int i = 0; i < sys.rank(); ++i) pair += a.c[i] * sys.cartan()[i][b];
                Root refl = a;
                refl.c[b] -= pair;
                if (all.insert(refl.c).second) next.push_back(refl);
                Root neg = -a;
                if (all.insert(neg.c).second) next.push_back(neg);
            }
        }
        frontier = std::move(next);
    }
    return all.size();
}

}  // namespace

TEST_CASE("A2 has 6 roots, 3 positive") {
    RootSystem sys('A', 2);
    CHECK(sys.roots().size() == 6);
    CHECK(sys.positive_roots().size() == 3);
    CHECK(reflection_closure_count(sys) == 6);
}

TEST_CASE("G2 has 12 roots, maximal height 5") {
    RootSystem sys('G', 2);
    CHECK(sys.roots().size() == 12);
    CHECK(reflection_closure_count(sys) == 12);
    CHECK(sys.highest_root().height() == 5);
}

TEST_CASE("A1 roots are +-a1") {
    RootSystem sys('A', 1);
    REQUIRE(sys.roots().size() == 2);
    CHECK(sys.roots()[0].c == IntVec{-1});
    CHECK(sys.roots()[1].c == IntVec{1});
}

TEST_CASE("root counts match reflection closure for all supported systems") {
    struct { char s; int r; std::size_t n; } cases[] = {
        {'A', 3, 12}, {'B', 2, 8}, {'B', 3, 18}, {'C', 3, 18}, {'D', 4, 24},
        {'F', 4, 48}, {'E', 6, 72}, {'E', 7, 126}, {'E', 8, 240},
    };
    for (auto& c : cases) {
        RootSystem sys(c.s, c.r);
        CHECK(sys.roots().size() == c.n);
        CHECK(reflection_closure_count(sys) == c.n);
    }
}

TEST_CASE("highest root of E8 has height 29") {
    RootSystem sys('E', 8);
    CHECK(sys.highest_root().height() == 29);  // coefficient sum of (2,3,4,6,5,4,3,2)
}

TEST_CASE("height is linear and roots appear once") {
    RootSystem sys('C', 3);
    std::set<IntVec> seen;
    for (const Root& r : sys.roots()) {
        CHECK((-r).height() == -r.height());
        CHECK(sys.is_root(-r));
        CHECK(seen.insert(r.c).second);
    }
}

TEST_CASE("root_sum membership") {
    RootSystem sys('A', 2);
    Root a1(IntVec{1, 0}), a2(IntVec{0, 1});
    auto s = sys.root_sum(a1, a2);
    REQUIRE(s.has_value());
    CHECK(s->c == IntVec{1, 1});
    CHECK(!sys.root_sum(a1, a1).has_value());
    CHECK(!sys.root_sum(a1, -a1).has_value());
}

TEST_CASE("root strings have length <= 4 and reflections are roots") {
    for (auto desc : {std::pair<char,int>{'G',2}, {'B',3}, {'A',3}, {'F',4}}) {
        RootSystem sys(desc.first, desc.second);
        for (const Root& a : sys.roots())
            for (const Root& b : sys.roots()) {
                if (a == b || a == -b) continue;
                int len = 1;
                Root up = a, dn = a;
                while (sys.is_root(up + b)) { up = up + b; ++len; }
                while (sys.is_root(dn - b)) { dn = dn - b; ++len; }
                CHECK(len <= 4);
                Root refl = a - b * sys.pairing(a, b);
                CHECK(sys.is_root(refl));
            }
    }
}

TEST_CASE("diagram automorphisms") {
    CHECK(RootSystem('A', 2).automorphisms().order() == 2);
    CHECK(RootSystem('D', 4).automorphisms().order() == 6);
    CHECK(RootSystem('B', 2).automorphisms().order() == 1);
    CHECK(RootSystem('A', 1).automorphisms().order() == 1);
    CHECK(RootSystem('E', 6).automorphisms().order() == 2);
    CHECK(RootSystem('E', 7).automorphisms().order() == 1);

    // Exhaustive scan at rank <= 4: returned permutations are exactly the
    // Cartan-preserving ones.
    for (auto desc : {std::pair<char,int>{'A',4}, {'D',4}, {'C',3}}) {
        RootSystem sys(desc.first, desc.second);
        auto g = sys.automorphisms();
        IntVec perm(sys.rank());
        std::iota(perm.begin(), perm.end(), 0);
        std::size_t count = 0;
        do {
            bool ok = true;
            for (int i = 0; i < sys.rank() && ok; ++i)
                for (int j = 0; j < sys.rank() && ok; ++j)
                    if (sys.cartan()[perm[i]][perm[j]] != sys.cartan()[i][j]) ok = false;
            bool in = std::find(g.elements.begin(), g.elements.end(), perm) != g.elements.end();
            CHECK(ok == in);
            if (ok) ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(count == g.order());
    }
}

TEST_CASE("subgroup lattice of D4 automorphisms") {
    auto g = RootSystem('D', 4).automorphisms();
    // S3 has 6 subgroups: 1, three of order 2, one of order 3, S3.
    CHECK(g.subgroup_list.size() == 6);
}

TEST_CASE("extended diagram shapes") {
    {
        auto adj = RootSystem('A', 2).extended_diagram();  // 3-cycle
        int edges = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (adj[i][j]) ++edges;
        CHECK(edges == 3);
    }
    {
        auto adj = RootSystem('A', 1).extended_diagram();  // affine A1 double bond
        CHECK(adj[0][1] == 4);
    }
    {
        auto adj = RootSystem('G', 2).extended_diagram();  // path of 3 nodes
        CHECK(adj[0][1] != 0);
        CHECK(adj[1][2] != 0);
        CHECK(adj[0][2] == 0);
    }
}

TEST_CASE("json serialization") {
    auto j = RootSystem('B', 2).to_json();
    CHECK(j["series"] == "B");
    CHECK(j["rank"] == 2);
    CHECK(j["roots"].size() == 8);
}

TEST_CASE("unsupported descriptor throws") {
    CHECK_THROWS_AS(RootSystem('H', 3), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem('A', 9), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem('D', 3), std::invalid_argument);
}
