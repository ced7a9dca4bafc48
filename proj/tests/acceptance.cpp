// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Heavy campaigns print their measured scope alongside the verdict.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "iso/grouplab.hpp"
#include "iso/steinberg.hpp"

using namespace iso;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void start() { g_t0 = std::chrono::steady_clock::now(); }

void verdict(int num, const std::string& what, bool pass, const std::string& detail) {
    double sec = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - g_t0)
                     .count() /
                 1000.0;
    std::printf("[%s] %2d. %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", num, what.c_str(),
                detail.c_str(), sec);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::vector<int> split_J(int rank) {
    std::vector<int> j(rank);
    for (int i = 0; i < rank; ++i) j[i] = i;
    return j;
}

struct RosterCase {
    char series;
    int rank;
    std::vector<int> J;
};

// relcalc roster: A2 split; A3/{a1,a3}; C2/{a1}; C2 split; C3/{a1,a2}
const std::vector<RosterCase> kRelRoster = {
    {'A', 2, {0, 1}}, {'A', 3, {0, 2}}, {'C', 2, {0}}, {'C', 2, {0, 1}}, {'C', 3, {0, 1}}};

std::string case_label(const RosterCase& c) {
    std::string s(1, c.series);
    s += std::to_string(c.rank) + "/J={";
    for (std::size_t i = 0; i < c.J.size(); ++i) s += (i ? "," : "") + std::to_string(c.J[i]);
    return s + "}";
}

// ------------------------------------------------------------------ 1

void criterion1() {
    start();
    std::vector<RelCase> cases = enumerate_cases(8, 2);
    std::atomic<std::size_t> next{0};
    std::atomic<long long> fails{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            RootSystem base(cases[i].series, cases[i].rank);
            RelativeRootSystem rel(base, cases[i].J, cases[i].Gamma);
            for (const LemmaResult& r : rel.verify_section3())
                if (!r.pass && r.lemma != "3.1m") ++fails;  // 3.1m: measured, not asserted
        }
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> pool;
    for (unsigned t = 1; t < hw; ++t) pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : pool) f.get();
    verdict(1, "section-3 campaign, rank <= 8, all Gamma, all invariant J", fails == 0,
            std::to_string(cases.size()) + " cases, " + std::to_string(fails.load()) +
                " counterexamples");
}

// ------------------------------------------------------------------ 2

void criterion2() {
    start();
    bool ok = true;
    long long sym_pairs = 0, num_pairs = 0;
    struct Sys {
        char series;
        int rank;
    };
    for (Sys s : {Sys{'A', 1}, Sys{'A', 2}, Sys{'A', 3}, Sys{'A', 4}, Sys{'B', 2}, Sys{'B', 3},
                  Sys{'B', 4}, Sys{'C', 2}, Sys{'C', 3}, Sys{'C', 4}, Sys{'D', 4}, Sys{'F', 4},
                  Sys{'G', 2}}) {
        RootSystem sys(s.series, s.rank);
        StructureConstantTable tab(sys);
        Rep rep = adjoint_rep(sys, tab);
        CommutatorReport r = verify_commutator_formula(sys, rep, tab);
        sym_pairs += static_cast<long long>(r.pairs.size());
        ok = ok && r.all_ok;
    }
    // E6: exhaustive (s,t) over all three primes for every pair (152 >= 100
    // samples/pair). E7, E8: one full all-pairs pass per prime (C11 extracted
    // for 100% of pairs) plus a 300-pair seeded subsample with exhaustive
    // (s,t) per prime.
    for (int rk : {6, 7, 8}) {
        RootSystem sys('E', rk);
        StructureConstantTable tab(sys);
        Rep rep = adjoint_rep(sys, tab);
        for (long long p : {5, 7, 11}) {
            if (rk == 6) {
                CommutatorReport r =
                    verify_commutator_formula_mod(sys, rep, tab, p, 1000u + rk, -1, -1);
                num_pairs += static_cast<long long>(r.pairs.size());
                ok = ok && r.all_ok;
            } else {
                CommutatorReport full =
                    verify_commutator_formula_mod(sys, rep, tab, p, 1000u + rk, -1, 1);
                CommutatorReport sub =
                    verify_commutator_formula_mod(sys, rep, tab, p, 2000u + rk, 300, -1);
                num_pairs += static_cast<long long>(full.pairs.size());
                ok = ok && full.all_ok && sub.all_ok;
            }
        }
    }
    verdict(2, "Chevalley commutator formula, C11 = +-N in all pairs", ok,
            std::to_string(sym_pairs) + " symbolic pairs, " + std::to_string(num_pairs) +
                " numeric pair checks over Z/5, Z/7, Z/11");
}

// ------------------------------------------------------------------ 3

void criterion3() {
    start();
    bool ok = true;
    std::string why;
    long long qmaps = 0, nmaps = 0;
    long long abe_checked = 0;

    for (const RosterCase& rc : kRelRoster) {
        RelContext ctx(rc.series, rc.rank, rc.J);
        const RelativeRootSystem& rel = ctx.rel();

        auto w_all = [](int) { return 1; };
        auto w_slot0 = [](int v) { return v < kSlot1Base ? 1 : 0; };
        auto w_slot1 = [](int v) { return v >= kSlot1Base ? 1 : 0; };

        for (const RelativeRoot& a : rel.elements()) {
            const QMap& q = ctx.compute_q(a);  // throws on an eq:sum violation
            ++qmaps;
            for (const auto& [i, comps] : q.q)
                for (const Poly& c : comps) {
                    int deg = 0;
                    if (!c.is_zero() && (!c.is_homogeneous(w_all, &deg) || deg != i)) {
                        ok = false;
                        why = "q^" + std::to_string(i) + " not homogeneous at " + case_label(rc);
                    }
                }
        }
        for (const RelativeRoot& a : rel.elements())
            for (const RelativeRoot& b : rel.elements()) {
                if (a == b || RelativeRootSystem::anti_proportional(a, b)) continue;
                const NMap& nm = ctx.compute_N(a, b);  // throws on an eq:Chev violation
                ++nmaps;
                for (const auto& [ij, comps] : nm.n)
                    for (const Poly& c : comps) {
                        int d0 = 0, d1 = 0;
                        if (c.is_zero()) continue;
                        if (!c.is_homogeneous(w_slot0, &d0) || d0 != ij.first ||
                            !c.is_homogeneous(w_slot1, &d1) || d1 != ij.second) {
                            ok = false;
                            why = "N bidegree violation at " + case_label(rc);
                        }
                    }
            }

        // round-trip factorization over the full positive relative cone, in a
        // faithful classical representation
        RelContext cls(rc.series, rc.rank, rc.J, "classical");
        std::vector<Root> cone;
        PolyMat M = pm_identity(cls.rep().dim);
        int var = kCallerVarBase;
        for (const RelativeRoot& a : cls.rel().positive()) {
            std::vector<Poly> v;
            for (int k = 0; k < cls.vrank(a); ++k) v.push_back(Poly::var(var++));
            M = pm_mul(M, cls.rel_root_element(a, v));
            for (const Root& f : cls.rel().fiber(a)) cone.push_back(f);
        }
        std::sort(cone.begin(), cone.end());
        std::vector<Poly> coords = cls.unipotent_factorize(M, cone);
        PolyMat back = pm_identity(cls.rep().dim);
        for (std::size_t i = 0; i < cone.size(); ++i)
            back = pm_mul(back, root_element(cls.sys(), cls.rep(), cone[i], coords[i]));
        if (!(back == M)) {
            ok = false;
            why = "round-trip factorization mismatch at " + case_label(rc);
        }

        // Lemma 5.1, exhaustive over F2, F3, Z/4 for the type-A cases
        if (rc.series == 'A')
            for (long long m : {2, 3, 4})
                for (const RelativeRoot& A : rel.elements())
                    for (const RelativeRoot& B : rel.elements()) {
                        if (A == B || RelativeRootSystem::anti_proportional(A, B)) continue;
                        if (!rel.contains(A + B)) continue;
                        AbeReport r = ctx.check_ABe(A, B, m);
                        abe_checked += r.checked;
                        if (!r.pass) {
                            ok = false;
                            why = "Lemma 5.1: " + r.counterexample;
                        }
                    }
    }
    verdict(3, "relcalc identities on the roster + Lemma 5.1 exhaustive", ok,
            ok ? std::to_string(qmaps) + " q-maps, " + std::to_string(nmaps) + " N-maps, " +
                     std::to_string(abe_checked) + " Lemma 5.1 evaluations"
               : why);
}

// ------------------------------------------------------------------ 4

void criterion4() {
    start();
    bool ok = true;
    std::string why;
    long long chains = 0;
    for (const RosterCase& rc : kRelRoster) {
        RelContext ctx(rc.series, rc.rank, rc.J);
        const RelativeRootSystem& rel = ctx.rel();
        for (const RelativeRoot& delta : rel.elements())
            for (const RelativeRoot& gamma : rel.positive()) {
                auto chain = rel.find_special_chain(delta, gamma);
                if (!chain) continue;
                ChainReport r = ctx.check_chain_comm(delta, *chain);
                ++chains;
                if (!r.pass) {
                    ok = false;
                    why = case_label(rc) + ": " + r.note;
                }
            }
    }
    // The check is an exact polynomial identity, which subsumes the numeric
    // tuple campaigns (every tuple over every ring satisfies it).
    verdict(4, "Lemma 5.2 nested commutators on every emitted special chain", ok,
            ok ? std::to_string(chains) + " chains verified symbolically" : why);
}

// ------------------------------------------------------------------ 5

void criterion5() {
    start();
    bool ok = true;
    std::ostringstream det;
    struct FC {
        RosterCase rc;
        long long p;
    };
    for (FC fc : {FC{{'A', 3, {0, 2}}, 2}, FC{{'A', 3, {0, 2}}, 3}, FC{{'C', 3, {0, 1}}, 3}}) {
        RelContext ctx(fc.rc.series, fc.rc.rank, fc.rc.J);
        FReport r = ctx.check_F_surjective(fc.p);
        ok = ok && r.pass;
        det << case_label(fc.rc) << " mod " << fc.p << ": span " << r.span_dim << "/"
            << r.target_dim << "  ";
    }
    verdict(5, "Lemma 5.5 F-map spans End(V_max)", ok, det.str());
}

// ------------------------------------------------------------------ 6, 7

std::vector<std::unique_ptr<StCase>> g_stcases;

void criterion6() {
    start();
    bool ok = true;
    std::ostringstream det;
    struct W {
        char series;
        int rank;
        const char* ring;
    };
    for (W w : {W{'A', 2, "F2"}, W{'A', 2, "F3"}, W{'A', 2, "Z/4"}, W{'C', 2, "F3"}}) {
        g_stcases.push_back(std::make_unique<StCase>(w.series, w.rank, split_J(w.rank),
                                                     FiniteRing::parse(w.ring)));
        StCase& c = *g_stcases.back();
        if (!c.table.complete) {
            ok = false;
            det << w.series << w.rank << "/" << w.ring << ": overflow  ";
            continue;
        }
        K2Report r = verify_K2_centrality(c);
        ok = ok && r.pass;
        det << w.series << w.rank << "/" << w.ring << ": |St|=" << r.st_order
            << " |E|=" << r.e_order << " kernel=" << r.kernel_order << "  ";
    }
    verdict(6, "Theorem 1.4: s_P well-defined, kernel central (orders measured)", ok, det.str());
}

void criterion7() {
    start();
    bool ok = true;
    std::string why;
    long long monos = 0;
    for (const auto& cp : g_stcases) {
        const StCase& c = *cp;
        MonoReport all = verify_mono(c, c.eg.ctx().rel().positive());
        ++monos;
        if (!all.pass) {
            ok = false;
            why = "U_P lift order mismatch";
        }
        for (const RelativeRoot& a : c.eg.ctx().rel().elements()) {
            MonoReport one = verify_mono(c, {a});
            ++monos;
            if (!one.pass) {
                ok = false;
                why = "single-root lift mismatch at " + to_string(a);
            }
        }
    }
    FiniteRing z4 = FiniteRing::zmod(4);
    StKerReport k1 = verify_st_ker('A', 2, split_J(2), z4, z4.ideal_generated({2}));
    FiniteRing f2t = FiniteRing::parse("F2[t]/(t^2)");
    StKerReport k2 = verify_st_ker('A', 2, split_J(2), f2t, f2t.ideal_generated({2}));
    if (!k1.pass || !k2.pass) {
        ok = false;
        why = "verify_st_ker index identity failed";
    }
    std::ostringstream det;
    if (ok)
        det << monos << " mono checks; st_ker indices " << k1.index << " (Z/4,(2)), " << k2.index
            << " (F2[t]/(t^2),(t))";
    verdict(7, "Lemma 4.4 lifts + Lemma 4.6 index identity", ok, ok ? det.str() : why);
    g_stcases.clear();
}

// ------------------------------------------------------------------ 8

void criterion8() {
    start();
    bool ok = true;
    std::string why;
    long long closures = 0, ideal_rows = 0, discrepancies = 0;
    const unsigned kSeedBase = 20260823u;
    struct LC {
        char series;
        int rank;
        std::vector<int> J;
        const char* ring;
    };
    const std::vector<LC> roster = {
        {'A', 2, {0, 1}, "Z/4"}, {'A', 2, {0, 1}, "F2[t]/(t^2)"}, {'A', 2, {0, 1}, "F2"},
        {'A', 2, {0, 1}, "F3"},  {'A', 2, {0, 1}, "F4"},          {'A', 3, {0, 1}, "F2"},
        {'C', 2, {0, 1}, "F3"},  {'C', 2, {0, 1}, "F5"}};
    for (std::size_t ci = 0; ci < roster.size() && ok; ++ci) {
        const LC& lc = roster[ci];
        FiniteRing R = FiniteRing::parse(lc.ring);
        ElementaryGroup eg(lc.series, lc.rank, lc.J, R);
        for (const Ideal& I : R.ideals()) {
            std::vector<int> N = elementary_normal_level(eg, I);
            std::vector<int> star = congruence_subgroup(eg, I);
            IdealWitness w = extract_ideal(eg, N);
            ++ideal_rows;
            if (!w.found) {
                ok = false;
                why = std::string(lc.ring) + ": no fitting ideal for E(R,I)";
                break;
            }
            if (N == star) {
                if (w.ideal != I) {
                    ok = false;
                    why = std::string(lc.ring) + ": I(E(R,I)) != I with E(R,I) = E*(R,I)";
                    break;
                }
            } else {
                ++discrepancies;  // measured: E(R,I) proper in E*_P(R,I)
                if (w.ideal != I) {
                    ok = false;
                    why = std::string(lc.ring) + ": I(E(R,I)) != I";
                    break;
                }
            }
        }
        std::mt19937 rng(kSeedBase + static_cast<unsigned>(ci));
        for (int s = 0; s < 25 && ok; ++s) {
            int g = static_cast<int>(rng() % eg.group().size());
            std::vector<int> N = eg.group().normal_closure({g});
            IdealWitness w = extract_ideal(eg, N);
            ++closures;
            if (!w.found) {
                ok = false;
                why = std::string(lc.ring) + ": no fitting ideal for ncl(#" + std::to_string(g) +
                      ")";
            }
        }
    }
    verdict(8, "Theorem 1.3: unique fitting ideal for every tested normal subgroup", ok,
            ok ? std::to_string(ideal_rows) + " E(R,I) rows, " + std::to_string(closures) +
                     " seeded closures (seed base " + std::to_string(kSeedBase) + "), " +
                     std::to_string(discrepancies) + " E(R,I) != E*(R,I) observations"
               : why);
}

// ------------------------------------------------------------------ 9

void criterion9() {
    start();
    bool ok = true;
    std::ostringstream det;
    struct GC {
        char series;
        int rank;
        const char* ring;
    };
    for (GC gc : {GC{'A', 2, "F2"}, GC{'A', 2, "F4"}, GC{'C', 2, "F3"}}) {
        ElementaryGroup eg(gc.series, gc.rank, split_J(gc.rank), FiniteRing::parse(gc.ring));
        GaussReport r = gauss_and_diameter(eg);
        ok = ok && r.gauss_all && r.diameter >= 0;
        det << gc.series << gc.rank << "/" << gc.ring << ": " << r.checked
            << " elements, diameter " << r.diameter << ", layers [";
        for (std::size_t i = 0; i < r.layer_histogram.size(); ++i)
            det << (i ? "," : "") << r.layer_histogram[i];
        det << "]  ";
    }
    verdict(9, "Lemma 6.1: Gauss decomposition 100%, finite Cayley diameter", ok, det.str());
}

// ------------------------------------------------------------------ 10

nlohmann::json determinism_suite() {
    nlohmann::json out;
    RelContext a2('A', 2, {0, 1});
    out["maps"] = a2.maps_to_json();
    RelContext a3('A', 3, {0, 2});
    FReport fr = a3.check_F_surjective(3);
    out["f_span"] = {fr.span_dim, fr.target_dim, fr.tuples_used};

    FiniteRing z4 = FiniteRing::zmod(4);
    ElementaryGroup eg('A', 2, {0, 1}, z4);
    std::mt19937 rng(20260823u);
    nlohmann::json ideals = nlohmann::json::array();
    for (int s = 0; s < 25; ++s) {
        int g = static_cast<int>(rng() % eg.group().size());
        IdealWitness w = extract_ideal(eg, eg.group().normal_closure({g}));
        ideals.push_back({g, w.found, z4.ideal_index(w.ideal)});
    }
    out["closures"] = ideals;

    StCase st('A', 2, {0, 1}, FiniteRing::parse("F3"));
    K2Report k2 = verify_K2_centrality(st);
    out["steinberg"] = {k2.st_order, k2.e_order, k2.kernel_order, k2.central};

    RootSystem e6('E', 6);
    StructureConstantTable tab(e6);
    Rep rep = adjoint_rep(e6, tab);
    CommutatorReport cr = verify_commutator_formula_mod(e6, rep, tab, 7, 42u, 50, 3);
    nlohmann::json pairs = nlohmann::json::array();
    for (const CommutatorEntry& e : cr.pairs)
        pairs.push_back({to_string(e.a), to_string(e.b), e.ok});
    out["commutator_sample"] = pairs;
    return out;
}

void criterion10() {
    start();
    std::string run1 = determinism_suite().dump();
    std::string run2 = determinism_suite().dump();
    verdict(10, "determinism: identical reports across reruns with fixed seeds", run1 == run2,
            std::to_string(run1.size()) + " report bytes compared");
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10();
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        return 1;
    }
    std::printf("%s\n", g_failures == 0 ? "ACCEPTANCE: all criteria passed"
                                        : "ACCEPTANCE: FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
