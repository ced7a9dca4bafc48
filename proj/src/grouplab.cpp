#include "iso/grouplab.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace iso {

ElementaryGroup::ElementaryGroup(char series, int rank, std::vector<int> J, FiniteRing R,
                                 std::size_t budget)
    : ctx_(series, rank, std::move(J), "classical"), ring_(std::move(R)) {
    std::vector<int> all(ring_.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<RingMat> gens;
    std::vector<GenLabel> labels;
    for (const RelativeRoot& alpha : ctx_.rel().elements()) {
        for (const std::vector<int>& v : tuples(alpha, all)) {
            if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
            gens.push_back(rel_element(alpha, v));
            labels.push_back({alpha, v});
        }
    }
    grp_ = std::make_unique<MatrixGroup>(ring_, dim(), std::move(gens), std::move(labels), budget);
}

RingMat ElementaryGroup::ring_root_element(const Root& a, int t) const {
    const Rep& rep = ctx_.rep();
    auto dps = rep.divided_powers(ctx_.sys().root_index(a));
    int d = rep.dim;
    RingMat out(d * d, 0);
    int tk = ring_.one();
    for (std::size_t k = 0; k < dps.size(); ++k) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (dps[k][i][j])
                    out[i * d + j] = ring_.add(
                        out[i * d + j], ring_.mul(tk, ring_.from_int(dps[k][i][j])));
        tk = ring_.mul(tk, t);
    }
    return out;
}

RingMat ElementaryGroup::rel_element(const RelativeRoot& alpha, const std::vector<int>& v) const {
    std::vector<Root> fib = ctx_.rel().fiber(alpha);
    std::sort(fib.begin(), fib.end());
    if (fib.size() != v.size()) throw std::invalid_argument("tuple rank mismatch");
    RingMat M = rm_identity(dim());
    for (std::size_t k = 0; k < fib.size(); ++k)
        M = rm_mul(ring_, M, ring_root_element(fib[k], v[k]), dim());
    return M;
}

int ElementaryGroup::rel_element_index(const RelativeRoot& alpha,
                                       const std::vector<int>& v) const {
    return grp_->index_of(rel_element(alpha, v));
}

std::vector<std::vector<int>> ElementaryGroup::tuples(const RelativeRoot& alpha,
                                                      const std::vector<int>& entries) const {
    int d = ctx_.vrank(alpha);
    std::vector<std::vector<int>> out = {{}};
    for (int k = 0; k < d; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& t : out)
            for (int e : entries) {
                auto u = t;
                u.push_back(e);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<int> congruence_subgroup(const ElementaryGroup& eg, const Ideal& I) {
    const MatrixGroup& G = eg.group();
    const FiniteRing& R = eg.ring();
    int d = eg.dim();
    RingMat id = rm_identity(d);
    std::vector<int> out;
    for (std::size_t i = 0; i < G.size(); ++i) {
        RingMat m = G.element(static_cast<int>(i));
        bool ok = true;
        for (int k = 0; k < d * d && ok; ++k)
            if (!R.ideal_contains(I, R.sub(m[k], id[k]))) ok = false;
        if (ok) out.push_back(static_cast<int>(i));
    }
    return out;
}

namespace {

std::vector<int> level_generators(const ElementaryGroup& eg, const Ideal& I) {
    std::vector<int> gens;
    for (const RelativeRoot& alpha : eg.ctx().rel().elements())
        for (const std::vector<int>& v : eg.tuples(alpha, I)) {
            if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
            gens.push_back(eg.rel_element_index(alpha, v));
        }
    return gens;
}

}  // namespace

std::vector<int> elementary_level(const ElementaryGroup& eg, const Ideal& I) {
    return eg.group().subgroup_closure(level_generators(eg, I));
}

std::vector<int> elementary_normal_level(const ElementaryGroup& eg, const Ideal& I) {
    return eg.group().normal_closure(level_generators(eg, I));
}

IdealWitness extract_ideal(const ElementaryGroup& eg, const std::vector<int>& N) {
    const MatrixGroup& G = eg.group();
    if (!G.is_normal(N)) throw std::invalid_argument("subgroup is not normal");
    std::vector<char> member(G.size(), 0);
    for (int x : N) member[x] = 1;

    const FiniteRing& R = eg.ring();
    std::vector<int> all(R.size());
    std::iota(all.begin(), all.end(), 0);

    IdealWitness w;
    const auto& elements = eg.ctx().rel().elements();
    w.M.resize(elements.size());
    for (std::size_t ai = 0; ai < elements.size(); ++ai)
        for (const std::vector<int>& v : eg.tuples(elements[ai], all))
            if (member[eg.rel_element_index(elements[ai], v)]) w.M[ai].push_back(v);

    std::vector<Ideal> fits;
    for (const Ideal& I : R.ideals()) {
        bool ok = true;
        for (std::size_t ai = 0; ai < elements.size() && ok; ++ai) {
            std::size_t want = 1;
            for (int k = 0; k < eg.ctx().vrank(elements[ai]); ++k) want *= I.size();
            if (w.M[ai].size() != want) {
                ok = false;
                break;
            }
            for (const auto& v : w.M[ai])
                for (int e : v)
                    if (!R.ideal_contains(I, e)) {
                        ok = false;
                        break;
                    }
        }
        if (ok) fits.push_back(I);
    }
    if (fits.size() == 1) {
        w.found = true;
        w.ideal = fits[0];
    } else if (fits.empty()) {
        w.note = "no ideal matches the root-element intersections";
    } else {
        w.note = "ideal is not unique";  // impossible when some V_alpha != 0
    }
    return w;
}

IdealWitness finite_index_ideal(const ElementaryGroup& eg, const std::vector<int>& N) {
    IdealWitness w = extract_ideal(eg, N);
    if (w.found)
        w.note = "finite-index normal subgroup carries the congruence level (" +
                 std::to_string(w.ideal.size()) + " elements)";
    return w;
}

bool verify_E_gen(const ElementaryGroup& eg, const Ideal& I) {
    const MatrixGroup& G = eg.group();
    const FiniteRing& R = eg.ring();
    const RelativeRootSystem& rel = eg.ctx().rel();
    int d = eg.dim();

    std::vector<int> all(R.size());
    std::iota(all.begin(), all.end(), 0);

    std::vector<int> zgens;
    for (const RelativeRoot& alpha : rel.elements()) {
        int m = rel.multiple_bound(alpha);
        // E_alpha(R) = < X_{i alpha}(V), all multiples, both signs >
        std::vector<int> egens;
        for (int i = 1; i <= m; ++i)
            for (int sgn : {1, -1}) {
                RelativeRoot t = alpha * (sgn * i);
                if (!rel.contains(t)) continue;
                for (const auto& v : eg.tuples(t, all)) {
                    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
                    egens.push_back(eg.rel_element_index(t, v));
                }
            }
        std::vector<int> Ea = G.subgroup_closure(egens);

        // all u-combinations with u_i over I
        std::vector<std::vector<std::vector<int>>> layers;
        for (int i = 1; i <= m; ++i)
            if (rel.contains(alpha * i)) layers.push_back(eg.tuples(alpha * i, I));
        std::vector<RingMat> prods = {rm_identity(d)};
        {
            std::vector<RingMat> cur = prods;
            int level = 1;
            for (const auto& layer : layers) {
                std::vector<RingMat> next;
                for (const RingMat& p : cur)
                    for (const auto& u : layer)
                        next.push_back(rm_mul(R, p, eg.rel_element(alpha * level, u), d));
                cur = std::move(next);
                ++level;
            }
            prods = std::move(cur);
        }
        for (int a : Ea) {
            RingMat am = G.element(a);
            RingMat ainv = rm_inverse(R, am, d);
            for (const RingMat& p : prods) {
                int z = G.index_of(rm_mul(R, rm_mul(R, am, p, d), ainv, d));
                if (z != 0) zgens.push_back(z);
            }
        }
    }
    std::sort(zgens.begin(), zgens.end());
    zgens.erase(std::unique(zgens.begin(), zgens.end()), zgens.end());
    return G.subgroup_closure(zgens) == elementary_normal_level(eg, I);
}

GaussReport gauss_and_diameter(const ElementaryGroup& eg) {
    const MatrixGroup& G = eg.group();
    const FiniteRing& R = eg.ring();
    const RelativeRootSystem& rel = eg.ctx().rel();
    int d = eg.dim();

    std::vector<int> all(R.size());
    std::iota(all.begin(), all.end(), 0);
    auto half_gens = [&](bool positive) {
        std::vector<int> gens;
        for (const RelativeRoot& alpha : rel.elements()) {
            if ((alpha.height() > 0) != positive) continue;
            for (const auto& v : eg.tuples(alpha, all)) {
                if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
                gens.push_back(eg.rel_element_index(alpha, v));
            }
        }
        return gens;
    };
    std::vector<int> U = G.subgroup_closure(half_gens(true));
    std::vector<int> Um = G.subgroup_closure(half_gens(false));

    std::vector<int> T;
    for (std::size_t i = 0; i < G.size(); ++i) {
        RingMat m = G.element(static_cast<int>(i));
        bool diag = true;
        for (int r = 0; r < d && diag; ++r)
            for (int c = 0; c < d; ++c)
                if (r != c && m[r * d + c] != 0) {
                    diag = false;
                    break;
                }
        if (diag) T.push_back(static_cast<int>(i));
    }

    // membership table of U * U^- * T
    std::vector<char> uut(G.size(), 0);
    for (int u : U)
        for (int um : Um) {
            int p = G.mul(u, um);
            for (int t : T) uut[G.mul(p, t)] = 1;
        }
    std::vector<int> uinv(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) uinv[i] = G.inverse_of(U[i]);

    GaussReport rpt;
    rpt.gauss_all = true;
    for (std::size_t g = 0; g < G.size(); ++g) {
        ++rpt.checked;
        bool ok = false;
        for (std::size_t i = 0; i < U.size() && !ok; ++i)
            if (uut[G.mul(static_cast<int>(g), uinv[i])]) ok = true;
        if (!ok) {
            rpt.gauss_all = false;
            break;
        }
    }

    // Cayley diameter over U cup U^-: each subgroup element is one step
    std::vector<int> step_gens;
    for (int u : U)
        if (u != 0) step_gens.push_back(u);
    for (int u : Um)
        if (u != 0) step_gens.push_back(u);
    std::vector<int> dist(G.size(), -1);
    std::vector<int> queue = {0};
    dist[0] = 0;
    for (std::size_t at = 0; at < queue.size(); ++at) {
        int cur = queue[at];
        for (int s : step_gens) {
            int nx = G.mul(cur, s);
            if (dist[nx] < 0) {
                dist[nx] = dist[cur] + 1;
                queue.push_back(nx);
            }
        }
    }
    for (std::size_t i = 0; i < G.size(); ++i) {
        int di = dist[i];
        rpt.diameter = std::max(rpt.diameter, di);
        if (di >= static_cast<int>(rpt.layer_histogram.size()))
            rpt.layer_histogram.resize(di + 1, 0);
        ++rpt.layer_histogram[di];
    }
    return rpt;
}

}  // namespace iso
