#include "iso/steinberg.hpp"

#include <algorithm>
#include <stdexcept>

namespace iso {

StCase::StCase(char series, int rank, std::vector<int> J, FiniteRing R,
               std::size_t coset_budget, std::size_t group_budget)
    : eg(series, rank, J, R, group_budget),
      pres(make_presentation(eg.ctx(), eg.ring())),
      table(todd_coxeter(pres, {}, coset_budget)) {}

int StCase::evaluate(const std::vector<int>& word) const {
    const MatrixGroup& G = eg.group();
    int cur = 0;
    for (int s : word) {
        const Presentation::Gen& g = pres.gens[std::abs(s) - 1];
        int gi = eg.rel_element_index(g.alpha, g.v);
        cur = G.mul(cur, s > 0 ? gi : G.inverse_of(gi));
    }
    return cur;
}

K2Report verify_K2_centrality(const StCase& c) {
    K2Report rpt;
    if (!c.table.complete) return rpt;
    const MatrixGroup& G = c.eg.group();
    int L = c.table.nletters;

    rpt.relators_ok = true;
    for (const auto& r : c.pres.relators)
        if (c.evaluate(r) != 0) {
            rpt.relators_ok = false;
            break;
        }

    rpt.st_order = c.table.cosets;
    rpt.e_order = G.size();
    if (!rpt.relators_ok || rpt.st_order % rpt.e_order != 0) return rpt;
    rpt.kernel_order = rpt.st_order / rpt.e_order;

    // image of every coset (regular action): BFS along the action graph
    std::vector<int> img(c.table.cosets, -1);
    std::vector<int> queue = {0};
    img[0] = 0;
    std::vector<int> genidx(c.pres.gens.size()), geninvidx(c.pres.gens.size());
    for (std::size_t g = 0; g < c.pres.gens.size(); ++g) {
        genidx[g] = c.eg.rel_element_index(c.pres.gens[g].alpha, c.pres.gens[g].v);
        geninvidx[g] = G.inverse_of(genidx[g]);
    }
    for (std::size_t at = 0; at < queue.size(); ++at) {
        int cur = queue[at];
        for (int l = 0; l < L; ++l) {
            int nx = c.table.apply(cur, l);
            if (img[nx] >= 0) continue;
            img[nx] = G.mul(img[cur], l % 2 == 0 ? genidx[l / 2] : geninvidx[l / 2]);
            queue.push_back(nx);
        }
    }

    // kernel representatives must commute with every generator
    rpt.central = true;
    std::size_t found = 0;
    for (std::size_t k = 0; k < c.table.cosets && rpt.central; ++k) {
        if (img[k] != 0) continue;
        ++found;
        const std::vector<int>& wk = c.table.repword[k];
        for (std::size_t g = 0; g < c.pres.gens.size(); ++g) {
            int kg = c.table.apply(static_cast<int>(k), 2 * static_cast<int>(g));
            int gcoset = c.table.apply(0, 2 * static_cast<int>(g));
            int gk = gcoset;
            for (int l : wk) gk = c.table.apply(gk, l);
            if (kg != gk) {
                rpt.central = false;
                break;
            }
        }
    }
    rpt.pass = rpt.relators_ok && rpt.central && found == rpt.kernel_order;
    return rpt;
}

MonoReport verify_mono(const StCase& c, const std::vector<RelativeRoot>& S) {
    const RelativeRootSystem& rel = c.eg.ctx().rel();
    for (const RelativeRoot& a : S) {
        if (!rel.contains(a)) throw std::invalid_argument("not a relative root: " + to_string(a));
        for (const RelativeRoot& b : S) {
            if (RelativeRootSystem::anti_proportional(a, b))
                throw std::invalid_argument("S contains opposite multiples " + to_string(a) +
                                            ", " + to_string(b));
            if (rel.contains(a + b) &&
                std::find(S.begin(), S.end(), a + b) == S.end())
                throw std::invalid_argument("S is not closed under sums: missing " +
                                            to_string(a + b));
        }
    }
    MonoReport rpt;
    std::vector<int> gen_ids;
    std::vector<int> mat_gens;
    for (std::size_t g = 0; g < c.pres.gens.size(); ++g)
        if (std::find(S.begin(), S.end(), c.pres.gens[g].alpha) != S.end()) {
            gen_ids.push_back(static_cast<int>(g));
            mat_gens.push_back(c.eg.rel_element_index(c.pres.gens[g].alpha, c.pres.gens[g].v));
        }
    rpt.lifted_order = c.table.orbit_of_identity(gen_ids).size();
    rpt.matrix_order = c.eg.group().subgroup_closure(mat_gens).size();
    rpt.pass = rpt.lifted_order == rpt.matrix_order;
    return rpt;
}

StKerReport verify_st_ker(char series, int rank, const std::vector<int>& J, const FiniteRing& R,
                          const Ideal& I, std::size_t coset_budget) {
    RelContext ctx(series, rank, J);
    Presentation pres = make_presentation(ctx, R);

    // ~E(R,I) is the *normal closure* of the level-I root elements, so its
    // coset count is the order of the quotient presented by the same relators
    // plus one killing relator per level generator.
    Presentation killed = pres;
    for (std::size_t g = 0; g < pres.gens.size(); ++g) {
        bool in_level = true;
        for (int e : pres.gens[g].v)
            if (!R.ideal_contains(I, e)) in_level = false;
        if (in_level) {
            killed.relators.push_back({static_cast<int>(g) + 1});
            killed.tags.push_back("level");
        }
    }
    CosetTable relative = todd_coxeter(killed, {}, coset_budget);
    CosetTable full = todd_coxeter(pres, {}, coset_budget);

    QuotientRing q = R.quotient(I);
    Presentation qpres = make_presentation(ctx, q.ring);
    CosetTable qtable = todd_coxeter(qpres, {}, coset_budget);

    StKerReport rpt;
    if (!relative.complete || !full.complete || !qtable.complete) return rpt;
    rpt.index = relative.cosets;
    rpt.quotient_order = qtable.cosets;
    rpt.st_order = full.cosets;
    rpt.pass = rpt.index == rpt.quotient_order && rpt.st_order % rpt.index == 0;
    if (rpt.pass) rpt.kernel_order = rpt.st_order / rpt.index;
    return rpt;
}

}  // namespace iso
