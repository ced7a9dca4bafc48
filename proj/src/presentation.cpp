#include "iso/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace iso {

int Presentation::gen_id(const RelativeRoot& alpha, const std::vector<int>& v) const {
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) return -1;
    auto it = index.find({alpha.c, v});
    if (it == index.end()) throw std::invalid_argument("unknown generator " + to_string(alpha));
    return it->second;
}

std::string Presentation::to_text(const FiniteRing& R) const {
    std::ostringstream os;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        os << "gen " << g << " alpha=" << to_string(gens[g].alpha) << " v=(";
        for (std::size_t k = 0; k < gens[g].v.size(); ++k)
            os << (k ? "," : "") << R.element_name(gens[g].v[k]);
        os << ")\n";
    }
    for (const auto& rel : relators) {
        os << "rel";
        for (int l : rel) os << " " << l;
        os << "\n";
    }
    return os.str();
}

int ring_eval(const Poly& p, const FiniteRing& R, const std::function<int(int)>& val) {
    int out = 0;
    for (const auto& [mono, coeff] : p.terms()) {
        int term = R.from_int(coeff);
        for (auto [var, e] : mono) {
            int base = val(var);
            for (int k = 0; k < e; ++k) term = R.mul(term, base);
        }
        out = R.add(out, term);
    }
    return out;
}

namespace {

/// Append X_alpha(v) to the word; v = 0 contributes nothing.
void push_factor(std::vector<int>& word, const Presentation& p, const RelativeRoot& alpha,
                 const std::vector<int>& v) {
    int g = p.gen_id(alpha, v);
    if (g >= 0) word.push_back(g + 1);
}

std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
}

std::vector<std::vector<int>> all_tuples(const FiniteRing& R, int d) {
    std::vector<std::vector<int>> out = {{}};
    for (int k = 0; k < d; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& t : out)
            for (int e = 0; e < R.size(); ++e) {
                auto u = t;
                u.push_back(e);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

Presentation make_presentation(const RelContext& ctx, const FiniteRing& R) {
    // hypothesis gate: every structure constant magnitude must be a unit
    const RootSystem& sys = ctx.sys();
    for (const Root& x : sys.roots())
        for (const Root& y : sys.roots())
            if (ctx.table().has(x, y)) {
                int n = std::abs(ctx.table().N(x, y));
                if (n > 1 && !R.is_unit(R.from_int(n)))
                    throw std::invalid_argument("structure constant " + std::to_string(n) +
                                                " is not invertible in " + R.name());
            }

    const RelativeRootSystem& rel = ctx.rel();
    Presentation p;
    for (const RelativeRoot& alpha : rel.elements())
        for (const auto& v : all_tuples(R, ctx.vrank(alpha))) {
            if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
            p.index[{alpha.c, v}] = static_cast<int>(p.gens.size());
            p.gens.push_back({alpha, v});
        }

    // eq:sum instances
    for (const RelativeRoot& alpha : rel.elements()) {
        int d = ctx.vrank(alpha);
        const QMap& qm = ctx.compute_q(alpha);
        auto tuples = all_tuples(R, d);
        for (const auto& v : tuples)
            for (const auto& w : tuples) {
                bool vz = std::all_of(v.begin(), v.end(), [](int x) { return !x; });
                bool wz = std::all_of(w.begin(), w.end(), [](int x) { return !x; });
                if (vz || wz) continue;
                std::vector<int> lhs, rhs;
                push_factor(lhs, p, alpha, v);
                push_factor(lhs, p, alpha, w);
                std::vector<int> sum(d);
                for (int k = 0; k < d; ++k) sum[k] = R.add(v[k], w[k]);
                push_factor(rhs, p, alpha, sum);
                auto val = [&](int var) {
                    if (var >= kSlot0Base && var < kSlot0Base + d) return v[var - kSlot0Base];
                    if (var >= kSlot1Base && var < kSlot1Base + d) return w[var - kSlot1Base];
                    return 0;
                };
                for (const auto& [i, comps] : qm.q) {
                    std::vector<int> arg(comps.size());
                    for (std::size_t k = 0; k < comps.size(); ++k)
                        arg[k] = ring_eval(comps[k], R, val);
                    push_factor(rhs, p, alpha * i, arg);
                }
                std::vector<int> word = lhs;
                for (int l : inverse_word(rhs)) word.push_back(l);
                p.relators.push_back(std::move(word));
                p.tags.push_back("sum");
            }
    }

    // eq:Chev instances, for all ordered non-anti-proportional pairs
    for (const RelativeRoot& alpha : rel.elements())
        for (const RelativeRoot& beta : rel.elements()) {
            if (RelativeRootSystem::anti_proportional(alpha, beta)) continue;
            int dA = ctx.vrank(alpha), dB = ctx.vrank(beta);
            const NMap& nm = ctx.compute_N(alpha, beta);
            // product order = the grade order in which the maps were peeled
            std::vector<std::pair<int, int>> order(nm.n.size());
            std::size_t at = 0;
            for (const auto& [ij, comps] : nm.n) order[at++] = ij;
            std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
                int gx = x.first + x.second, gy = y.first + y.second;
                return gx != gy ? gx < gy : x.first < y.first;
            });
            for (const auto& u : all_tuples(R, dA))
                for (const auto& v : all_tuples(R, dB)) {
                    if (std::all_of(u.begin(), u.end(), [](int x) { return !x; })) continue;
                    if (std::all_of(v.begin(), v.end(), [](int x) { return !x; })) continue;
                    int ga = p.gen_id(alpha, u), gb = p.gen_id(beta, v);
                    std::vector<int> word = {ga + 1, gb + 1, -(ga + 1), -(gb + 1)};
                    auto val = [&](int var) {
                        if (var >= kSlot0Base && var < kSlot0Base + dA) return u[var - kSlot0Base];
                        if (var >= kSlot1Base && var < kSlot1Base + dB) return v[var - kSlot1Base];
                        return 0;
                    };
                    std::vector<int> rhs;
                    for (const auto& ij : order) {
                        const auto& comps = nm.n.at(ij);
                        std::vector<int> arg(comps.size());
                        for (std::size_t k = 0; k < comps.size(); ++k)
                            arg[k] = ring_eval(comps[k], R, val);
                        push_factor(rhs, p, alpha * ij.first + beta * ij.second, arg);
                    }
                    for (int l : inverse_word(rhs)) word.push_back(l);
                    p.relators.push_back(std::move(word));
                    p.tags.push_back("commutator");
                }
        }
    return p;
}

}  // namespace iso
