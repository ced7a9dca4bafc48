#include "iso/relcalc.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace iso {

namespace {

std::vector<IntVec> identity_gamma(int rank) {
    IntVec id(rank);
    std::iota(id.begin(), id.end(), 0);
    return {id};
}

std::string root_str(const Root& r) { return to_string(r); }

long long mod_norm(long long v, long long m) {
    v %= m;
    return v < 0 ? v + m : v;
}

}  // namespace

RelContext::RelContext(char series, int rank, std::vector<int> J, const std::string& rep_kind)
    : rel_(RootSystem(series, rank), std::move(J), identity_gamma(rank)),
      tab_(rel_.base()),
      rep_(rep_kind == "adjoint" ? adjoint_rep(rel_.base(), tab_)
                                 : classical_rep(rel_.base(), tab_)) {}

int RelContext::vrank(const RelativeRoot& alpha) const {
    return static_cast<int>(rel_.fiber(alpha).size());
}

PolyMat RelContext::fiber_product(const RelativeRoot& alpha, const std::vector<Poly>& v,
                                  bool inverse) const {
    std::vector<Root> fib = rel_.fiber(alpha);
    std::sort(fib.begin(), fib.end());
    if (v.size() != fib.size())
        throw std::invalid_argument("component count does not match the fiber rank");
    PolyMat M = pm_identity(rep_.dim);
    for (std::size_t k = 0; k < fib.size(); ++k) {
        std::size_t pos = inverse ? fib.size() - 1 - k : k;
        Poly arg = inverse ? -v[pos] : v[pos];
        M = pm_mul(M, root_element(rel_.base(), rep_, fib[pos], arg));
    }
    return M;
}

PolyMat RelContext::rel_root_element(const RelativeRoot& alpha, const std::vector<Poly>& v) const {
    return fiber_product(alpha, v, false);
}

PolyMat RelContext::rel_root_element_inv(const RelativeRoot& alpha,
                                         const std::vector<Poly>& v) const {
    return fiber_product(alpha, v, true);
}

std::vector<Poly> RelContext::peel_graded(PolyMat M, const std::vector<Root>& targets) const {
    return factor_unipotent(rel_.base(), rep_, std::move(M), targets);
}

std::vector<Poly> RelContext::unipotent_factorize(PolyMat M, const std::vector<Root>& order) const {
    const RootSystem& sys = rel_.base();
    for (const Root& a : order)
        if (!sys.is_root(a)) throw std::invalid_argument("not a root: " + root_str(a));
    int sign = 0;
    for (const Root& a : order) {
        int s = a.height() > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) throw std::invalid_argument("root set mixes the positive and negative cones");
        for (const Root& b : order)
            if ((a + b).is_zero())
                throw std::invalid_argument("root set contains an opposite pair");
    }
    for (const Root& a : order)
        for (const Root& b : order)
            if (sys.is_root(a + b) &&
                std::find(order.begin(), order.end(), a + b) == order.end())
                throw std::invalid_argument("root set is not closed under sums: missing " +
                                            root_str(a + b));

    std::deque<std::size_t> rem(order.size());
    std::iota(rem.begin(), rem.end(), 0);
    std::vector<Poly> coords(order.size());
    auto aht = [&](std::size_t i) { return std::abs(order[i].height()); };
    while (!rem.empty()) {
        int minht = aht(rem.front());
        for (std::size_t i : rem) minht = std::min(minht, aht(i));
        std::size_t pick;
        bool left;
        if (aht(rem.front()) == minht) {
            pick = rem.front();
            left = true;
            rem.pop_front();
        } else if (aht(rem.back()) == minht) {
            pick = rem.back();
            left = false;
            rem.pop_back();
        } else {
            throw std::invalid_argument("order is not peelable from either end");
        }
        int ig = sys.root_index(order[pick]);
        auto [r, c, v] = rep_probe_entry(rep_, ig);
        Poly u = v == 1 ? M[r][c] : v == -1 ? -M[r][c] : M[r][c].divided(v);
        if (left)
            M = pm_mul(root_element(sys, rep_, order[pick], -u), M);
        else
            M = pm_mul(M, root_element(sys, rep_, order[pick], -u));
        coords[pick] = std::move(u);
    }
    if (!pm_is_identity(M))
        throw std::runtime_error("matrix is not a product of the given root elements");
    return coords;
}

const QMap& RelContext::compute_q(const RelativeRoot& alpha) const {
    int idx = rel_.element_index(alpha);
    if (auto it = qcache_.find(idx); it != qcache_.end()) return it->second;

    int d = vrank(alpha);
    std::vector<Poly> v(d), w(d), sum(d);
    for (int k = 0; k < d; ++k) {
        v[k] = Poly::var(kSlot0Base + k);
        w[k] = Poly::var(kSlot1Base + k);
        sum[k] = v[k] + w[k];
    }
    // eq:sum: prod_{i>1} X_{i a}(q^i) = X_a(v+w)^{-1} X_a(v) X_a(w)
    PolyMat M = pm_mul(rel_root_element_inv(alpha, sum),
                       pm_mul(rel_root_element(alpha, v), rel_root_element(alpha, w)));

    QMap out;
    std::vector<Root> targets;
    std::vector<std::pair<int, int>> spans;  // (i, fiber size)
    for (int i = 2; i <= rel_.multiple_bound(alpha); ++i) {
        if (!rel_.contains(alpha * i)) continue;
        std::vector<Root> fib = rel_.fiber(alpha * i);
        std::sort(fib.begin(), fib.end());
        spans.emplace_back(i, static_cast<int>(fib.size()));
        targets.insert(targets.end(), fib.begin(), fib.end());
    }
    if (targets.empty()) {
        if (!pm_is_identity(M))
            throw LemmaViolation("eq:sum residue nontrivial for multiple-free " + root_str(alpha));
    } else {
        std::vector<Poly> coords = peel_graded(std::move(M), targets);
        std::size_t at = 0;
        for (auto [i, len] : spans) {
            out.q[i].assign(coords.begin() + at, coords.begin() + at + len);
            at += len;
        }
    }
    return qcache_.emplace(idx, std::move(out)).first->second;
}

const NMap& RelContext::compute_N(const RelativeRoot& alpha, const RelativeRoot& beta) const {
    auto key = std::make_pair(rel_.element_index(alpha), rel_.element_index(beta));
    if (auto it = ncache_.find(key); it != ncache_.end()) return it->second;
    if (RelativeRootSystem::anti_proportional(alpha, beta))
        throw std::invalid_argument("eq:Chev requires m*alpha != -k*beta");

    int dA = vrank(alpha), dB = vrank(beta);
    std::vector<Poly> u(dA), v(dB);
    for (int k = 0; k < dA; ++k) u[k] = Poly::var(kSlot0Base + k);
    for (int k = 0; k < dB; ++k) v[k] = Poly::var(kSlot1Base + k);
    PolyMat M = pm_mul(pm_mul(rel_root_element(alpha, u), rel_root_element(beta, v)),
                       pm_mul(rel_root_element_inv(alpha, u), rel_root_element_inv(beta, v)));

    bool proportional = true;
    for (std::size_t i = 0; i < alpha.c.size() && proportional; ++i)
        for (std::size_t j = 0; j < alpha.c.size(); ++j)
            if (alpha.c[i] * beta.c[j] != alpha.c[j] * beta.c[i]) {
                proportional = false;
                break;
            }

    NMap out;
    if (proportional && alpha == beta) {
        // [X_alpha(u), X_alpha(v)] lands in the multiples of alpha; with
        // m_alpha <= 2 the only possible factor is X_{2 alpha}, and its
        // argument is bilinear, so it is the (1,1) component.
        if (rel_.contains(alpha * 2)) {
            std::vector<Root> fib = rel_.fiber(alpha * 2);
            std::sort(fib.begin(), fib.end());
            out.n[{1, 1}] = peel_graded(std::move(M), fib);
            bool allzero = true;
            for (const Poly& p : out.n[{1, 1}])
                if (!p.is_zero()) allzero = false;
            if (allzero) out.n.clear();
        } else if (!pm_is_identity(M)) {
            throw LemmaViolation("multiple-free " + root_str(alpha) +
                                 " has a nontrivial self-commutator");
        }
    } else if (proportional) {
        if (!pm_is_identity(M))
            throw LemmaViolation("proportional relative roots " + root_str(alpha) + ", " +
                                 root_str(beta) + " do not commute");
    } else {
        std::vector<std::tuple<int, int, std::vector<Root>>> classes;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) {
                RelativeRoot t = alpha * i + beta * j;
                if (!rel_.contains(t)) continue;
                std::vector<Root> fib = rel_.fiber(t);
                std::sort(fib.begin(), fib.end());
                classes.emplace_back(i, j, std::move(fib));
            }
        std::sort(classes.begin(), classes.end(), [](const auto& x, const auto& y) {
            int gx = std::get<0>(x) + std::get<1>(x), gy = std::get<0>(y) + std::get<1>(y);
            return gx != gy ? gx < gy : std::get<0>(x) < std::get<0>(y);
        });
        std::vector<Root> targets;
        for (const auto& [i, j, fib] : classes) targets.insert(targets.end(), fib.begin(), fib.end());
        if (targets.empty()) {
            if (!pm_is_identity(M))
                throw LemmaViolation("commuting relative pair has nontrivial commutator");
        } else {
            std::vector<Poly> coords = peel_graded(std::move(M), targets);
            std::size_t at = 0;
            for (const auto& [i, j, fib] : classes) {
                out.n[{i, j}].assign(coords.begin() + at, coords.begin() + at + fib.size());
                at += fib.size();
            }
        }
    }
    return ncache_.emplace(key, std::move(out)).first->second;
}

AbeReport RelContext::check_ABe(const RelativeRoot& A, const RelativeRoot& B,
                                long long modulus) const {
    if (!rel_.contains(A + B)) throw std::invalid_argument("A+B is not a relative root");
    // precondition gate: structure constants invertible, or A-B not a root
    if (rel_.contains(A - B)) {
        for (int lam : {2, 3}) {
            bool present = false;
            for (const Root& x : rel_.base().roots())
                for (const Root& y : rel_.base().roots())
                    if (tab_.has(x, y) && std::abs(tab_.N(x, y)) == lam) present = true;
            if (present && std::gcd(static_cast<long long>(lam), modulus) != 1)
                throw std::invalid_argument(
                    "structure constants are not invertible in Z/" + std::to_string(modulus) +
                    " and A-B is a relative root");
        }
    }
    int dA = vrank(A), dB = vrank(B), dC = vrank(A + B);
    const NMap& nm = compute_N(A, B);
    std::vector<Poly> comps =
        nm.n.count({1, 1}) ? nm.n.at({1, 1}) : std::vector<Poly>(static_cast<std::size_t>(dC));

    AbeReport rpt;
    rpt.pass = true;
    std::vector<long long> uvec(dB, 0);
    while (true) {
        // next tuple (mixed-radix increment)
        int pos = 0;
        while (pos < dB && ++uvec[pos] == modulus) uvec[pos++] = 0;
        if (pos == dB) break;
        ++rpt.checked;
        bool found = false;
        for (int i = 0; i < dA && !found; ++i) {
            for (const Poly& comp : comps) {
                long long val = comp.eval_ll([&](int id) -> long long {
                    if (id >= kSlot0Base && id < kSlot0Base + dA) return id - kSlot0Base == i ? 1 : 0;
                    if (id >= kSlot1Base && id < kSlot1Base + dB) return uvec[id - kSlot1Base];
                    return 0;
                });
                if (mod_norm(val, modulus) != 0) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            rpt.pass = false;
            std::ostringstream os;
            os << "A=" << root_str(A) << " B=" << root_str(B) << " u=[";
            for (int k = 0; k < dB; ++k) os << (k ? "," : "") << uvec[k];
            os << "] mod " << modulus;
            rpt.counterexample = os.str();
            break;
        }
    }
    return rpt;
}

std::vector<Poly> RelContext::n_chain(const std::vector<RelativeRoot>& roots,
                                      const std::vector<std::vector<Poly>>& values) const {
    if (roots.empty() || roots.size() != values.size())
        throw std::invalid_argument("n_chain needs one value vector per root");
    RelativeRoot cursum = roots[0];
    if (!rel_.contains(cursum)) throw std::invalid_argument("not a relative root");
    if (static_cast<int>(values[0].size()) != vrank(cursum))
        throw std::invalid_argument("value rank mismatch");
    std::vector<Poly> cur = values[0];
    for (std::size_t i = 1; i < roots.size(); ++i) {
        RelativeRoot next = cursum + roots[i];
        if (!rel_.contains(next))
            throw std::invalid_argument("partial sum is not a relative root at step " +
                                        std::to_string(i));
        if (static_cast<int>(values[i].size()) != vrank(roots[i]))
            throw std::invalid_argument("value rank mismatch");
        const NMap& nm = compute_N(cursum, roots[i]);
        int dT = vrank(next);
        std::vector<Poly> comps =
            nm.n.count({1, 1}) ? nm.n.at({1, 1}) : std::vector<Poly>(static_cast<std::size_t>(dT));
        std::map<int, Poly> repl;
        for (int k = 0; k < vrank(cursum); ++k) repl[kSlot0Base + k] = cur[k];
        for (int k = 0; k < vrank(roots[i]); ++k) repl[kSlot1Base + k] = values[i][k];
        std::vector<Poly> nxt(comps.size());
        for (std::size_t c = 0; c < comps.size(); ++c) nxt[c] = comps[c].substitute(repl);
        cur = std::move(nxt);
        cursum = next;
    }
    return cur;
}

ChainReport RelContext::check_chain_comm(const RelativeRoot& delta,
                                         const std::vector<RelativeRoot>& chain) const {
    ChainReport rpt;
    std::string why;
    if (!chain.empty() && !rel_.is_special_chain(delta, chain, &why))
        throw std::invalid_argument("not a special chain: " + why);

    RelativeRoot gamma = delta;
    for (const RelativeRoot& b : chain) gamma = gamma + b;

    std::vector<RelativeRoot> seq = {delta};
    seq.insert(seq.end(), chain.begin(), chain.end());
    std::vector<std::vector<Poly>> values(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        int d = vrank(seq[i]);
        values[i].resize(d);
        for (int k = 0; k < d; ++k)
            values[i][k] = Poly::var(kCallerVarBase + kSlotStride * static_cast<int>(i) + k);
    }

    PolyMat M = rel_root_element(delta, values[0]);
    PolyMat Minv = rel_root_element_inv(delta, values[0]);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        PolyMat X = rel_root_element(chain[i], values[i + 1]);
        PolyMat Xinv = rel_root_element_inv(chain[i], values[i + 1]);
        PolyMat nm = pm_mul(pm_mul(M, X), pm_mul(Minv, Xinv));
        Minv = pm_mul(pm_mul(X, M), pm_mul(Xinv, Minv));
        M = std::move(nm);
    }

    std::vector<Root> targets;
    std::vector<std::pair<RelativeRoot, int>> layout;
    auto push = [&](const RelativeRoot& tau) {
        std::vector<Root> fib = rel_.fiber(tau);
        std::sort(fib.begin(), fib.end());
        layout.emplace_back(tau, static_cast<int>(fib.size()));
        targets.insert(targets.end(), fib.begin(), fib.end());
    };
    // Positive chains allow tail factors of strictly larger height; negative
    // chains are the mirror image and allow strictly smaller height.
    push(gamma);
    int dir = chain.empty() ? 1 : (chain.front().height() > 0 ? 1 : -1);
    for (const RelativeRoot& tau : rel_.elements())
        if (dir * tau.height() > dir * gamma.height()) push(tau);

    std::vector<Poly> coords;
    try {
        coords = peel_graded(std::move(M), targets);
    } catch (const std::exception& ex) {
        rpt.pass = false;
        rpt.note = std::string("support outside the asserted set: ") + ex.what();
        return rpt;
    }
    int dG = layout.front().second;
    rpt.gamma_value.assign(coords.begin(), coords.begin() + dG);
    std::size_t at = dG;
    for (std::size_t li = 1; li < layout.size(); ++li) {
        bool nonzero = false;
        for (int k = 0; k < layout[li].second; ++k)
            if (!coords[at + k].is_zero()) nonzero = true;
        if (nonzero) rpt.tail_support.push_back(layout[li].first);
        at += layout[li].second;
    }
    std::vector<Poly> expected = n_chain(seq, values);
    rpt.pass = (rpt.gamma_value == expected);
    if (!rpt.pass) rpt.note = "gamma coordinate differs from the chain map value";
    return rpt;
}

FReport RelContext::check_F_surjective(long long prime, long long tuple_budget) const {
    FReport rpt;
    if (rel_.rank() < 2) throw std::invalid_argument("relative rank >= 2 required");
    MaxChainResult mc = rel_.construct_chain_max();
    const RelativeRoot maxr = rel_.max_root();

    std::vector<RelativeRoot> seq = {maxr};
    seq.insert(seq.end(), mc.chain.begin(), mc.chain.end());
    for (const RelativeRoot& b : mc.chain) seq.push_back(-b);

    int d = vrank(maxr);
    rpt.target_dim = d * d;

    // Per step: integer tensor T[c][a][b] of the bilinear (1,1) map.
    struct Step {
        int dB;
        std::vector<std::vector<std::vector<long long>>> T;  // [dT][dA][dB]
    };
    std::vector<Step> steps;
    RelativeRoot cursum = seq[0];
    for (std::size_t i = 1; i < seq.size(); ++i) {
        RelativeRoot next = cursum + seq[i];
        int dA = vrank(cursum), dB = vrank(seq[i]), dT = vrank(next);
        const NMap& nm = compute_N(cursum, seq[i]);
        Step st;
        st.dB = dB;
        st.T.assign(dT, std::vector<std::vector<long long>>(dA, std::vector<long long>(dB, 0)));
        if (nm.n.count({1, 1})) {
            const auto& comps = nm.n.at({1, 1});
            for (int c = 0; c < dT; ++c)
                for (int a = 0; a < dA; ++a)
                    for (int b = 0; b < dB; ++b)
                        st.T[c][a][b] = comps[c].coeff({{kSlot0Base + a, 1}, {kSlot1Base + b, 1}});
        }
        steps.push_back(std::move(st));
        cursum = next;
    }
    if (cursum != maxr) throw std::logic_error("doubled chain does not return to the maximal root");

    // Row space of flattened F(tuple) matrices over Z/prime.
    std::vector<std::vector<long long>> basis;  // reduced rows
    auto add_to_span = [&](std::vector<long long> row) {
        for (auto& b : basis) {
            int lead = -1;
            for (std::size_t k = 0; k < b.size(); ++k)
                if (b[k]) {
                    lead = static_cast<int>(k);
                    break;
                }
            if (lead >= 0 && row[lead]) {
                long long f = row[lead] % prime;
                // row -= f * b / b[lead]; b is normalized with b[lead] = 1
                for (std::size_t k = 0; k < row.size(); ++k)
                    row[k] = mod_norm(row[k] - f * b[k], prime);
            }
        }
        int lead = -1;
        for (std::size_t k = 0; k < row.size(); ++k)
            if (row[k]) {
                lead = static_cast<int>(k);
                break;
            }
        if (lead < 0) return false;
        // normalize leading coefficient to 1 (prime modulus)
        long long inv = 1, base = row[lead] % prime, e = prime - 2;
        while (e) {
            if (e & 1) inv = inv * base % prime;
            base = base * base % prime;
            e >>= 1;
        }
        for (auto& x : row) x = x * inv % prime;
        basis.push_back(std::move(row));
        return true;
    };

    std::mt19937 rng(987654u);
    std::uniform_int_distribution<long long> pick(0, prime - 1);
    while (rpt.tuples_used < tuple_budget && static_cast<int>(basis.size()) < rpt.target_dim) {
        ++rpt.tuples_used;
        // F(tuple) = St_m(x_m) ... St_1(x_1) acting on V_max
        std::vector<std::vector<long long>> F(d, std::vector<long long>(d, 0));
        for (int k = 0; k < d; ++k) F[k][k] = 1;
        for (const Step& st : steps) {
            std::vector<long long> x(st.dB);
            bool nz = false;
            while (!nz) {
                for (auto& e : x) {
                    e = pick(rng);
                    if (e) nz = true;
                }
            }
            std::size_t dT = st.T.size(), dA = st.T[0].size();
            std::vector<std::vector<long long>> B(dT, std::vector<long long>(dA, 0));
            for (std::size_t c = 0; c < dT; ++c)
                for (std::size_t a = 0; a < dA; ++a) {
                    long long s = 0;
                    for (int b = 0; b < st.dB; ++b) s += st.T[c][a][b] * x[b];
                    B[c][a] = mod_norm(s, prime);
                }
            std::vector<std::vector<long long>> G(dT, std::vector<long long>(d, 0));
            for (std::size_t c = 0; c < dT; ++c)
                for (int j = 0; j < d; ++j) {
                    long long s = 0;
                    for (std::size_t a = 0; a < dA; ++a) s += B[c][a] * F[a][j];
                    G[c][j] = mod_norm(s, prime);
                }
            F = std::move(G);
        }
        std::vector<long long> flat;
        flat.reserve(rpt.target_dim);
        for (const auto& row : F)
            for (long long x : row) flat.push_back(x);
        add_to_span(std::move(flat));
    }
    rpt.span_dim = static_cast<int>(basis.size());
    rpt.pass = rpt.span_dim == rpt.target_dim;
    if (!rpt.pass) rpt.note = "span incomplete within the tuple budget";
    return rpt;
}

namespace {

nlohmann::json poly_terms_json(const Poly& p, int dA, int dB) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        std::vector<int> expv(dA + dB, 0);
        for (auto [var, e] : mono) {
            if (var >= kSlot0Base && var < kSlot0Base + dA)
                expv[var - kSlot0Base] = e;
            else if (var >= kSlot1Base && var < kSlot1Base + dB)
                expv[dA + var - kSlot1Base] = e;
        }
        terms.push_back({coeff, expv});
    }
    return terms;
}

}  // namespace

nlohmann::json RelContext::maps_to_json() const {
    nlohmann::json q = nlohmann::json::array();
    nlohmann::json n = nlohmann::json::array();
    for (const RelativeRoot& alpha : rel_.elements()) {
        int dA = vrank(alpha);
        for (const auto& [i, comps] : compute_q(alpha).q) {
            nlohmann::json cj = nlohmann::json::array();
            for (const Poly& p : comps) cj.push_back(poly_terms_json(p, dA, dA));
            q.push_back({{"alpha", alpha.c}, {"i", i}, {"components", cj}});
        }
        for (const RelativeRoot& beta : rel_.elements()) {
            if (alpha == beta || RelativeRootSystem::anti_proportional(alpha, beta)) continue;
            int dB = vrank(beta);
            for (const auto& [ij, comps] : compute_N(alpha, beta).n) {
                nlohmann::json cj = nlohmann::json::array();
                for (const Poly& p : comps) cj.push_back(poly_terms_json(p, dA, dB));
                n.push_back({{"alpha", alpha.c},
                             {"beta", beta.c},
                             {"i", ij.first},
                             {"j", ij.second},
                             {"components", cj}});
            }
        }
    }
    return {{"q", q}, {"N", n}};
}

}  // namespace iso
