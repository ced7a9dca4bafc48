#include "iso/chevalley.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>

namespace iso {

// ---------------------------------------------------------------- Frac

Frac::Frac(long long num, long long den) : n(num), d(den) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
}

Frac Frac::operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
Frac Frac::operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
Frac Frac::operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
Frac Frac::operator/(const Frac& o) const {
    if (o.n == 0) throw std::domain_error("division by zero fraction");
    return Frac(n * o.d, d * o.n);
}

long long Frac::as_integer() const {
    if (d != 1) throw std::domain_error("fraction is not an integer");
    return n;
}

// ------------------------------------------------- StructureConstantTable

StructureConstantTable::StructureConstantTable(const RootSystem& sys) : sys_(sys) {
    const auto& roots = sys_.roots();
    int nr = static_cast<int>(roots.size());
    extraspecial_.assign(roots.size(), {-1, -1});

    std::vector<Root> pos = sys_.positive_roots();
    std::sort(pos.begin(), pos.end());  // canonical ascending order
    for (const Root& c : pos) {
        if (c.height() < 2) continue;
        for (const Root& a : pos) {
            Root b = c - a;
            if (sys_.is_root(b) && b.positive()) {
                extraspecial_[sys_.root_index(c)] = {sys_.root_index(a), sys_.root_index(b)};
                break;  // first hit in canonical order is the minimal first member
            }
        }
    }

    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nr; ++j) {
            if (i == j) continue;
            if (!sys_.root_sum(roots[i], roots[j])) continue;
            table_[{i, j}] = compute(i, j);
        }

    for (const auto& [key, v] : table_) {
        if (v == 0 || std::abs(v) > 3)
            throw std::logic_error("structure constant out of the range {±1,±2,±3}");
        if (v != -table_.at({key.second, key.first}))
            throw std::logic_error("structure constant antisymmetry violated");
    }
}

int StructureConstantTable::compute(int ia, int ib) {
    auto key = std::make_pair(ia, ib);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto& roots = sys_.roots();
    const Root& a = roots[ia];
    const Root& b = roots[ib];
    Root e = a + b;  // guaranteed to be a root by the caller
    long long out;
    if (!a.positive() && !b.positive()) {
        out = -compute(sys_.root_index(-a), sys_.root_index(-b));
    } else if (a.positive() != b.positive()) {
        // Rotate within the zero-sum triple (a, b, z), z = -a-b, to reach a
        // same-sign pair: N(x,y)/(z,z) = N(y,z)/(x,x) = N(z,x)/(y,y).
        Root z = -e;
        Frac r;
        if (b.positive() == z.positive()) {
            r = Frac(sys_.inner(z, z)) / Frac(sys_.inner(a, a)) *
                Frac(compute(sys_.root_index(b), sys_.root_index(z)));
        } else {
            r = Frac(sys_.inner(z, z)) / Frac(sys_.inner(b, b)) *
                Frac(compute(sys_.root_index(z), ia));
        }
        out = r.as_integer();
    } else if (b < a) {
        out = -compute(ib, ia);
    } else {
        // Both positive, a < b.
        auto [pc, pd] = extraspecial_[sys_.root_index(e)];
        if (pc == ia && pd == ib) {
            int p = 0;
            while (sys_.is_root(b - a * (p + 1))) ++p;
            out = p + 1;
        } else {
            // Special pair: Jacobi identity on (-c, a, b) against the
            // extraspecial pair (c,d) of e = a+b = c+d:
            //   N(-c,a)N(a-c,b) + N(a,b)N(e,-c) + N(b,-c)N(b-c,a) = 0,
            //   N(e,-c) = -(d,d)/(e,e) * N(c,d).
            const Root& c = roots[pc];
            const Root& d = roots[pd];
            Frac t1(0), t3(0);
            if (sys_.is_root(a - c))
                t1 = Frac(compute(sys_.root_index(-c), ia)) *
                     Frac(compute(sys_.root_index(a - c), ib));
            if (sys_.is_root(b - c))
                t3 = Frac(compute(ib, sys_.root_index(-c))) *
                     Frac(compute(sys_.root_index(b - c), ia));
            Frac nec = Frac(-sys_.inner(d, d)) / Frac(sys_.inner(e, e)) * Frac(compute(pc, pd));
            out = ((t1 + t3) * Frac(-1) / nec).as_integer();
        }
    }
    memo_[key] = static_cast<int>(out);
    return static_cast<int>(out);
}

bool StructureConstantTable::has(const Root& a, const Root& b) const {
    if (!sys_.is_root(a) || !sys_.is_root(b)) return false;
    return table_.count({sys_.root_index(a), sys_.root_index(b)}) != 0;
}

int StructureConstantTable::N(const Root& a, const Root& b) const {
    auto it = table_.find({sys_.root_index(a), sys_.root_index(b)});
    if (it == table_.end()) throw std::invalid_argument("a+b is not a root: no structure constant");
    return it->second;
}

std::pair<Root, Root> StructureConstantTable::extraspecial(const Root& c) const {
    auto [i, j] = extraspecial_.at(sys_.root_index(c));
    if (i < 0) throw std::invalid_argument("extraspecial pair exists only for non-simple positive roots");
    return {sys_.roots()[i], sys_.roots()[j]};
}

nlohmann::json StructureConstantTable::to_json() const {
    nlohmann::json pairs = nlohmann::json::array();
    const auto& roots = sys_.roots();
    for (const auto& [key, v] : table_)
        pairs.push_back({{"a", roots[key.first].c}, {"b", roots[key.second].c}, {"N", v}});
    return {{"convention", "extraspecial"},
            {"series", std::string(1, sys_.series())},
            {"rank", sys_.rank()},
            {"pairs", pairs}};
}

// ------------------------------------------------------------- matrices

namespace {

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    std::size_t n = A.size();
    IntMat out(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) {
            if (A[i][t] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (B[t][j] == 0) continue;
                long long v = static_cast<long long>(out[i][j]) +
                              static_cast<long long>(A[i][t]) * B[t][j];
                out[i][j] = static_cast<int>(v);
            }
        }
    return out;
}

IntMat mat_comm(const IntMat& A, const IntMat& B) {
    IntMat ab = mat_mul(A, B), ba = mat_mul(B, A);
    for (std::size_t i = 0; i < ab.size(); ++i)
        for (std::size_t j = 0; j < ab.size(); ++j) ab[i][j] -= ba[i][j];
    return ab;
}

IntMat mat_div_exact(IntMat m, long long k) {
    for (auto& row : m)
        for (auto& v : row) {
            if (v % k) throw std::domain_error("inexact matrix division");
            v = static_cast<int>(v / k);
        }
    return m;
}

bool mat_is_zero(const IntMat& m) {
    for (const auto& row : m)
        for (int v : row)
            if (v) return false;
    return true;
}

/// Every nonzero entry of E_a must connect weights differing by the Cartan
/// coordinates of a; violations mean the realization is wrong.
void check_graded(const RootSystem& sys, const Rep& rep) {
    auto simple = sys.simple_roots();
    const auto& roots = sys.roots();
    for (std::size_t ia = 0; ia < roots.size(); ++ia) {
        IntVec cart(sys.rank());
        for (int i = 0; i < sys.rank(); ++i) cart[i] = sys.pairing(roots[ia], simple[i]);
        const IntMat& M = rep.E[ia];
        for (int r = 0; r < rep.dim; ++r)
            for (int c = 0; c < rep.dim; ++c) {
                if (M[r][c] == 0) continue;
                for (int i = 0; i < sys.rank(); ++i)
                    if (rep.weight[r][i] - rep.weight[c][i] != cart[i])
                        throw std::logic_error("root matrix is not weight-graded");
            }
    }
}

}  // namespace

std::vector<IntMat> Rep::divided_powers(int root_index) const {
    const IntMat& M = E.at(root_index);
    std::vector<IntMat> out;
    IntMat id(dim, IntVec(dim, 0));
    for (int i = 0; i < dim; ++i) id[i][i] = 1;
    out.push_back(std::move(id));
    IntMat cur = M;
    long long k = 1;
    while (!mat_is_zero(cur)) {
        out.push_back(cur);
        ++k;
        cur = mat_div_exact(mat_mul(cur, M), k);  // E^k/k! = (E^{k-1}/(k-1)!)·E/k
    }
    return out;
}

// ------------------------------------------------------------- adjoint rep

Rep adjoint_rep(const RootSystem& sys, const StructureConstantTable& tab) {
    const auto& roots = sys.roots();
    int nr = static_cast<int>(roots.size());
    int rk = sys.rank();
    auto simple = sys.simple_roots();

    Rep rep;
    rep.series = sys.series();
    rep.rank = rk;
    rep.kind = "adjoint";
    rep.dim = nr + rk;
    rep.E.assign(nr, IntMat(rep.dim, IntVec(rep.dim, 0)));
    rep.weight.assign(rep.dim, IntVec(rk, 0));
    for (int k = 0; k < nr; ++k)
        for (int i = 0; i < rk; ++i) rep.weight[k][i] = sys.pairing(roots[k], simple[i]);

    for (int ia = 0; ia < nr; ++ia) {
        const Root& a = roots[ia];
        IntMat& M = rep.E[ia];
        for (int jb = 0; jb < nr; ++jb) {
            const Root& b = roots[jb];
            if ((a + b).is_zero()) {
                // ad(e_a) e_{-a} = h_a; coroot coordinates of a.
                for (int i = 0; i < rk; ++i) {
                    Frac ci = Frac(static_cast<long long>(a.c[i]) * sys.inner(simple[i], simple[i])) /
                              Frac(sys.inner(a, a));
                    M[nr + i][jb] = static_cast<int>(ci.as_integer());
                }
            } else if (auto s = sys.root_sum(a, b)) {
                M[sys.root_index(*s)][jb] = tab.N(a, b);
            }
        }
        for (int i = 0; i < rk; ++i) M[ia][nr + i] = -sys.pairing(a, simple[i]);
    }
    check_graded(sys, rep);
    return rep;
}

// ----------------------------------------------------------- classical rep

Rep classical_rep(const RootSystem& sys, const StructureConstantTable& tab) {
    char ser = sys.series();
    if (ser != 'A' && ser != 'C')
        throw std::invalid_argument("classical realization available for types A and C only");
    const auto& roots = sys.roots();
    int nr = static_cast<int>(roots.size());
    int rk = sys.rank();

    Rep rep;
    rep.series = ser;
    rep.rank = rk;
    rep.E.assign(nr, IntMat());

    auto simple = sys.simple_roots();
    std::vector<int> sidx(rk), snidx(rk);
    for (int i = 0; i < rk; ++i) {
        sidx[i] = sys.root_index(simple[i]);
        snidx[i] = sys.root_index(-simple[i]);
    }

    if (ser == 'A') {
        rep.kind = "natural";
        rep.dim = rk + 1;
        rep.weight.assign(rep.dim, IntVec(rk, 0));
        for (int k = 0; k < rep.dim; ++k)
            for (int i = 0; i < rk; ++i)
                rep.weight[k][i] = (k == i ? 1 : 0) - (k == i + 1 ? 1 : 0);
        for (int i = 0; i < rk; ++i) {
            IntMat e(rep.dim, IntVec(rep.dim, 0)), f(rep.dim, IntVec(rep.dim, 0));
            e[i][i + 1] = 1;
            f[i + 1][i] = 1;
            rep.E[sidx[i]] = std::move(e);
            rep.E[snidx[i]] = std::move(f);
        }
    } else {
        rep.kind = "symplectic";
        int n = rk;
        rep.dim = 2 * n;
        auto prime = [n](int k) { return 2 * n - 1 - k; };
        // Weight of v_k: eps_{k+1} for k < n, -eps_{2n-k} for k >= n.
        auto eps = [&](int j) {  // 1-indexed j, Cartan coordinates for C_n
            IntVec w(rk, 0);
            for (int i = 1; i < n; ++i) w[i - 1] = (j == i ? 1 : 0) - (j == i + 1 ? 1 : 0);
            w[n - 1] = (j == n ? 1 : 0);
            return w;
        };
        rep.weight.assign(rep.dim, IntVec(rk, 0));
        for (int k = 0; k < rep.dim; ++k) {
            IntVec w = eps(k < n ? k + 1 : 2 * n - k);
            if (k >= n)
                for (auto& v : w) v = -v;
            rep.weight[k] = w;
        }
        for (int i = 0; i + 1 < n; ++i) {  // short simple roots eps_{i+1}-eps_{i+2}
            IntMat e(rep.dim, IntVec(rep.dim, 0)), f(rep.dim, IntVec(rep.dim, 0));
            e[i][i + 1] = 1;
            e[prime(i + 1)][prime(i)] = -1;
            f[i + 1][i] = 1;
            f[prime(i)][prime(i + 1)] = -1;
            rep.E[sidx[i]] = std::move(e);
            rep.E[snidx[i]] = std::move(f);
        }
        IntMat e(rep.dim, IntVec(rep.dim, 0)), f(rep.dim, IntVec(rep.dim, 0));
        e[n - 1][n] = 1;  // long simple root 2*eps_n
        f[n][n - 1] = 1;
        rep.E[sidx[n - 1]] = std::move(e);
        rep.E[snidx[n - 1]] = std::move(f);
    }

    // Non-simple roots through the extraspecial recursion, ascending height,
    // forcing the same sign convention as the table.
    std::vector<Root> pos = sys.positive_roots();
    std::sort(pos.begin(), pos.end());
    for (const Root& c : pos) {
        if (c.height() < 2) continue;
        auto [a, b] = tab.extraspecial(c);
        int nab = tab.N(a, b);
        rep.E[sys.root_index(c)] = mat_div_exact(
            mat_comm(rep.E[sys.root_index(a)], rep.E[sys.root_index(b)]), nab);
        rep.E[sys.root_index(-c)] = mat_div_exact(
            mat_comm(rep.E[sys.root_index(-a)], rep.E[sys.root_index(-b)]), -nab);
    }
    check_graded(sys, rep);
    return rep;
}

// ---------------------------------------------------------- root elements

PolyMat root_element(const RootSystem& sys, const Rep& rep, const Root& a, const Poly& t) {
    auto dps = rep.divided_powers(sys.root_index(a));
    PolyMat P(rep.dim, std::vector<Poly>(rep.dim));
    Poly tk = Poly::constant(1);
    for (std::size_t k = 0; k < dps.size(); ++k) {
        for (int i = 0; i < rep.dim; ++i)
            for (int j = 0; j < rep.dim; ++j)
                if (dps[k][i][j]) P[i][j] += tk * dps[k][i][j];
        tk = tk * t;
    }
    return P;
}

std::array<int, 3> rep_probe_entry(const Rep& rep, int root_index) {
    const IntMat& M = rep.E[root_index];
    std::array<int, 3> best{-1, -1, 0};
    for (int r = 0; r < rep.dim; ++r)
        for (int c = 0; c < rep.dim; ++c) {
            int v = M[r][c];
            if (v && (best[2] == 0 || std::abs(v) < std::abs(best[2]))) best = {r, c, v};
        }
    if (best[2] == 0) throw std::logic_error("zero root matrix");
    return best;
}

std::vector<Poly> factor_unipotent(const RootSystem& sys, const Rep& rep, PolyMat P,
                                   const std::vector<Root>& targets) {
    std::vector<Poly> out;
    out.reserve(targets.size());
    for (const Root& g : targets) {
        int ig = sys.root_index(g);
        auto [r, c, v] = rep_probe_entry(rep, ig);
        Poly u = v == 1 ? P[r][c] : v == -1 ? -P[r][c] : P[r][c].divided(v);
        P = pm_mul(root_element(sys, rep, g, -u), P);
        out.push_back(std::move(u));
    }
    if (!pm_is_identity(P))
        throw std::runtime_error("unipotent factorization left a non-identity residue");
    return out;
}

// ----------------------------------------------- commutator verification

namespace {

struct TargetList {
    std::vector<std::pair<int, int>> ij;
    std::vector<Root> roots;
};

/// Roots ia+jb (i,j >= 1), ordered by grade i+j then i: each element is never
/// a sum of two-or-more later ones, so peeling in this order is exact.
TargetList commutator_targets(const RootSystem& sys, const Root& a, const Root& b) {
    std::vector<std::tuple<int, int, Root>> tg;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            Root r = a * i + b * j;
            if (sys.is_root(r)) tg.emplace_back(i, j, r);
        }
    std::sort(tg.begin(), tg.end(), [](const auto& x, const auto& y) {
        int gx = std::get<0>(x) + std::get<1>(x), gy = std::get<0>(y) + std::get<1>(y);
        return gx != gy ? gx < gy : std::get<0>(x) < std::get<0>(y);
    });
    TargetList out;
    for (auto& [i, j, r] : tg) {
        out.ij.emplace_back(i, j);
        out.roots.push_back(r);
    }
    return out;
}

}  // namespace

CommutatorReport verify_commutator_formula(const RootSystem& sys, const Rep& rep,
                                           const StructureConstantTable& tab) {
    CommutatorReport rpt;
    const auto& roots = sys.roots();
    int nr = static_cast<int>(roots.size());
    Poly s = Poly::var(0), t = Poly::var(1);
    for (int ia = 0; ia < nr; ++ia)
        for (int ib = 0; ib < nr; ++ib) {
            const Root& a = roots[ia];
            const Root& b = roots[ib];
            if (b == a || b == -a) continue;
            CommutatorEntry ent;
            ent.a = a;
            ent.b = b;
            TargetList tg = commutator_targets(sys, a, b);
            PolyMat M = pm_mul(pm_mul(root_element(sys, rep, a, s), root_element(sys, rep, b, t)),
                               pm_mul(root_element(sys, rep, a, -s), root_element(sys, rep, b, -t)));
            if (tg.roots.empty()) {
                ent.ok = pm_is_identity(M);
                if (!ent.ok) ent.note = "commutator of a commuting pair is not the identity";
            } else {
                try {
                    auto coords = factor_unipotent(sys, rep, std::move(M), tg.roots);
                    ent.ok = true;
                    for (std::size_t k = 0; k < coords.size(); ++k) {
                        auto [i, j] = tg.ij[k];
                        long long C = coords[k].coeff({{0, i}, {1, j}});
                        if (coords[k] != Poly::var(0, i) * Poly::var(1, j) * C) {
                            ent.ok = false;
                            ent.note = "coordinate is not a single monomial of bidegree (i,j)";
                        }
                        ent.C[{i, j}] = C;
                    }
                    if (sys.is_root(a + b) &&
                        std::abs(ent.C.at({1, 1})) != std::abs(tab.N(a, b))) {
                        ent.ok = false;
                        ent.note = "C_11 does not match the structure constant";
                    }
                } catch (const std::exception& ex) {
                    ent.ok = false;
                    ent.note = ex.what();
                }
            }
            rpt.all_ok = rpt.all_ok && ent.ok;
            rpt.pairs.push_back(std::move(ent));
        }
    return rpt;
}

// ----------------------------------------------------- numeric spot check

namespace {

using SparseMat = std::vector<std::array<long long, 3>>;  // (row, col, value)

long long modpow(long long b, long long e, long long p) {
    long long r = 1;
    b %= p;
    if (b < 0) b += p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

/// Divided powers E^k/k! (k >= 1) of one root matrix in sparse triplet form.
std::vector<SparseMat> sparse_divided_powers(const Rep& rep, int idx) {
    auto dense = rep.divided_powers(idx);
    std::vector<SparseMat> out;
    for (std::size_t k = 1; k < dense.size(); ++k) {
        SparseMat s;
        for (int i = 0; i < rep.dim; ++i)
            for (int j = 0; j < rep.dim; ++j)
                if (dense[k][i][j]) s.push_back({i, j, dense[k][i][j]});
        out.push_back(std::move(s));
    }
    return out;
}

/// x_a(val) - I as a sparse matrix mod p.
SparseMat num_root_element(const std::vector<SparseMat>& dp, long long val, long long p) {
    std::map<std::pair<int, int>, long long> entries;
    long long vk = 1;
    for (const auto& level : dp) {
        vk = vk * (((val % p) + p) % p) % p;
        for (const auto& [i, j, v] : level)
            entries[{static_cast<int>(i), static_cast<int>(j)}] =
                (entries[{static_cast<int>(i), static_cast<int>(j)}] + vk * v) % p;
    }
    SparseMat out;
    for (auto& [rc, v] : entries) {
        long long w = ((v % p) + p) % p;
        if (w) out.push_back({rc.first, rc.second, w});
    }
    return out;
}

}  // namespace

CommutatorReport verify_commutator_formula_mod(const RootSystem& sys, const Rep& rep,
                                               const StructureConstantTable& tab, long long p,
                                               unsigned seed, int max_pairs, int samples) {
    CommutatorReport rpt;
    const auto& roots = sys.roots();
    int nr = static_cast<int>(roots.size());
    int dim = rep.dim;

    std::vector<std::vector<SparseMat>> dps(nr);
    std::vector<std::array<int, 3>> probes(nr);
    for (int i = 0; i < nr; ++i) {
        dps[i] = sparse_divided_powers(rep, i);
        probes[i] = rep_probe_entry(rep, i);
    }

    std::vector<std::pair<int, int>> pairs;
    for (int ia = 0; ia < nr; ++ia)
        for (int ib = 0; ib < nr; ++ib)
            if (roots[ib] != roots[ia] && roots[ib] != -roots[ia]) pairs.emplace_back(ia, ib);
    std::mt19937 rng(seed);
    if (max_pairs >= 0 && max_pairs < static_cast<int>(pairs.size())) {
        std::shuffle(pairs.begin(), pairs.end(), rng);
        pairs.resize(max_pairs);
    }

    std::vector<long long> M(static_cast<std::size_t>(dim) * dim);
    std::vector<long long> scratch(M.size());
    auto right_mul = [&](const SparseMat& S) {  // M <- M (I + S)
        scratch = M;
        for (const auto& [r, c, v] : S)
            for (int i = 0; i < dim; ++i)
                scratch[i * dim + c] = (scratch[i * dim + c] + M[i * dim + r] * v) % p;
        M.swap(scratch);
    };
    auto left_mul = [&](const SparseMat& S) {  // M <- (I + S) M
        scratch = M;
        for (const auto& [r, c, v] : S)
            for (int j = 0; j < dim; ++j)
                scratch[r * dim + j] = (scratch[r * dim + j] + v * M[c * dim + j]) % p;
        M.swap(scratch);
    };

    std::uniform_int_distribution<long long> pick(1, p - 1);
    for (auto [ia, ib] : pairs) {
        const Root& a = roots[ia];
        const Root& b = roots[ib];
        CommutatorEntry ent;
        ent.a = a;
        ent.b = b;
        ent.ok = true;

        std::vector<std::pair<long long, long long>> draws;
        if (samples < 0) {  // exhaustive over (Z/p)* x (Z/p)*
            for (long long s = 1; s < p; ++s)
                for (long long t = 1; t < p; ++t) draws.emplace_back(s, t);
        } else {
            for (int k = 0; k < samples; ++k) draws.emplace_back(pick(rng), pick(rng));
        }

        for (auto [s, t] : draws) {
            if (!ent.ok) break;
            std::fill(M.begin(), M.end(), 0);
            for (int i = 0; i < dim; ++i) M[i * dim + i] = 1;
            right_mul(num_root_element(dps[ia], s, p));
            right_mul(num_root_element(dps[ib], t, p));
            right_mul(num_root_element(dps[ia], -s, p));
            right_mul(num_root_element(dps[ib], -t, p));

            TargetList tg = commutator_targets(sys, a, b);
            for (std::size_t k = 0; k < tg.roots.size() && ent.ok; ++k) {
                int ig = sys.root_index(tg.roots[k]);
                auto [r, c, v] = probes[ig];
                long long u = M[r * dim + c] % p * modpow(v, p - 2, p) % p;
                if (u < 0) u += p;
                auto [i, j] = tg.ij[k];
                if (i == 1 && j == 1 && sys.is_root(a + b)) {
                    long long want = tab.N(a, b) % p * (s % p) % p * (t % p) % p;
                    want = ((want % p) + p) % p;
                    if (u != want && u != (p - want) % p) {
                        ent.ok = false;
                        ent.note = "C_11 coordinate does not match ±N*s*t mod p";
                    }
                }
                left_mul(num_root_element(dps[ig], -u, p));
            }
            if (ent.ok) {
                for (int i = 0; i < dim && ent.ok; ++i)
                    for (int j = 0; j < dim && ent.ok; ++j) {
                        long long w = ((M[i * dim + j] % p) + p) % p;
                        if (w != (i == j ? 1 : 0)) {
                            ent.ok = false;
                            ent.note = "non-identity residue after peeling mod p";
                        }
                    }
            }
        }
        rpt.all_ok = rpt.all_ok && ent.ok;
        rpt.pairs.push_back(std::move(ent));
    }
    return rpt;
}

}  // namespace iso
