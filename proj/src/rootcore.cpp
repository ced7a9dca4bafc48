#include "iso/rootcore.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace iso {

int Root::height() const {
    return std::accumulate(c.begin(), c.end(), 0);
}

bool Root::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

Root Root::operator-() const {
    Root r(*this);
    for (int& x : r.c) x = -x;
    return r;
}

Root Root::operator+(const Root& o) const {
    Root r(*this);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

Root Root::operator-(const Root& o) const {
    Root r(*this);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}

Root Root::operator*(int k) const {
    Root r(*this);
    for (int& x : r.c) x *= k;
    return r;
}

bool Root::operator<(const Root& o) const {
    int ha = height(), hb = o.height();
    if (ha != hb) return ha < hb;
    return c < o.c;
}

std::string to_string(const Root& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(r.c[i]);
    }
    return s + ")";
}

RootSystem::RootSystem(char series, int rank) : series_(series), rank_(rank) {
    auto bad = [&] {
        throw std::invalid_argument(std::string("unsupported root system descriptor ") +
                                    series + std::to_string(rank));
    };
    switch (series) {
        case 'A': if (rank < 1 || rank > 8) bad(); break;
        case 'B': if (rank < 2 || rank > 8) bad(); break;
        case 'C': if (rank < 2 || rank > 8) bad(); break;
        case 'D': if (rank < 4 || rank > 8) bad(); break;
        case 'E': if (rank < 6 || rank > 8) bad(); break;
        case 'F': if (rank != 4) bad(); break;
        case 'G': if (rank != 2) bad(); break;
        default: bad();
    }
    build_cartan();
    generate_roots();
}

void RootSystem::build_cartan() {
    int n = rank_;
    cartan_.assign(n, IntVec(n, 0));
    d_.assign(n, 1);
    for (int i = 0; i < n; ++i) cartan_[i][i] = 2;
    auto bond = [&](int i, int j) { cartan_[i][j] = cartan_[j][i] = -1; };

    switch (series_) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            break;
        case 'B':
            // Bourbaki: a_n short, the rest long.
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            cartan_[n - 2][n - 1] = -2;
            for (int i = 0; i < n - 1; ++i) d_[i] = 2;
            break;
        case 'C':
            // Bourbaki: a_n long, the rest short.
            for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
            cartan_[n - 1][n - 2] = -2;
            d_[n - 1] = 2;
            break;
        case 'D':
            for (int i = 0; i + 1 < n - 1; ++i) bond(i, i + 1);
            bond(n - 3, n - 1);
            break;
        case 'E':
            // Bourbaki: chain 1-3-4-5-..., node 2 attached to node 4.
            bond(0, 2);
            bond(1, 3);
            for (int i = 2; i + 1 < n; ++i) bond(i, i + 1);
            break;
        case 'F':
            bond(0, 1);
            bond(2, 3);
            cartan_[1][2] = -2;
            cartan_[2][1] = -1;
            d_[0] = d_[1] = 2;
            break;
        case 'G':
            cartan_[0][1] = -1;
            cartan_[1][0] = -3;
            d_[1] = 3;
            break;
    }
}

void RootSystem::generate_roots() {
    int n = rank_;
    std::set<IntVec> pos;
    std::vector<Root> frontier;
    for (int i = 0; i < n; ++i) {
        IntVec v(n, 0);
        v[i] = 1;
        pos.insert(v);
        frontier.emplace_back(v);
    }
    // Height-ascending closure via root strings: a+b is a root iff
    // p - <a,b~> > 0 where p = max{k : a-kb in Phi}.
    while (!frontier.empty()) {
        std::vector<Root> next;
        for (const Root& a : frontier) {
            for (int b = 0; b < n; ++b) {
                if (a.height() == 1 && a.c[b] == 1) continue;  // a == a_b, 2a_b never a root
                int pair = 0;
                for (int i = 0; i < n; ++i) pair += a.c[i] * cartan_[i][b];
                int p = 0;
                Root down = a;
                while (true) {
                    down.c[b] -= 1;
                    if (pos.count(down.c)) { ++p; continue; }
                    break;
                }
                if (p - pair > 0) {
                    Root up = a;
                    up.c[b] += 1;
                    if (pos.insert(up.c).second) next.push_back(up);
                }
            }
        }
        frontier = std::move(next);
    }

    positive_.assign(pos.size(), Root{});
    std::size_t k = 0;
    for (const auto& v : pos) positive_[k++] = Root(v);
    roots_.clear();
    for (const Root& r : positive_) roots_.push_back(-r);
    for (const Root& r : positive_) roots_.push_back(r);
    std::sort(roots_.begin(), roots_.end());
    std::sort(positive_.begin(), positive_.end());
    for (std::size_t i = 0; i < roots_.size(); ++i) index_[roots_[i].c] = (int)i;
    highest_ = roots_.back();
}

std::vector<Root> RootSystem::simple_roots() const {
    std::vector<Root> s;
    for (int i = 0; i < rank_; ++i) {
        IntVec v(rank_, 0);
        v[i] = 1;
        s.emplace_back(v);
    }
    return s;
}

int RootSystem::root_index(const Root& r) const {
    auto it = index_.find(r.c);
    if (it == index_.end()) throw std::invalid_argument("not a root: " + to_string(r));
    return it->second;
}

std::optional<Root> RootSystem::root_sum(const Root& a, const Root& b) const {
    Root s = a + b;
    if (!s.is_zero() && is_root(s)) return s;
    return std::nullopt;
}

long RootSystem::inner(const Root& a, const Root& b) const {
    // (a_i, a_j) = d_j * C[i][j]
    long s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (a.c[i] && b.c[j]) s += (long)a.c[i] * b.c[j] * d_[j] * cartan_[i][j];
    return s;
}

int RootSystem::pairing(const Root& a, const Root& b) const {
    long num = 2 * inner(a, b);
    long den = inner(b, b);
    if (den == 0 || num % den != 0)
        throw std::invalid_argument("pairing undefined");
    return (int)(num / den);
}

DiagramAutGroup RootSystem::automorphisms() const {
    DiagramAutGroup g;
    IntVec perm(rank_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < rank_ && ok; ++i)
            for (int j = 0; j < rank_ && ok; ++j)
                if (cartan_[perm[i]][perm[j]] != cartan_[i][j]) ok = false;
        if (ok) g.elements.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(g.elements.begin(), g.elements.end());
    g.subgroup_list = subgroups(g.elements);
    return g;
}

IntMat RootSystem::extended_diagram() const {
    std::vector<Root> nodes = simple_roots();
    nodes.push_back(-highest_);
    int m = (int)nodes.size();
    IntMat adj(m, IntVec(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            if (inner(nodes[i], nodes[j]) != 0)
                adj[i][j] = pairing(nodes[i], nodes[j]) * pairing(nodes[j], nodes[i]);
        }
    return adj;
}

nlohmann::json RootSystem::to_json() const {
    nlohmann::json j;
    j["series"] = std::string(1, series_);
    j["rank"] = rank_;
    j["cartan"] = cartan_;
    std::vector<IntVec> rs;
    for (const Root& r : roots_) rs.push_back(r.c);
    j["roots"] = rs;
    return j;
}

IntVec compose_perm(const IntVec& p, const IntVec& q) {
    IntVec r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
}

IntVec invert_perm(const IntVec& p) {
    IntVec r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = (int)i;
    return r;
}

std::vector<std::vector<IntVec>> subgroups(const std::vector<IntVec>& group) {
    // Brute force: close every subset of elements; orders here are <= 6.
    std::set<std::vector<IntVec>> found;
    std::size_t n = group.size();
    if (n > 16) throw std::invalid_argument("group too large for subgroup scan");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::set<IntVec> cl;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) cl.insert(group[i]);
        IntVec id(group.empty() ? 0 : group[0].size());
        std::iota(id.begin(), id.end(), 0);
        cl.insert(id);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<IntVec> cur(cl.begin(), cl.end());
            for (const auto& a : cur)
                for (const auto& b : cur)
                    if (cl.insert(compose_perm(a, b)).second) grew = true;
            for (const auto& a : cur)
                if (cl.insert(invert_perm(a)).second) grew = true;
        }
        found.insert(std::vector<IntVec>(cl.begin(), cl.end()));
    }
    return std::vector<std::vector<IntVec>>(found.begin(), found.end());
}

}  // namespace iso
