#include "iso/finitering.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace iso {

namespace {

std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& f, int p) {
    int k = static_cast<int>(f.size());
    std::vector<int> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // reduce by the monic modulus: x^k = -(f[k-1] x^{k-1} + ... + f[0])
    for (int d = 2 * k - 2; d >= k; --d) {
        int c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i) prod[d - k + i] = ((prod[d - k + i] - c * f[i]) % p + p) % p;
    }
    prod.resize(k);
    return prod;
}

std::string poly_name(const std::vector<int>& digits, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (int d = static_cast<int>(digits.size()) - 1; d >= 0; --d) {
        int c = digits[d];
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        if (d == 0 || c != 1) os << c;
        if (d >= 1) {
            if (c != 1) os << "*";
            os << var;
            if (d > 1) os << "^" << d;
        }
    }
    return first ? "0" : os.str();
}

}  // namespace

FiniteRing FiniteRing::zmod(long long n) {
    if (n < 2) throw std::invalid_argument("Z/n needs n >= 2");
    FiniteRing r;
    r.size_ = static_cast<int>(n);
    r.kind_ = "Z/n";
    r.name_ = "Z/" + std::to_string(n);
    r.one_ = 1;
    r.add_.assign(r.size_, std::vector<int>(r.size_));
    r.mul_.assign(r.size_, std::vector<int>(r.size_));
    r.neg_.resize(r.size_);
    r.names_.resize(r.size_);
    for (int a = 0; a < r.size_; ++a) {
        r.neg_[a] = static_cast<int>((n - a) % n);
        r.names_[a] = std::to_string(a);
        for (int b = 0; b < r.size_; ++b) {
            r.add_[a][b] = static_cast<int>((a + b) % n);
            r.mul_[a][b] = static_cast<int>((static_cast<long long>(a) * b) % n);
        }
    }
    r.finalize();
    return r;
}

FiniteRing FiniteRing::poly_quotient(int p, const std::vector<int>& f, const std::string& var) {
    if (p < 2 || f.empty()) throw std::invalid_argument("bad polynomial quotient parameters");
    int k = static_cast<int>(f.size());
    int size = 1;
    for (int i = 0; i < k; ++i) size *= p;
    FiniteRing r;
    r.size_ = size;
    r.kind_ = "F_p[x]/(f)";
    r.one_ = 1;
    auto digits = [&](int idx) {
        std::vector<int> d(k);
        for (int i = 0; i < k; ++i) {
            d[i] = idx % p;
            idx /= p;
        }
        return d;
    };
    auto index_of = [&](const std::vector<int>& d) {
        int idx = 0;
        for (int i = k - 1; i >= 0; --i) idx = idx * p + d[i];
        return idx;
    };
    r.add_.assign(size, std::vector<int>(size));
    r.mul_.assign(size, std::vector<int>(size));
    r.neg_.resize(size);
    r.names_.resize(size);
    for (int a = 0; a < size; ++a) {
        std::vector<int> da = digits(a), nd(k);
        for (int i = 0; i < k; ++i) nd[i] = (p - da[i]) % p;
        r.neg_[a] = index_of(nd);
        r.names_[a] = poly_name(da, var);
        for (int b = 0; b < size; ++b) {
            std::vector<int> db = digits(b), sd(k);
            for (int i = 0; i < k; ++i) sd[i] = (da[i] + db[i]) % p;
            r.add_[a][b] = index_of(sd);
            r.mul_[a][b] = index_of(poly_mul_mod(da, db, f, p));
        }
    }
    bool truncated = std::all_of(f.begin(), f.end(), [](int c) { return c == 0; });
    std::ostringstream nm;
    nm << "F" << p << "[" << var << "]/(";
    if (truncated) {
        nm << var << "^" << k;
    } else {
        std::vector<int> mon(k + 1, 0);
        mon[k] = 1;
        for (int i = 0; i < k; ++i) mon[i] = f[i];
        nm << poly_name(mon, var);
    }
    nm << ")";
    r.name_ = nm.str();
    r.finalize();
    return r;
}

FiniteRing FiniteRing::galois_field(int p, int k) {
    if (k == 1) {
        FiniteRing r = zmod(p);
        r.name_ = "F" + std::to_string(p);
        return r;
    }
    // smallest monic irreducible of degree k over F_p: no monic divisor of
    // degree 1..k/2 (brute-force trial division on digit vectors)
    int nf = 1;
    for (int i = 0; i < k; ++i) nf *= p;
    for (int code = 0; code < nf; ++code) {
        std::vector<int> f(k);
        int c = code;
        for (int i = 0; i < k; ++i) {
            f[i] = c % p;
            c /= p;
        }
        bool irreducible = true;
        for (int dd = 1; irreducible && 2 * dd <= k; ++dd) {
            int nd = 1;
            for (int i = 0; i < dd; ++i) nd *= p;
            for (int dc = 0; irreducible && dc < nd; ++dc) {
                // divisor g = x^dd + ... ; long-divide x^k + f by g, check remainder
                std::vector<int> g(dd + 1, 0);
                g[dd] = 1;
                int t = dc;
                for (int i = 0; i < dd; ++i) {
                    g[i] = t % p;
                    t /= p;
                }
                std::vector<int> rem(k + 1, 0);
                rem[k] = 1;
                for (int i = 0; i < k; ++i) rem[i] = f[i];
                for (int d = k; d >= dd; --d) {
                    int q = rem[d];
                    if (!q) continue;
                    for (int i = 0; i <= dd; ++i)
                        rem[d - dd + i] = ((rem[d - dd + i] - q * g[i]) % p + p) % p;
                }
                if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; }))
                    irreducible = false;
            }
        }
        if (irreducible) {
            FiniteRing r = poly_quotient(p, f);
            r.name_ = "F" + std::to_string(nf);
            r.kind_ = "F_p[x]/(f)";
            return r;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

FiniteRing FiniteRing::parse(const std::string& descriptor) {
    std::smatch m;
    if (std::regex_match(descriptor, m, std::regex(R"(Z/?(\d+))")))
        return zmod(std::stoll(m[1]));
    if (std::regex_match(descriptor, m, std::regex(R"(F(\d+)\[(\w+)\]/\((\w+)\^(\d+)\))"))) {
        int p = std::stoi(m[1]);
        int k = std::stoi(m[4]);
        if (m[2] != m[3]) throw std::invalid_argument("mismatched variable in " + descriptor);
        return poly_quotient(p, std::vector<int>(k, 0), m[2]);
    }
    if (std::regex_match(descriptor, m, std::regex(R"(F(\d+))"))) {
        int q = std::stoi(m[1]);
        for (int p = 2; p <= q; ++p) {
            if (q % p) continue;
            int k = 0, t = q;
            while (t % p == 0) {
                t /= p;
                ++k;
            }
            if (t != 1) break;  // not a prime power
            return galois_field(p, k);
        }
        throw std::invalid_argument("field size is not a prime power: " + descriptor);
    }
    throw std::invalid_argument("unrecognized ring descriptor: " + descriptor);
}

void FiniteRing::finalize() {
    inv_.assign(size_, -1);
    units_.clear();
    for (int a = 0; a < size_; ++a)
        for (int b = 0; b < size_; ++b)
            if (mul_[a][b] == one_) {
                inv_[a] = b;
                break;
            }
    for (int a = 0; a < size_; ++a)
        if (inv_[a] >= 0) units_.push_back(a);

    // ideal lattice: close the principal ideals under ideal sum
    std::set<Ideal> lattice;
    for (int a = 0; a < size_; ++a) lattice.insert(ideal_generated({a}));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Ideal> cur(lattice.begin(), lattice.end());
        for (const Ideal& I : cur)
            for (const Ideal& J : cur) {
                std::set<int> s;
                for (int x : I)
                    for (int y : J) s.insert(add_[x][y]);
                Ideal sum(s.begin(), s.end());
                if (lattice.insert(sum).second) grew = true;
            }
    }
    ideals_.assign(lattice.begin(), lattice.end());
    std::sort(ideals_.begin(), ideals_.end(), [](const Ideal& a, const Ideal& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    maximal_.clear();
    for (std::size_t i = 0; i < ideals_.size(); ++i) {
        if (static_cast<int>(ideals_[i].size()) == size_) continue;  // not proper
        bool maximal = true;
        for (std::size_t j = 0; j < ideals_.size() && maximal; ++j) {
            if (j == i || static_cast<int>(ideals_[j].size()) == size_) continue;
            if (std::includes(ideals_[j].begin(), ideals_[j].end(), ideals_[i].begin(),
                              ideals_[i].end()) &&
                ideals_[j].size() > ideals_[i].size())
                maximal = false;
        }
        if (maximal) maximal_.push_back(static_cast<int>(i));
    }
    local_ = maximal_.size() == 1;
}

int FiniteRing::from_int(long long n) const {
    // additive order of 1 = characteristic
    int chr = 1, acc = one_;
    while (acc != 0) {
        acc = add_[acc][one_];
        ++chr;
    }
    long long k = ((n % chr) + chr) % chr;
    int out = 0;
    for (long long i = 0; i < k; ++i) out = add_[out][one_];
    return out;
}

int FiniteRing::inverse(int a) const {
    if (inv_[a] < 0) throw std::invalid_argument(element_name(a) + " is not a unit in " + name_);
    return inv_[a];
}

std::string FiniteRing::element_name(int a) const { return names_[a]; }

Ideal FiniteRing::ideal_generated(const std::vector<int>& gens) const {
    std::set<int> s = {0};
    for (int g : gens)
        for (int r = 0; r < size_; ++r) s.insert(mul_[r][g]);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        for (int x : cur)
            for (int y : cur)
                if (s.insert(add_[x][y]).second) grew = true;
    }
    return Ideal(s.begin(), s.end());
}

int FiniteRing::ideal_index(const Ideal& I) const {
    for (std::size_t i = 0; i < ideals_.size(); ++i)
        if (ideals_[i] == I) return static_cast<int>(i);
    return -1;
}

bool FiniteRing::ideal_contains(const Ideal& I, int a) const {
    return std::binary_search(I.begin(), I.end(), a);
}

const Ideal& FiniteRing::maximal_ideal() const {
    if (!local_) throw std::logic_error(name_ + " is not local");
    return ideals_[maximal_[0]];
}

nlohmann::json FiniteRing::to_json() const {
    nlohmann::json j;
    j["name"] = name_;
    j["kind"] = kind_;
    j["size"] = size_;
    j["units"] = units_;
    j["local"] = local_;
    nlohmann::json ids = nlohmann::json::array();
    for (const Ideal& I : ideals_) ids.push_back(I);
    j["ideals"] = ids;
    return j;
}

QuotientRing FiniteRing::quotient(const Ideal& I) const {
    // coset classes keyed by sorted element content; class of 0 comes first
    std::vector<int> cls(size_, -1);
    std::vector<int> reps;
    for (int a = 0; a < size_; ++a) {
        if (cls[a] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(a);
        for (int x : I) cls[add_[a][x]] = id;
        if (cls[a] != id) throw std::invalid_argument("not an ideal: coset structure broken");
    }
    int qs = static_cast<int>(reps.size());
    QuotientRing out;
    out.residue = cls;
    FiniteRing& q = out.ring;
    q.size_ = qs;
    q.kind_ = "quotient";
    q.name_ = name_ + "/(I" + std::to_string(ideal_index(I)) + ")";
    q.one_ = cls[one_];
    q.add_.assign(qs, std::vector<int>(qs));
    q.mul_.assign(qs, std::vector<int>(qs));
    q.neg_.resize(qs);
    q.names_.resize(qs);
    for (int a = 0; a < qs; ++a) {
        q.neg_[a] = cls[neg_[reps[a]]];
        q.names_[a] = names_[reps[a]] + "~";
        for (int b = 0; b < qs; ++b) {
            q.add_[a][b] = cls[add_[reps[a]][reps[b]]];
            q.mul_[a][b] = cls[mul_[reps[a]][reps[b]]];
        }
    }
    // well-definedness: products and sums must not depend on representatives
    for (int a = 0; a < size_; ++a)
        for (int b = 0; b < size_; ++b) {
            if (cls[add_[a][b]] != q.add_[cls[a]][cls[b]] ||
                cls[mul_[a][b]] != q.mul_[cls[a]][cls[b]])
                throw std::invalid_argument("not an ideal: operations do not descend");
        }
    q.finalize();
    return out;
}

}  // namespace iso
