#include "iso/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace iso {

namespace {

Poly::Mono mono_mul(const Poly::Mono& a, const Poly::Mono& b) {
    Poly::Mono out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void Poly::trim() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

Poly Poly::constant(long long c) {
    Poly p;
    if (c) p.terms_[{}] = c;
    return p;
}

Poly Poly::var(int id, int exp) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    if (exp == 0) return constant(1);
    Poly p;
    p.terms_[{{id, exp}}] = 1;
    return p;
}

Poly Poly::operator-() const {
    Poly p(*this);
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] += c;
    trim();
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly p(*this);
    p += o;
    return p;
}

Poly Poly::operator-(const Poly& o) const {
    Poly p(*this);
    p += -o;
    return p;
}

Poly Poly::operator*(const Poly& o) const {
    Poly p;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) p.terms_[mono_mul(m1, m2)] += c1 * c2;
    p.trim();
    return p;
}

Poly Poly::operator*(long long k) const {
    Poly p(*this);
    for (auto& [m, c] : p.terms_) c *= k;
    p.trim();
    return p;
}

Poly Poly::divided(long long k) const {
    if (k == 0) throw std::invalid_argument("division by zero");
    Poly p(*this);
    for (auto& [m, c] : p.terms_) {
        if (c % k) throw std::domain_error("inexact integer division of polynomial");
        c /= k;
    }
    return p;
}

long long Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (auto [v, e] : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

bool Poly::is_homogeneous(const std::function<int(int)>& weight, int* deg) const {
    if (terms_.empty()) {
        if (deg) *deg = 0;
        return true;
    }
    bool first = true;
    int common = 0;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (auto [v, e] : m) s += e * weight(v);
        if (first) {
            common = s;
            first = false;
        } else if (s != common) {
            return false;
        }
    }
    if (deg) *deg = common;
    return true;
}

Poly Poly::substitute(const std::map<int, Poly>& repl) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
        Poly term = constant(c);
        for (auto [v, e] : m) {
            auto it = repl.find(v);
            Poly base = it == repl.end() ? var(v) : it->second;
            for (int k = 0; k < e; ++k) term = term * base;
        }
        out += term;
    }
    return out;
}

long long Poly::eval_ll(const std::function<long long(int)>& val) const {
    long long out = 0;
    for (const auto& [m, c] : terms_) {
        long long t = c;
        for (auto [v, e] : m)
            for (int k = 0; k < e; ++k) t *= val(v);
        out += t;
    }
    return out;
}

std::string Poly::str(const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += c >= 0 ? " + " : " - ";
        else if (c < 0) s += "-";
        long long a = c < 0 ? -c : c;
        bool coef = (a != 1 || m.empty());
        if (coef) s += std::to_string(a);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (coef || i) s += "*";
            s += name ? name(m[i].first) : "x" + std::to_string(m[i].first);
            if (m[i].second > 1) s += "^" + std::to_string(m[i].second);
        }
    }
    return s;
}

PolyMat pm_identity(int n) {
    PolyMat m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i) m[i][i] = Poly::constant(1);
    return m;
}

PolyMat pm_mul(const PolyMat& a, const PolyMat& b) {
    std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    PolyMat out(n, std::vector<Poly>(p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < p; ++j) {
                if (b[t][j].is_zero()) continue;
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    return out;
}

bool pm_is_identity(const PolyMat& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (i == j && a[i][j] != Poly::constant(1)) return false;
            if (i != j && !a[i][j].is_zero()) return false;
        }
    return true;
}

}  // namespace iso
