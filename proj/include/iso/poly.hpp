#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace iso {

/// Exact multivariate polynomial over the integers. Variables are opaque
/// non-negative ids; callers manage the id space.
class Poly {
public:
    using Mono = std::vector<std::pair<int, int>>;  // sorted (var, exp>0)

    Poly() = default;
    static Poly constant(long long c);
    static Poly var(int id, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return terms_ != o.terms_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(long long k) const;
    Poly& operator+=(const Poly& o);

    /// Exact division by an integer; throws when any coefficient resists.
    Poly divided(long long k) const;

    long long coeff(const Mono& m) const;
    long long constant_term() const { return coeff({}); }
    const std::map<Mono, long long>& terms() const { return terms_; }
    int total_degree() const;  // -1 for the zero polynomial

    /// True when every monomial has the same weighted degree; the common
    /// degree is written through `deg` (0 for the zero polynomial).
    bool is_homogeneous(const std::function<int(int)>& weight, int* deg = nullptr) const;

    Poly substitute(const std::map<int, Poly>& repl) const;
    long long eval_ll(const std::function<long long(int)>& val) const;

    std::string str(const std::function<std::string(int)>& name = {}) const;

private:
    std::map<Mono, long long> terms_;
    void trim();
};

using PolyMat = std::vector<std::vector<Poly>>;

PolyMat pm_identity(int n);
PolyMat pm_mul(const PolyMat& a, const PolyMat& b);
bool pm_is_identity(const PolyMat& a);

}  // namespace iso
