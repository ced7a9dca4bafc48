#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "iso/rootcore.hpp"

namespace iso {

/// An ideal, stored as the sorted list of element indices it contains.
using Ideal = std::vector<int>;

struct QuotientRing;

/// An explicit finite commutative ring with 1: Z/n, F_p[x]/(f) (fields when f
/// is irreducible) and truncated polynomial rings F_p[t]/(t^k). Elements are
/// dense indices 0..size-1 with 0 = zero and 1 = one; arithmetic is table
/// driven, and the full ideal lattice is enumerated at construction.
class FiniteRing {
public:
    static FiniteRing zmod(long long n);
    /// F_p[x]/(f) with f monic of degree k >= 1, given by its coefficients
    /// f = x^k + f[k-1] x^{k-1} + ... + f[0] (mod p).
    static FiniteRing poly_quotient(int p, const std::vector<int>& f, const std::string& var = "t");
    /// The field with p^k elements (smallest-lexicographic irreducible modulus).
    static FiniteRing galois_field(int p, int k);
    /// Parse "Z/4", "F9", "F2[t]/(t^2)", "F3[t]/(t^3)".
    static FiniteRing parse(const std::string& descriptor);

    const std::string& name() const { return name_; }
    const std::string& kind() const { return kind_; }
    int size() const { return size_; }
    int zero() const { return 0; }
    int one() const { return one_; }

    int add(int a, int b) const { return add_[a][b]; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add_[a][neg_[b]]; }
    /// Image of the integer n under Z -> R.
    int from_int(long long n) const;
    bool is_unit(int a) const { return inv_[a] >= 0; }
    int inverse(int a) const;  // throws for non-units

    const std::vector<int>& units() const { return units_; }
    std::string element_name(int a) const;

    /// Complete ideal lattice, sorted by size then lexicographically; the
    /// first entry is (0) and the last is R.
    const std::vector<Ideal>& ideals() const { return ideals_; }
    Ideal ideal_generated(const std::vector<int>& gens) const;
    int ideal_index(const Ideal& I) const;  // -1 when absent
    bool ideal_contains(const Ideal& I, int a) const;

    bool is_local() const { return local_; }
    const Ideal& maximal_ideal() const;  // throws unless local

    nlohmann::json to_json() const;

    /// R/I together with the residue epimorphism (element -> class index).
    QuotientRing quotient(const Ideal& I) const;

private:
    friend struct QuotientRing;
    FiniteRing() = default;
    void finalize();  // inverses, units, ideal lattice, locality

    std::string name_, kind_;
    int size_ = 0, one_ = 0;
    std::vector<std::vector<int>> add_, mul_;
    std::vector<int> neg_, inv_;  // inv_[a] = -1 for non-units
    std::vector<int> units_;
    std::vector<std::string> names_;
    std::vector<Ideal> ideals_;
    std::vector<int> maximal_;  // indices into ideals_
    bool local_ = false;
};

struct QuotientRing {
    FiniteRing ring;
    std::vector<int> residue;  // residue[a] = index in ring of a + I
};

}  // namespace iso
