#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace iso {

using IntVec = std::vector<int>;
using IntMat = std::vector<std::vector<int>>;

/// A root, stored as an integer coefficient vector over the simple roots.
struct Root {
    IntVec c;

    Root() = default;
    explicit Root(IntVec v) : c(std::move(v)) {}

    int height() const;
    bool positive() const { return height() > 0; }
    Root operator-() const;
    Root operator+(const Root& o) const;
    Root operator-(const Root& o) const;
    Root operator*(int k) const;
    bool operator==(const Root& o) const { return c == o.c; }
    bool operator!=(const Root& o) const { return c != o.c; }
    bool is_zero() const;

    /// Canonical order: ascending height, then lexicographic on coefficients.
    bool operator<(const Root& o) const;
};

std::string to_string(const Root& r);

/// Permutations of the simple roots preserving the Cartan matrix,
/// together with the full subgroup lattice.
struct DiagramAutGroup {
    std::vector<IntVec> elements;           // each a permutation of {0..rank-1}
    std::vector<std::vector<IntVec>> subgroup_list;  // every subgroup, each sorted

    std::size_t order() const { return elements.size(); }
};

/// A reduced irreducible root system with Bourbaki numbering.
class RootSystem {
public:
    RootSystem(char series, int rank);

    char series() const { return series_; }
    int rank() const { return rank_; }
    const IntMat& cartan() const { return cartan_; }

    const std::vector<Root>& roots() const { return roots_; }          // canonical order
    const std::vector<Root>& positive_roots() const { return positive_; }
    std::vector<Root> simple_roots() const;

    bool is_root(const Root& r) const { return index_.count(r.c) != 0; }
    int root_index(const Root& r) const;

    static int height(const Root& r) { return r.height(); }

    /// a+b if it is a root, otherwise nothing.
    std::optional<Root> root_sum(const Root& a, const Root& b) const;

    /// Symmetrized inner product (a_i,a_i) = 2*d_i, short roots normalized to d=1.
    long inner(const Root& a, const Root& b) const;
    /// Cartan pairing <a, b~> = 2(a,b)/(b,b); exact integer for roots b.
    int pairing(const Root& a, const Root& b) const;

    const Root& highest_root() const { return highest_; }

    DiagramAutGroup automorphisms() const;

    /// Adjacency of the extended Dynkin diagram: nodes 0..rank-1 are the simple
    /// roots, node rank is the lowest root -a~. Entry = number of bonds
    /// (<x,y~><y,x~>), 0 when orthogonal.
    IntMat extended_diagram() const;

    nlohmann::json to_json() const;

private:
    void build_cartan();
    void generate_roots();

    char series_;
    int rank_;
    IntMat cartan_;
    IntVec d_;  // symmetrizer: half squared length per simple root
    std::vector<Root> roots_;
    std::vector<Root> positive_;
    std::map<IntVec, int> index_;
    Root highest_;
};

/// All subgroups of a small permutation group, by brute-force closure.
std::vector<std::vector<IntVec>> subgroups(const std::vector<IntVec>& group);

IntVec compose_perm(const IntVec& p, const IntVec& q);  // (p*q)(i) = p[q[i]]
IntVec invert_perm(const IntVec& p);

}  // namespace iso
