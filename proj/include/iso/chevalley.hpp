#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "iso/poly.hpp"
#include "iso/rootcore.hpp"

namespace iso {

/// Minimal exact rational, used where intermediate Lie-theoretic quantities
/// (coroot coefficients, Jacobi combinations, divided powers) pass through
/// fractions before landing back in the integers.
struct Frac {
    long long n = 0, d = 1;

    Frac() = default;
    Frac(long long num, long long den = 1);
    Frac operator+(const Frac& o) const;
    Frac operator-(const Frac& o) const;
    Frac operator*(const Frac& o) const;
    Frac operator/(const Frac& o) const;
    bool operator==(const Frac& o) const { return n == o.n && d == o.d; }
    bool is_integer() const { return d == 1; }
    long long as_integer() const;  // throws unless integral
};

/// Signed Chevalley structure constants N(a,b) for all pairs with a+b a root,
/// under the extraspecial-pair convention in canonical root order.
class StructureConstantTable {
public:
    explicit StructureConstantTable(const RootSystem& sys);

    const RootSystem& system() const { return sys_; }
    bool has(const Root& a, const Root& b) const;
    int N(const Root& a, const Root& b) const;  // throws when a+b is not a root

    /// The extraspecial pair (a,b) for a non-simple positive root c = a+b.
    std::pair<Root, Root> extraspecial(const Root& c) const;

    nlohmann::json to_json() const;

private:
    int compute(int ia, int ib);  // memoized, indices into sys_.roots()
    RootSystem sys_;
    std::vector<std::pair<int, int>> extraspecial_;   // per root index (positives only)
    std::map<std::pair<int, int>, int> table_;
    std::map<std::pair<int, int>, int> memo_;
};

/// A faithful integral representation carrying root-element templates:
/// nilpotent integer matrices E_a for every root plus the weight of each
/// basis vector in Cartan coordinates <lambda, a_i~>.
struct Rep {
    char series;
    int rank;
    int dim = 0;
    std::string kind;                 // "adjoint", "natural", "symplectic"
    std::vector<IntMat> E;            // indexed like RootSystem::roots()
    std::vector<IntVec> weight;       // per basis index

    /// Divided powers E^k/k! (exact; throws if integrality fails).
    std::vector<IntMat> divided_powers(int root_index) const;
};

Rep adjoint_rep(const RootSystem& sys, const StructureConstantTable& tab);
/// Natural realization for type A, symplectic for type C.
Rep classical_rep(const RootSystem& sys, const StructureConstantTable& tab);

/// x_a(t) = exp(t E_a) as an integer polynomial matrix.
PolyMat root_element(const RootSystem& sys, const Rep& rep, const Root& a, const Poly& t);

/// A nonzero entry (row, col, value) of E_a with minimal |value|; reading this
/// entry of a suitably reduced unipotent matrix recovers the x_a argument.
std::array<int, 3> rep_probe_entry(const Rep& rep, int root_index);

/// Peel a unipotent polynomial matrix as an ordered product of root elements
/// over `targets` (in the order given); returns the argument polynomial per
/// target. Throws if the residue is not the identity.
std::vector<Poly> factor_unipotent(const RootSystem& sys, const Rep& rep, PolyMat P,
                                   const std::vector<Root>& targets);

struct CommutatorEntry {
    Root a, b;
    std::map<std::pair<int, int>, long long> C;  // (i,j) -> coefficient
    bool ok = false;
    std::string note;
};

struct CommutatorReport {
    std::vector<CommutatorEntry> pairs;
    bool all_ok = true;
};

/// Full symbolic verification of [x_a(s), x_b(t)] = prod x_{ia+jb}(C_ij s^i t^j)
/// for every non-proportional pair, with C_11 cross-checked against the table.
CommutatorReport verify_commutator_formula(const RootSystem& sys, const Rep& rep,
                                           const StructureConstantTable& tab);

/// Numeric spot-check of the commutator formula over Z/p at random arguments,
/// for large systems where full symbolic matrices are too expensive.
/// `max_pairs` < 0 checks every non-proportional ordered pair, otherwise a
/// seeded random sample of that size. `samples` counts random (s,t) draws
/// per pair; `samples` < 0 runs every (s,t) in ((Z/p)*)^2 exhaustively.
CommutatorReport verify_commutator_formula_mod(const RootSystem& sys, const Rep& rep,
                                               const StructureConstantTable& tab,
                                               long long p, unsigned seed,
                                               int max_pairs = -1, int samples = 1);

}  // namespace iso
