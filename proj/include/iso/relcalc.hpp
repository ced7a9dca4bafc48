#pragma once

#include <map>
#include <string>
#include <vector>

#include "iso/chevalley.hpp"
#include "iso/relroots.hpp"

namespace iso {

/// Variable-id layout for the symbolic relative calculus. The two argument
/// slots of q/N maps use fixed bases so the computed polynomials are reusable
/// by substitution; callers of n_chain and friends must allocate their own
/// variables at kCallerVarBase or above.
constexpr int kSlotStride = 100;
constexpr int kSlot0Base = 0;    // first argument (v of q, u of N)
constexpr int kSlot1Base = 100;  // second argument (w of q, v of N)
constexpr int kLambdaVar = 200;  // homogeneity scalar
constexpr int kMuVar = 201;      // second homogeneity scalar
constexpr int kCallerVarBase = 300;

/// q^i_alpha for one alpha: i >= 2 -> component polynomials per basis vector
/// of V_{i alpha} (fiber in canonical order), in slot-0/slot-1 variables.
struct QMap {
    std::map<int, std::vector<Poly>> q;
};

/// N_{alpha beta i j}: (i,j) -> component polynomials per basis vector of
/// V_{i alpha + j beta}; slot 0 = V_alpha argument, slot 1 = V_beta argument.
struct NMap {
    std::map<std::pair<int, int>, std::vector<Poly>> n;
};

struct AbeReport {
    bool pass = false;
    long long checked = 0;
    std::string counterexample;  // empty when pass
};

struct ChainReport {
    bool pass = false;
    std::string note;
    std::vector<Poly> gamma_value;           // peeled coordinate on V_gamma
    std::vector<RelativeRoot> tail_support;  // roots carrying nonzero tail factors
};

struct FReport {
    bool pass = false;
    int span_dim = 0;
    int target_dim = 0;
    long long tuples_used = 0;
    std::string note;
};

/// Symbolic calculus of relative root elements for one split (Gamma = id)
/// case, over a fixed faithful representation.
class RelContext {
public:
    RelContext(char series, int rank, std::vector<int> J, const std::string& rep_kind = "adjoint");

    const RootSystem& sys() const { return rel_.base(); }
    const RelativeRootSystem& rel() const { return rel_; }
    const StructureConstantTable& table() const { return tab_; }
    const Rep& rep() const { return rep_; }

    int vrank(const RelativeRoot& alpha) const;

    /// X_alpha(v): product of x_a(v_a) over the fiber in canonical order.
    PolyMat rel_root_element(const RelativeRoot& alpha, const std::vector<Poly>& v) const;
    /// Exact inverse (reversed product of negated factors).
    PolyMat rel_root_element_inv(const RelativeRoot& alpha, const std::vector<Poly>& v) const;

    /// Coordinates of M as the ordered product of x_a over `order` (absolute
    /// roots). Requires the set to be sum-closed without opposite pairs;
    /// throws on precondition violation or non-membership.
    std::vector<Poly> unipotent_factorize(PolyMat M, const std::vector<Root>& order) const;

    /// eq:sum coefficient maps, cached; throws LemmaViolation on failure.
    const QMap& compute_q(const RelativeRoot& alpha) const;
    /// eq:Chev coefficient maps, cached; alpha, beta not anti-proportional.
    const NMap& compute_N(const RelativeRoot& alpha, const RelativeRoot& beta) const;

    /// Lemma 5.1 check over Z/modulus, exhaustive in the second argument.
    AbeReport check_ABe(const RelativeRoot& A, const RelativeRoot& B, long long modulus) const;

    /// Multilinear chain map N_{roots[0],...,roots[m]} applied to symbolic or
    /// concrete component vectors (caller variables only).
    std::vector<Poly> n_chain(const std::vector<RelativeRoot>& roots,
                              const std::vector<std::vector<Poly>>& values) const;

    /// Lemma 5.2: nested commutator along a special chain lands in
    /// X_gamma(n_chain) times factors of strictly larger height.
    ChainReport check_chain_comm(const RelativeRoot& delta,
                                 const std::vector<RelativeRoot>& chain) const;

    /// Lemma 5.5: the map F built from the maximal special chain spans
    /// End(V_max) over Z/prime.
    FReport check_F_surjective(long long prime, long long tuple_budget = 4000) const;

    /// q/N tables for all admissible pairs as JSON.
    nlohmann::json maps_to_json() const;

private:
    PolyMat fiber_product(const RelativeRoot& alpha, const std::vector<Poly>& v, bool inverse) const;
    std::vector<Poly> peel_graded(PolyMat M, const std::vector<Root>& targets) const;

    RelativeRootSystem rel_;
    StructureConstantTable tab_;
    Rep rep_;
    mutable std::map<int, QMap> qcache_;
    mutable std::map<std::pair<int, int>, NMap> ncache_;
};

}  // namespace iso
