#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iso/rootcore.hpp"

namespace iso {

/// Relative roots live in the quotient lattice and reuse the integer-vector
/// root representation; coordinates are indexed by Gamma-orbits of J.
using RelativeRoot = Root;

/// Thrown when an operation's hypotheses fail or a lemma check finds a
/// counterexample; the message carries the witness.
struct LemmaViolation : std::runtime_error {
    explicit LemmaViolation(const std::string& m) : std::runtime_error(m) {}
};

/// Projection data pi_{J,Gamma}: quotient coordinates are the Gamma-orbits of
/// J ordered by minimal element; pi drops Pi\J and sums within each orbit.
struct ProjectionSpec {
    std::vector<int> J;               // sorted simple-root indices
    std::vector<IntVec> Gamma;        // permutation subgroup of Aut(D)
    std::vector<std::vector<int>> orbits;  // Gamma-orbits of J

    ProjectionSpec(const RootSystem& base, std::vector<int> j, std::vector<IntVec> gamma);
};

struct MaxChainResult {
    RelativeRoot sigma;
    char case_tag;                    // 'a' or 'b'
    int k;                            // maximal k with max-k*sigma a relative root
    std::vector<RelativeRoot> chain;  // the negative special chain from max to -max
    std::vector<Root> witnesses;      // a_i in the fibers of the chain entries
};

struct LemmaResult {
    std::string lemma;
    bool pass;
    std::string witness;  // empty when pass
};

class RelativeRootSystem {
public:
    RelativeRootSystem(const RootSystem& base, std::vector<int> J, std::vector<IntVec> Gamma);

    const RootSystem& base() const { return base_; }
    const ProjectionSpec& spec() const { return spec_; }
    int rank() const { return (int)spec_.orbits.size(); }

    RelativeRoot project(const Root& a) const;  // zero vector allowed

    const std::vector<RelativeRoot>& elements() const { return elements_; }  // canonical order
    const std::vector<RelativeRoot>& positive() const { return positive_; }
    const std::vector<RelativeRoot>& simple() const { return simple_; }

    bool contains(const RelativeRoot& a) const;
    int element_index(const RelativeRoot& a) const;
    const std::vector<Root>& fiber(const RelativeRoot& a) const;
    int multiple_bound(const RelativeRoot& a) const;  // m_alpha
    const RelativeRoot& max_root() const { return max_; }
    int max_coeff() const { return max_coeff_; }

    /// [S1,S2] = {i a + j b | a in S1, b in S2, i,j>0} n Phi_rel.
    std::set<RelativeRoot> bracket(const std::set<RelativeRoot>& s1,
                                   const std::set<RelativeRoot>& s2) const;
    /// True iff i a + j b = 0 has a solution with i,j > 0 (a anti-proportional b).
    static bool anti_proportional(const RelativeRoot& a, const RelativeRoot& b);

    /// Lemma 3.1(i): unique Pi-maximal and Pi-minimal root of a fiber (Gamma = id).
    std::pair<Root, Root> fiber_extremes(const RelativeRoot& alpha) const;

    /// Lemma 3.2(i): (alpha + Z beta) n Phi_rel = {alpha + i beta | -m <= i <= n}.
    std::pair<int, int> root_interval(const RelativeRoot& alpha, const RelativeRoot& beta) const;

    /// Special chain search (breadth-first, shortest then lexicographically
    /// smallest); positive chains first, then the mirrored negative form.
    std::optional<std::vector<RelativeRoot>> find_special_chain(const RelativeRoot& delta,
                                                                const RelativeRoot& gamma) const;
    /// Independent re-check of all four special-chain conditions.
    bool is_special_chain(const RelativeRoot& delta, const std::vector<RelativeRoot>& chain,
                          std::string* why = nullptr) const;

    /// Lemma 3.5 construction: sigma, case tag, chain and fiber witnesses.
    MaxChainResult construct_chain_max() const;

    /// Lemma 3.4 chain from alpha0 to the maximal relative root.
    std::vector<RelativeRoot> chain_to_max(const RelativeRoot& alpha0) const;

    /// Lemma 3.6: rebase a descending sequence from tilde_a onto a0.
    std::vector<Root> rebase_chain(const Root& tilde_a, const std::vector<Root>& seq,
                                   const Root& a0) const;

    /// Per-lemma verification of section 3; failures are data, not exceptions.
    std::vector<LemmaResult> verify_section3() const;

    bool gamma_trivial() const { return spec_.Gamma.size() <= 1; }

private:
    /// gamma = k*a + l*b for integers k,l > 0?
    bool decompose_pos(const RelativeRoot& gamma, const RelativeRoot& a,
                       const RelativeRoot& b) const;
    std::set<RelativeRoot> bracket_one(const std::set<RelativeRoot>& s,
                                       const RelativeRoot& b) const;
    bool pi_minimal_in(const RelativeRoot& q, const RelativeRoot& p,
                       const RelativeRoot& b) const;
    std::optional<std::vector<RelativeRoot>> positive_special_search(
        const RelativeRoot& delta, const RelativeRoot& gamma) const;

    RootSystem base_;
    ProjectionSpec spec_;
    std::vector<RelativeRoot> elements_, positive_, simple_;
    std::map<IntVec, int> index_;
    std::vector<std::vector<Root>> fibers_;
    RelativeRoot max_;
    int max_coeff_ = 0;
};

/// One verification case of the section-3 campaign.
struct RelCase {
    char series;
    int rank;
    std::vector<int> J;
    std::vector<IntVec> Gamma;

    std::string label() const;
};

/// All (system, Gamma, Gamma-invariant J) cases with relative rank >= min_rel_rank.
std::vector<RelCase> enumerate_cases(int max_rank, int min_rel_rank);

}  // namespace iso
