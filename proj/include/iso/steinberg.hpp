#pragma once

#include <string>
#include <vector>

#include "iso/grouplab.hpp"
#include "iso/presentation.hpp"
#include "iso/toddcoxeter.hpp"

namespace iso {

/// One Steinberg case: presentation, coset enumeration over the trivial
/// subgroup, and the elementary matrix group, all over the same ring.
struct StCase {
    ElementaryGroup eg;
    Presentation pres;
    CosetTable table;

    StCase(char series, int rank, std::vector<int> J, FiniteRing R,
           std::size_t coset_budget = 2'000'000, std::size_t group_budget = 20'000'000);

    /// Image of a presentation word in the matrix group (element index).
    int evaluate(const std::vector<int>& word) const;
};

struct K2Report {
    bool relators_ok = false;   // s_P well-defined: every relator maps to 1
    std::size_t st_order = 0;
    std::size_t e_order = 0;
    std::size_t kernel_order = 0;
    bool central = false;       // kernel representatives commute with all generators
    bool pass = false;
};

/// Theorem 1.4 desk check; requires a complete coset table.
K2Report verify_K2_centrality(const StCase& c);

struct MonoReport {
    bool pass = false;
    std::size_t lifted_order = 0;   // |~U_S| from the coset action
    std::size_t matrix_order = 0;   // |U_S(R)| from the matrix group
};

/// Lemma 4.4: the lift of U_S is isomorphic onto its image. S must avoid
/// anti-proportional pairs and be closed under sums inside Phi_P.
MonoReport verify_mono(const StCase& c, const std::vector<RelativeRoot>& S);

struct StKerReport {
    bool pass = false;
    std::size_t index = 0;        // [St(R) : ~E(R,I)], the normal closure of the level generators
    std::size_t quotient_order = 0;  // |St(R/I)|
    std::size_t st_order = 0;
    std::size_t kernel_order = 0;    // st_order / index
};

/// Lemma 4.6: 1 -> ~E(R,I) -> St_P(R) -> St_P(R/I) -> 1, verified by
/// comparing [St_P(R) : ~E(R,I)] (quotient by the normal closure of the
/// level-I generators) with |St_P(R/I)|.
StKerReport verify_st_ker(char series, int rank, const std::vector<int>& J, const FiniteRing& R,
                          const Ideal& I, std::size_t coset_budget = 2'000'000);

}  // namespace iso
