#pragma once

#include <memory>
#include <string>
#include <vector>

#include "iso/matgroup.hpp"
#include "iso/relcalc.hpp"

namespace iso {

/// The elementary group E_P(R) of one split case over a finite ring, fully
/// enumerated in a faithful classical representation.
class ElementaryGroup {
public:
    ElementaryGroup(char series, int rank, std::vector<int> J, FiniteRing R,
                    std::size_t budget = 20'000'000);

    const RelContext& ctx() const { return ctx_; }
    const FiniteRing& ring() const { return ring_; }
    const MatrixGroup& group() const { return *grp_; }
    int dim() const { return ctx_.rep().dim; }

    /// x_a(t) over the ring, from the integer divided powers of the rep.
    RingMat ring_root_element(const Root& a, int t) const;
    /// X_alpha(v) = canonical-order fiber product.
    RingMat rel_element(const RelativeRoot& alpha, const std::vector<int>& v) const;
    int rel_element_index(const RelativeRoot& alpha, const std::vector<int>& v) const;

    /// All component tuples of V_alpha (x) R with entries in the given subset.
    std::vector<std::vector<int>> tuples(const RelativeRoot& alpha,
                                         const std::vector<int>& entries) const;

private:
    RelContext ctx_;
    FiniteRing ring_;
    std::unique_ptr<MatrixGroup> grp_;
};

/// G(R,I): elements congruent to the identity modulo I.
std::vector<int> congruence_subgroup(const ElementaryGroup& eg, const Ideal& I);
/// E_P(I): subgroup generated by X_alpha(I V_alpha).
std::vector<int> elementary_level(const ElementaryGroup& eg, const Ideal& I);
/// E_P(R,I): normal closure of E_P(I).
std::vector<int> elementary_normal_level(const ElementaryGroup& eg, const Ideal& I);

struct IdealWitness {
    bool found = false;
    Ideal ideal;
    std::string note;
    /// Per relative root (element order): the tuples v with X_alpha(v) in N.
    std::vector<std::vector<std::vector<int>>> M;
};

/// Theorem 1.3: the unique ideal I with N cap X_alpha(V_alpha) = X_alpha(I V_alpha)
/// for every alpha, found by scanning the ideal lattice; requires N normal.
IdealWitness extract_ideal(const ElementaryGroup& eg, const std::vector<int>& N);

/// Corollary 1.5 over finite rings degenerates to extract_ideal; same payload.
IdealWitness finite_index_ideal(const ElementaryGroup& eg, const std::vector<int>& N);

/// Lemma 4.5: the Z_alpha(a, u) with u over I generate E_P(R,I).
bool verify_E_gen(const ElementaryGroup& eg, const Ideal& I);

struct GaussReport {
    bool gauss_all = false;        // every element lies in U U^- T U
    long long checked = 0;
    int diameter = -1;             // Cayley diameter w.r.t. U cup U^-
    std::vector<long long> layer_histogram;
};

GaussReport gauss_and_diameter(const ElementaryGroup& eg);

}  // namespace iso
