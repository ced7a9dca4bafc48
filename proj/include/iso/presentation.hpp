#pragma once

#include <map>
#include <string>
#include <vector>

#include "iso/finitering.hpp"
#include "iso/relcalc.hpp"

namespace iso {

/// Finite presentation of St_P(R): one generator per (alpha, nonzero v) with
/// v a component tuple of V_alpha (x) R, and one relator per instance of the
/// sum relation and of the generalized commutator relation. Relator words use
/// signed letters +-(gen_id + 1).
struct Presentation {
    struct Gen {
        RelativeRoot alpha;
        std::vector<int> v;
    };

    std::vector<Gen> gens;
    std::vector<std::vector<int>> relators;
    std::vector<std::string> tags;  // "sum" | "commutator", parallel to relators

    /// Generator id of (alpha, v); -1 for v = 0 (the identity, no generator).
    int gen_id(const RelativeRoot& alpha, const std::vector<int>& v) const;

    /// Text exchange format: `gen <id> alpha=<vec> v=<ring-elt>` and
    /// `rel <signed ids>` lines.
    std::string to_text(const FiniteRing& R) const;

    std::map<std::pair<IntVec, std::vector<int>>, int> index;
};

/// Evaluate an integer polynomial in R; `val(var)` supplies ring elements.
int ring_eval(const Poly& p, const FiniteRing& R, const std::function<int(int)>& val);

/// Build the Steinberg presentation of one split case over R. Throws
/// std::invalid_argument when a structure constant magnitude (2 for doubly
/// laced and type C, additionally 3 for G2) is not invertible in R.
Presentation make_presentation(const RelContext& ctx, const FiniteRing& R);

}  // namespace iso
