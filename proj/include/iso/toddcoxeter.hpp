#pragma once

#include <cstdint>
#include <vector>

#include "iso/presentation.hpp"

namespace iso {

/// Completed (or overflowed) coset table for a presentation, enumerated over
/// a (possibly trivial) subgroup. Letters encode generators and inverses:
/// letter(2g) = generator g, letter(2g+1) = its inverse.
struct CosetTable {
    bool complete = false;
    std::size_t cosets = 0;
    int nletters = 0;
    std::vector<std::int32_t> act;        // flat [coset * nletters + letter]
    std::vector<std::vector<int>> repword;  // letters from coset 0, per coset

    int apply(int coset, int letter) const { return act[coset * nletters + letter]; }
    /// Apply a signed-generator word (as in Presentation::relators).
    int apply_word(int coset, const std::vector<int>& word) const;
    /// Orbit of coset 0 under a set of generator ids (both directions).
    std::vector<int> orbit_of_identity(const std::vector<int>& gen_ids) const;
};

/// HLT coset enumeration with coincidence handling. `subgroup` is a list of
/// signed-generator words generating the subgroup whose cosets are counted.
/// Throws no exceptions on overflow; check `complete`.
CosetTable todd_coxeter(const Presentation& p,
                        const std::vector<std::vector<int>>& subgroup = {},
                        std::size_t max_cosets = 2'000'000);

}  // namespace iso
