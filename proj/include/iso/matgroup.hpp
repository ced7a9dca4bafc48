#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iso/finitering.hpp"
#include "iso/relroots.hpp"

namespace iso {

/// Square matrix over a FiniteRing: d*d element indices, row-major.
using RingMat = std::vector<int>;

RingMat rm_identity(int d);
RingMat rm_mul(const FiniteRing& R, const RingMat& a, const RingMat& b, int d);
bool rm_is_identity(const FiniteRing& R, const RingMat& a, int d);
/// Inverse by Gaussian elimination with unit pivots (valid over local rings,
/// which covers the whole case roster); throws when no unit pivot exists.
RingMat rm_inverse(const FiniteRing& R, const RingMat& a, int d);

/// Label of a generator: relative root plus component tuple in V_alpha x R.
struct GenLabel {
    RelativeRoot alpha;
    std::vector<int> v;
};

/// A finite matrix group enumerated by breadth-first closure over its
/// generators, with a one-step parent witness per element (word recovery by
/// backtracking). Elements are packed into 64-bit keys, which bounds
/// dim^2 * ceil(log2 |R|) by 64 — ample for the desk-scale roster.
class MatrixGroup {
public:
    MatrixGroup(const FiniteRing& R, int dim, std::vector<RingMat> gens,
                std::vector<GenLabel> labels, std::size_t budget = 20'000'000);

    const FiniteRing& ring() const { return ring_; }
    int dim() const { return dim_; }
    std::size_t size() const { return elems_.size(); }

    const std::vector<RingMat>& generators() const { return gens_; }
    const std::vector<GenLabel>& labels() const { return labels_; }

    std::uint64_t encode(const RingMat& m) const;
    RingMat decode(std::uint64_t key) const;

    int index_of(const RingMat& m) const;  // -1 when absent
    RingMat element(int idx) const { return decode(elems_[idx]); }
    bool is_identity(int idx) const { return idx == 0; }

    /// Generator-index word with element(i) = gens[w0] * gens[w1] * ...
    std::vector<int> word(int idx) const;

    int mul(int a, int b) const;       // indices
    int inverse_of(int a) const;       // by order of the cyclic subgroup
    int conjugate(int g, int x) const; // g x g^-1

    /// Indices of the subgroup generated by the given elements. When the
    /// discovered size exceeds |G|/2 the subgroup must be everything and the
    /// closure finishes immediately.
    std::vector<int> subgroup_closure(const std::vector<int>& generators) const;

    /// Smallest normal subgroup containing the seeds.
    std::vector<int> normal_closure(const std::vector<int>& seeds) const;

    bool is_normal(const std::vector<int>& subgroup) const;

private:
    struct Table {  // open-addressing key -> index
        std::vector<std::uint64_t> keys;
        std::vector<std::int32_t> vals;
        std::size_t count = 0, mask = 0;
        void init(std::size_t cap_pow2);
        void grow();
        std::int32_t* insert(std::uint64_t key);  // nullptr when present
        std::int32_t find(std::uint64_t key) const;
    };

    FiniteRing ring_;
    int dim_, bits_;
    std::vector<RingMat> gens_;
    std::vector<GenLabel> labels_;
    std::vector<std::uint64_t> elems_;
    std::vector<std::int32_t> parent_;
    std::vector<std::int16_t> pgen_;
    std::vector<std::int32_t> geninv_;  // index of each generator's inverse
    Table table_;
};

}  // namespace iso
