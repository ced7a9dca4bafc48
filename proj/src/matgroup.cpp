#include "iso/matgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace iso {

RingMat rm_identity(int d) {
    RingMat m(d * d, 0);
    for (int i = 0; i < d; ++i) m[i * d + i] = 1;
    return m;
}

RingMat rm_mul(const FiniteRing& R, const RingMat& a, const RingMat& b, int d) {
    RingMat out(d * d, 0);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            int aik = a[i * d + k];
            if (aik == 0) continue;
            for (int j = 0; j < d; ++j) {
                int p = R.mul(aik, b[k * d + j]);
                if (p) out[i * d + j] = R.add(out[i * d + j], p);
            }
        }
    return out;
}

bool rm_is_identity(const FiniteRing&, const RingMat& a, int d) {
    return a == rm_identity(d);
}

RingMat rm_inverse(const FiniteRing& R, const RingMat& a, int d) {
    RingMat m = a, inv = rm_identity(d);
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (R.is_unit(m[r * d + col])) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("matrix has no unit pivot; not invertible");
        if (piv != col)
            for (int j = 0; j < d; ++j) {
                std::swap(m[piv * d + j], m[col * d + j]);
                std::swap(inv[piv * d + j], inv[col * d + j]);
            }
        int s = R.inverse(m[col * d + col]);
        for (int j = 0; j < d; ++j) {
            m[col * d + j] = R.mul(s, m[col * d + j]);
            inv[col * d + j] = R.mul(s, inv[col * d + j]);
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            int f = m[r * d + col];
            if (!f) continue;
            for (int j = 0; j < d; ++j) {
                m[r * d + j] = R.sub(m[r * d + j], R.mul(f, m[col * d + j]));
                inv[r * d + j] = R.sub(inv[r * d + j], R.mul(f, inv[col * d + j]));
            }
        }
    }
    return inv;
}

void MatrixGroup::Table::init(std::size_t cap_pow2) {
    keys.assign(cap_pow2, ~0ull);
    vals.assign(cap_pow2, -1);
    mask = cap_pow2 - 1;
    count = 0;
}

void MatrixGroup::Table::grow() {
    std::vector<std::uint64_t> ok = std::move(keys);
    std::vector<std::int32_t> ov = std::move(vals);
    init((mask + 1) * 2);
    for (std::size_t i = 0; i < ok.size(); ++i)
        if (ok[i] != ~0ull) {
            std::size_t h = (ok[i] * 0x9e3779b97f4a7c15ull) >> 13;
            std::size_t at = h & mask;
            while (keys[at] != ~0ull) at = (at + 1) & mask;
            keys[at] = ok[i];
            vals[at] = ov[i];
            ++count;
        }
}

std::int32_t* MatrixGroup::Table::insert(std::uint64_t key) {
    if ((count + 1) * 5 > (mask + 1) * 3) grow();
    std::size_t at = ((key * 0x9e3779b97f4a7c15ull) >> 13) & mask;
    while (keys[at] != ~0ull) {
        if (keys[at] == key) return nullptr;
        at = (at + 1) & mask;
    }
    keys[at] = key;
    ++count;
    return &vals[at];
}

std::int32_t MatrixGroup::Table::find(std::uint64_t key) const {
    std::size_t at = ((key * 0x9e3779b97f4a7c15ull) >> 13) & mask;
    while (keys[at] != ~0ull) {
        if (keys[at] == key) return vals[at];
        at = (at + 1) & mask;
    }
    return -1;
}

MatrixGroup::MatrixGroup(const FiniteRing& R, int dim, std::vector<RingMat> gens,
                         std::vector<GenLabel> labels, std::size_t budget)
    : ring_(R), dim_(dim), gens_(std::move(gens)), labels_(std::move(labels)) {
    bits_ = 1;
    while ((1 << bits_) < ring_.size()) ++bits_;
    if (dim_ * dim_ * bits_ > 63)
        throw std::invalid_argument("matrix does not pack into 63 bits");
    if (labels_.size() != gens_.size()) labels_.resize(gens_.size());

    table_.init(1 << 12);
    elems_.push_back(encode(rm_identity(dim_)));
    parent_.push_back(-1);
    pgen_.push_back(-1);
    *table_.insert(elems_[0]) = 0;

    for (std::size_t at = 0; at < elems_.size(); ++at) {
        RingMat cur = decode(elems_[at]);
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            std::uint64_t key = encode(rm_mul(ring_, cur, gens_[g], dim_));
            if (auto* slot = table_.insert(key)) {
                if (elems_.size() >= budget)
                    throw std::runtime_error("matrix group closure exceeded the element budget");
                *slot = static_cast<std::int32_t>(elems_.size());
                elems_.push_back(key);
                parent_.push_back(static_cast<std::int32_t>(at));
                pgen_.push_back(static_cast<std::int16_t>(g));
            }
        }
    }

    geninv_.resize(gens_.size());
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        int idx = index_of(gens_[g]);
        geninv_[g] = inverse_of(idx);
    }
}

std::uint64_t MatrixGroup::encode(const RingMat& m) const {
    std::uint64_t key = 0;
    for (int i = dim_ * dim_ - 1; i >= 0; --i) key = (key << bits_) | std::uint64_t(m[i]);
    return key;
}

RingMat MatrixGroup::decode(std::uint64_t key) const {
    RingMat m(dim_ * dim_);
    std::uint64_t mask = (1ull << bits_) - 1;
    for (int i = 0; i < dim_ * dim_; ++i) {
        m[i] = static_cast<int>(key & mask);
        key >>= bits_;
    }
    return m;
}

int MatrixGroup::index_of(const RingMat& m) const { return table_.find(encode(m)); }

std::vector<int> MatrixGroup::word(int idx) const {
    std::vector<int> w;
    while (idx > 0) {
        w.push_back(pgen_[idx]);
        idx = parent_[idx];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

int MatrixGroup::mul(int a, int b) const {
    return table_.find(encode(rm_mul(ring_, decode(elems_[a]), decode(elems_[b]), dim_)));
}

int MatrixGroup::inverse_of(int a) const {
    if (a == 0) return 0;
    // walk a, a^2, ... until a^k = identity; a^{k-1} is the inverse
    int prev = a, cur = mul(a, a);
    while (cur != 0) {
        prev = cur;
        cur = mul(cur, a);
    }
    return prev;
}

int MatrixGroup::conjugate(int g, int x) const { return mul(mul(g, x), inverse_of(g)); }

std::vector<int> MatrixGroup::subgroup_closure(const std::vector<int>& generators) const {
    std::vector<char> in(elems_.size(), 0);
    std::vector<int> queue = {0}, found = {0};
    in[0] = 1;
    auto push = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            queue.push_back(x);
            found.push_back(x);
        }
    };
    for (int g : generators) push(g);
    for (std::size_t at = 0; at < queue.size(); ++at) {
        if (2 * found.size() > elems_.size()) {
            // a proper subgroup has index >= 2; we are past half, so this is
            // the whole group
            std::vector<int> all(elems_.size());
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        for (int g : generators) push(mul(queue[at], g));
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<int> MatrixGroup::normal_closure(const std::vector<int>& seeds) const {
    std::vector<int> gens;
    for (int s : seeds)
        if (s != 0) gens.push_back(s);
    std::vector<int> sub = subgroup_closure(gens);
    while (true) {
        std::vector<char> in(elems_.size(), 0);
        for (int x : sub) in[x] = 1;
        bool added = false;
        std::size_t n = gens.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t g = 0; g < gens_.size(); ++g) {
                int ggen = index_of(gens_[g]);
                int c = mul(mul(ggen, gens[i]), geninv_[g]);
                if (!in[c]) {
                    gens.push_back(c);
                    in[c] = 1;
                    added = true;
                }
            }
        if (!added) return sub;
        sub = subgroup_closure(gens);
    }
}

bool MatrixGroup::is_normal(const std::vector<int>& subgroup) const {
    if (subgroup.size() == elems_.size()) return true;
    std::vector<char> in(elems_.size(), 0);
    for (int x : subgroup) in[x] = 1;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        int ggen = index_of(gens_[g]);
        for (int x : subgroup)
            if (!in[mul(mul(ggen, x), geninv_[g])]) return false;
    }
    return true;
}

}  // namespace iso
