#include "iso/toddcoxeter.hpp"

#include <deque>
#include <stdexcept>

namespace iso {

int CosetTable::apply_word(int coset, const std::vector<int>& word) const {
    for (int s : word) {
        int letter = s > 0 ? 2 * (s - 1) : 2 * (-s - 1) + 1;
        coset = apply(coset, letter);
    }
    return coset;
}

std::vector<int> CosetTable::orbit_of_identity(const std::vector<int>& gen_ids) const {
    std::vector<char> seen(cosets, 0);
    std::vector<int> queue = {0};
    seen[0] = 1;
    for (std::size_t at = 0; at < queue.size(); ++at)
        for (int g : gen_ids)
            for (int letter : {2 * g, 2 * g + 1}) {
                int nx = apply(queue[at], letter);
                if (!seen[nx]) {
                    seen[nx] = 1;
                    queue.push_back(nx);
                }
            }
    return queue;
}

namespace {

struct OverflowSignal {};

/// HLT enumerator with immediate coincidence processing; the action table is
/// kept involutively consistent (every edge stored in both directions), so
/// stored targets are always live between coincidence rounds.
struct Enumerator {
    int L;
    std::size_t budget;
    std::vector<std::int32_t> tab;   // nraw * L
    std::vector<std::int32_t> uf;    // union-find parent
    std::vector<std::int32_t> defparent;
    std::vector<std::int16_t> defletter;
    std::deque<int> queue;           // dead cosets pending edge transfer
    std::size_t nraw = 0;

    explicit Enumerator(int letters, std::size_t max_cosets) : L(letters), budget(max_cosets) {
        new_coset(-1, -1);
    }

    static int inv(int l) { return l ^ 1; }

    int rep(int c) {
        while (uf[c] != c) {
            uf[c] = uf[uf[c]];
            c = uf[c];
        }
        return c;
    }

    int new_coset(int parent, int letter) {
        if (nraw >= budget) throw OverflowSignal{};
        tab.resize(tab.size() + L, -1);
        uf.push_back(static_cast<std::int32_t>(nraw));
        defparent.push_back(parent);
        defletter.push_back(static_cast<std::int16_t>(letter));
        return static_cast<int>(nraw++);
    }

    std::int32_t& at(int c, int l) { return tab[static_cast<std::size_t>(c) * L + l]; }

    void merge(int a, int b) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        uf[b] = a;
        queue.push_back(b);
    }

    void process_coincidences() {
        while (!queue.empty()) {
            int y = queue.front();
            queue.pop_front();
            for (int l = 0; l < L; ++l) {
                int d = at(y, l);
                if (d < 0) continue;
                at(y, l) = -1;
                if (at(d, inv(l)) == y) at(d, inv(l)) = -1;
                int mu = rep(y), nu = rep(d);
                if (at(mu, l) >= 0) {
                    merge(nu, at(mu, l));
                } else if (at(nu, inv(l)) >= 0) {
                    merge(mu, at(nu, inv(l)));
                } else {
                    at(mu, l) = nu;
                    at(nu, inv(l)) = mu;
                }
            }
        }
    }

    void coincidence(int a, int b) {
        merge(a, b);
        process_coincidences();
    }

    /// Scan the relator (letter word) at coset c, defining cosets to fill
    /// every gap; ends in a deduction or a coincidence.
    void scan_and_fill(int c, const std::vector<int>& w) {
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && at(b, inv(w[j])) >= 0) b = at(b, inv(w[j--]));
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (j == i) {  // deduction closes the scan
                at(f, w[i]) = b;
                at(b, inv(w[i])) = f;
                return;
            }
            int d = new_coset(f, w[i]);
            at(f, w[i]) = d;
            at(d, inv(w[i])) = f;
            f = d;
            ++i;
        }
    }
};

std::vector<int> to_letters(const std::vector<int>& signed_word) {
    std::vector<int> out;
    out.reserve(signed_word.size());
    for (int s : signed_word) out.push_back(s > 0 ? 2 * (s - 1) : 2 * (-s - 1) + 1);
    return out;
}

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<std::vector<int>>& subgroup,
                        std::size_t max_cosets) {
    int L = 2 * static_cast<int>(p.gens.size());
    Enumerator e(L, max_cosets);

    std::vector<std::vector<int>> rels;
    rels.reserve(p.relators.size());
    for (const auto& r : p.relators) rels.push_back(to_letters(r));

    CosetTable out;
    out.nletters = L;
    try {
        for (const auto& w : subgroup) e.scan_and_fill(0, to_letters(w));
        for (std::size_t c = 0; c < e.nraw; ++c) {
            if (e.rep(static_cast<int>(c)) != static_cast<int>(c)) continue;
            bool died = false;
            for (const auto& r : rels) {
                e.scan_and_fill(static_cast<int>(c), r);
                if (e.rep(static_cast<int>(c)) != static_cast<int>(c)) {
                    died = true;
                    break;
                }
            }
            if (died) continue;
            for (int l = 0; l < L; ++l)
                if (e.at(static_cast<int>(c), l) < 0) {
                    int d = e.new_coset(static_cast<int>(c), l);
                    e.at(static_cast<int>(c), l) = d;
                    e.at(d, Enumerator::inv(l)) = static_cast<int>(c);
                }
        }
        out.complete = true;
    } catch (const OverflowSignal&) {
        out.complete = false;
    }

    // compact the live cosets
    std::vector<int> remap(e.nraw, -1);
    for (std::size_t c = 0; c < e.nraw; ++c)
        if (e.rep(static_cast<int>(c)) == static_cast<int>(c))
            remap[c] = static_cast<int>(out.cosets++);
    out.act.assign(out.cosets * L, -1);
    out.repword.resize(out.cosets);
    for (std::size_t c = 0; c < e.nraw; ++c) {
        if (remap[c] < 0) continue;
        for (int l = 0; l < L; ++l) {
            int d = e.at(static_cast<int>(c), l);
            out.act[static_cast<std::size_t>(remap[c]) * L + l] = d < 0 ? -1 : remap[e.rep(d)];
        }
        std::vector<int> w;
        for (int cur = static_cast<int>(c); cur != 0; cur = e.defparent[cur])
            w.push_back(e.defletter[cur]);
        out.repword[remap[c]].assign(w.rbegin(), w.rend());
    }
    return out;
}

}  // namespace iso
