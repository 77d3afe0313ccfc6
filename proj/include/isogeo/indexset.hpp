#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace isogeo {

// Index sets are 1-based, strictly increasing integer sequences.
using IndexSet = std::vector<int>;

inline IndexSet range_set(int lo, int hi) {  // {lo, ..., hi}
    IndexSet s;
    for (int i = lo; i <= hi; ++i) s.push_back(i);
    return s;
}

inline IndexSet base_set(int n) { return range_set(1, n); }

inline bool set_contains(const IndexSet& s, int x) {
    return std::binary_search(s.begin(), s.end(), x);
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet set_intersect(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet set_shift(const IndexSet& s, int delta) {
    IndexSet r = s;
    for (int& x : r) x += delta;
    return r;
}

inline uint32_t set_mask(const IndexSet& s) {
    uint32_t m = 0;
    for (int x : s) m |= 1u << (x - 1);
    return m;
}

inline IndexSet set_from_mask(uint32_t m) {
    IndexSet s;
    for (int i = 0; m != 0; ++i, m >>= 1)
        if (m & 1u) s.push_back(i + 1);
    return s;
}

inline std::string set_str(const IndexSet& s) {
    std::string r = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) r += ",";
        r += std::to_string(s[i]);
    }
    return r + "}";
}

// Hamming distance on equal-size index sets: d(I, J) = |I| - |I ∩ J|.
inline int hamming(const IndexSet& i, const IndexSet& j) {
    return static_cast<int>(i.size() - set_intersect(i, j).size());
}

// Mirror involution on n-subsets of {1, ..., 2n}:
// J' = ((I0 \ J) + n) ∪ ((I0^c \ J) - n) with I0 = {1, ..., n}.
inline IndexSet mirror(const IndexSet& j, int n) {
    IndexSet r;
    for (int x = 1; x <= n; ++x)
        if (!set_contains(j, x + n)) r.push_back(x);
    for (int x = 1; x <= n; ++x)
        if (!set_contains(j, x)) r.push_back(x + n);
    return r;
}

inline int permutation_parity(const std::vector<int>& seq) {
    int inv = 0;
    for (size_t a = 0; a < seq.size(); ++a)
        for (size_t b = a + 1; b < seq.size(); ++b)
            if (seq[a] > seq[b]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

// Sign of the block-form row permutation for the minor indexed by J:
// rows I0 ∩ J first (in order), then rows I0 \ J (in order).
inline int perm_sign(const IndexSet& j, int n) {
    IndexSet i0 = base_set(n);
    IndexSet top = set_intersect(i0, j);
    IndexSet bottom = set_minus(i0, j);
    std::vector<int> seq = top;
    seq.insert(seq.end(), bottom.begin(), bottom.end());
    return permutation_parity(seq);
}

// Rows and columns of the chart minor for J: rows I0 \ J of the chart
// matrix against columns (J \ I0) - n.
inline void minor_rows_cols(const IndexSet& j, int n, IndexSet& rows, IndexSet& cols) {
    IndexSet i0 = base_set(n);
    rows = set_minus(i0, j);
    IndexSet above;
    for (int x : j)
        if (x > n) above.push_back(x - n);
    cols = above;
}

// One mirror orbit {J, J'} with the lex-smaller member as representative.
struct SigmaPair {
    IndexSet j;        // canonical representative
    IndexSet jp;       // mirror partner (equals j when self-mirror)
    int distance = 0;  // d(I0, j)
    int eps_j = 1;     // block-form permutation signs
    int eps_jp = 1;
    bool self_mirror = false;
};

// All mirror orbits of n-subsets of {1, ..., 2n}, ordered by
// (distance, lex representative).  The representative of the first pair is
// I0 itself (distance 0).
inline std::vector<SigmaPair> sigma_pairs(int n) {
    std::vector<SigmaPair> pairs;
    IndexSet i0 = base_set(n);
    // enumerate n-subsets of {1..2n} in lex order
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i + 1;
    for (;;) {
        IndexSet j(idx.begin(), idx.end());
        IndexSet jp = mirror(j, n);
        if (!(jp < j)) {  // keep lex-smaller representative only
            SigmaPair p;
            p.j = j;
            p.jp = jp;
            p.distance = hamming(i0, j);
            p.eps_j = perm_sign(j, n);
            p.eps_jp = perm_sign(jp, n);
            p.self_mirror = (j == jp);
            pairs.push_back(std::move(p));
        }
        // next combination
        int k = n - 1;
        while (k >= 0 && idx[k] == 2 * n - (n - 1 - k)) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const SigmaPair& a, const SigmaPair& b) {
                         if (a.distance != b.distance) return a.distance < b.distance;
                         return a.j < b.j;
                     });
    return pairs;
}

// Designated disjoint parity pairs inside {1, ..., n}: {2λ-1, 2λ} when n is
// even, {2λ, 2λ+1} when n is odd.
inline std::vector<std::pair<int, int>> lambda_pairs(int n) {
    std::vector<std::pair<int, int>> ps;
    if (n % 2 == 0) {
        for (int l = 1; 2 * l <= n; ++l) ps.push_back({2 * l - 1, 2 * l});
    } else {
        for (int l = 1; 2 * l + 1 <= n; ++l) ps.push_back({2 * l, 2 * l + 1});
    }
    return ps;
}

// Even-cardinality subsets of {1, ..., n}, ordered by (size, lex).
// The empty set comes first.
inline std::vector<IndexSet> gamma_sets(int n) {
    std::vector<IndexSet> out;
    for (uint32_t m = 0; m < (1u << n); ++m) {
        if (__builtin_popcount(m) % 2 != 0) continue;
        out.push_back(set_from_mask(m));
    }
    std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// Number of designated parity pairs contained in I.
inline int alpha_count(const IndexSet& i, int n) {
    int a = 0;
    for (auto [x, y] : lambda_pairs(n))
        if (set_contains(i, x) && set_contains(i, y)) ++a;
    return a;
}

// Γ⁻_I: subsets J ⊆ I such that I \ J is a disjoint union of designated
// parity pairs.  |Γ⁻_I| = 2^{alpha(I)}.
inline std::vector<IndexSet> gamma_minus(const IndexSet& i, int n) {
    std::vector<std::pair<int, int>> inside;
    for (auto [x, y] : lambda_pairs(n))
        if (set_contains(i, x) && set_contains(i, y)) inside.push_back({x, y});
    std::vector<IndexSet> out;
    for (uint32_t m = 0; m < (1u << inside.size()); ++m) {
        IndexSet removed;
        for (size_t k = 0; k < inside.size(); ++k)
            if (m & (1u << k)) {
                removed.push_back(inside[k].first);
                removed.push_back(inside[k].second);
            }
        std::sort(removed.begin(), removed.end());
        out.push_back(set_minus(i, removed));
    }
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// Γ⁺_J within {1, ..., n}: supersets I ⊇ J with I \ J a disjoint union of
// designated parity pairs.
inline std::vector<IndexSet> gamma_plus(const IndexSet& j, int n) {
    std::vector<std::pair<int, int>> avail;
    for (auto [x, y] : lambda_pairs(n))
        if (!set_contains(j, x) && !set_contains(j, y)) avail.push_back({x, y});
    std::vector<IndexSet> out;
    for (uint32_t m = 0; m < (1u << avail.size()); ++m) {
        IndexSet added;
        for (size_t k = 0; k < avail.size(); ++k)
            if (m & (1u << k)) {
                added.push_back(avail[k].first);
                added.push_back(avail[k].second);
            }
        std::sort(added.begin(), added.end());
        out.push_back(set_union(j, added));
    }
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

inline int64_t binom64(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace isogeo
