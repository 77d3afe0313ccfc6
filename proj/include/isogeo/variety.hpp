#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "indexset.hpp"

namespace isogeo {

// The four chart families the toolkit knows about.  GR is the ambient
// Grassmannian of middle-dimensional subspaces; LG its symmetric-chart
// section; SPIN_PL / SPIN_MIN the two embeddings of the skew-chart section.
enum class Variety { GR, LG, SPIN_PL, SPIN_MIN };

// Shape constraint on the n×n chart block.
enum class ChartShape { GENERAL, SYMMETRIC, SKEW };

inline const char* variety_name(Variety v) {
    switch (v) {
        case Variety::GR: return "gr";
        case Variety::LG: return "lg";
        case Variety::SPIN_PL: return "spinor-pl";
        case Variety::SPIN_MIN: return "spinor-min";
    }
    return "?";
}

inline Variety parse_variety(const std::string& s) {
    if (s == "gr") return Variety::GR;
    if (s == "lg") return Variety::LG;
    if (s == "spinor-pl") return Variety::SPIN_PL;
    if (s == "spinor-min") return Variety::SPIN_MIN;
    throw std::invalid_argument("unknown variety: " + s);
}

inline ChartShape chart_shape(Variety v) {
    switch (v) {
        case Variety::GR: return ChartShape::GENERAL;
        case Variety::LG: return ChartShape::SYMMETRIC;
        default: return ChartShape::SKEW;
    }
}

// Number of independent entries of an n×n chart block.
inline int chart_var_count(ChartShape shape, int n) {
    switch (shape) {
        case ChartShape::GENERAL: return n * n;
        case ChartShape::SYMMETRIC: return n * (n + 1) / 2;
        case ChartShape::SKEW: return n * (n - 1) / 2;
    }
    return 0;
}

inline int chart_var_count(Variety v, int n) {
    return chart_var_count(chart_shape(v), n);
}

// Dimension of the variety; equals the chart variable count.
inline int64_t variety_dim(Variety v, int n) {
    return chart_var_count(v, n);
}

// Projective dimension of the ambient space of the embedding.
inline int64_t ambient_dim(Variety v, int n) {
    switch (v) {
        case Variety::GR: return binom64(2 * n, n) - 1;
        case Variety::LG: return (binom64(2 * n, n) + (int64_t(1) << n)) / 2 - 1;
        case Variety::SPIN_PL: return binom64(2 * n, n) / 2 - 1;
        case Variety::SPIN_MIN: return (int64_t(1) << (n - 1)) - 1;
    }
    return -1;
}

// Projective dimension of the linear span of the embedded variety.  The
// symmetric chart is degenerate from n = 4 on: complementary minors of a
// symmetric matrix satisfy three-term linear relations (the first one is
// det A[{1,2},{3,4}] - det A[{1,3},{2,4}] + det A[{1,4},{2,3}] = 0), which
// cut the coordinate space down to a span of dimension
// C(2n,n) - C(2n,n-2) - 1.  The other charts span their coordinate spaces.
inline int64_t span_dim(Variety v, int n) {
    if (v == Variety::LG)
        return binom64(2 * n, n) - binom64(2 * n, n - 2) - 1;
    return ambient_dim(v, n);
}

// Smallest s with T^s equal to the full linear span (sharp values).
inline int full_osc_threshold(Variety v, int n) {
    switch (v) {
        case Variety::GR: return n;
        case Variety::LG: return n;
        case Variety::SPIN_PL: return 2 * (n / 2);
        case Variety::SPIN_MIN: return n / 2;
    }
    return 0;
}

// Same threshold as stated without the parity refinement; differs from the
// sharp value only for SPIN_MIN.  Reports carry both.
inline int full_osc_threshold_coarse(Variety v, int n) {
    return v == Variety::SPIN_MIN ? n : full_osc_threshold(v, n);
}

// Largest s for which the projection away from T^s stays generically
// injective on the variety.
inline int birational_threshold(Variety v, int n) {
    return full_osc_threshold(v, n) - 2;
}

inline int birational_threshold_coarse(Variety v, int n) {
    return full_osc_threshold_coarse(v, n) - 2;
}

// Largest h with certified non-defective h-th secants for this n.
inline int h_bound(Variety v, int n) {
    switch (v) {
        case Variety::LG: return (n + 1) / 2;
        case Variety::SPIN_PL: return n / 2;
        case Variety::SPIN_MIN: return (n + 2) / 4;
        default: throw std::domain_error("h_bound: no stated bound for gr");
    }
    return 0;
}

// All n-subsets of {1, ..., 2n}, ordered by (distance from I0, lex).
// The first set is I0 itself.
inline std::vector<IndexSet> gr_index_sets(int n) {
    std::vector<IndexSet> sets;
    IndexSet i0 = base_set(n);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i + 1;
    for (;;) {
        sets.emplace_back(idx.begin(), idx.end());
        int k = n - 1;
        while (k >= 0 && idx[k] == 2 * n - (n - 1 - k)) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::stable_sort(sets.begin(), sets.end(), [&](const IndexSet& a, const IndexSet& b) {
        int da = hamming(i0, a), db = hamming(i0, b);
        if (da != db) return da < db;
        return a < b;
    });
    return sets;
}

inline std::vector<SigmaPair> lg_pairs(int n) { return sigma_pairs(n); }

// Mirror orbits surviving on the skew chart: self-mirror orbits at odd
// distance index identically-zero coordinates and are dropped.
inline std::vector<SigmaPair> spinor_pl_pairs(int n) {
    std::vector<SigmaPair> kept;
    for (const SigmaPair& p : sigma_pairs(n))
        if (!(p.self_mirror && p.distance % 2 == 1)) kept.push_back(p);
    return kept;
}

inline std::vector<IndexSet> spinor_min_sets(int n) { return gamma_sets(n); }

// Canonical index set per coordinate, in coordinate order.
inline std::vector<IndexSet> coord_index_sets(Variety v, int n) {
    std::vector<IndexSet> out;
    switch (v) {
        case Variety::GR: return gr_index_sets(n);
        case Variety::SPIN_MIN: return spinor_min_sets(n);
        case Variety::LG:
            for (const SigmaPair& p : lg_pairs(n)) out.push_back(p.j);
            return out;
        case Variety::SPIN_PL:
            for (const SigmaPair& p : spinor_pl_pairs(n)) out.push_back(p.j);
            return out;
    }
    return out;
}

// Jet order at which each coordinate first appears: Hamming distance for
// the Plücker-style embeddings, half the set size for the minimal one.
inline std::vector<int> label_orders(Variety v, int n) {
    std::vector<int> out;
    IndexSet i0 = base_set(n);
    switch (v) {
        case Variety::GR:
            for (const IndexSet& j : gr_index_sets(n)) out.push_back(hamming(i0, j));
            return out;
        case Variety::LG:
            for (const SigmaPair& p : lg_pairs(n)) out.push_back(p.distance);
            return out;
        case Variety::SPIN_PL:
            for (const SigmaPair& p : spinor_pl_pairs(n)) out.push_back(p.distance);
            return out;
        case Variety::SPIN_MIN:
            for (const IndexSet& i : spinor_min_sets(n))
                out.push_back(static_cast<int>(i.size()) / 2);
            return out;
    }
    return out;
}

// Printable coordinate labels.
inline std::vector<std::string> label_names(Variety v, int n) {
    std::vector<std::string> out;
    switch (v) {
        case Variety::GR:
            for (const IndexSet& j : gr_index_sets(n)) out.push_back(set_str(j));
            return out;
        case Variety::SPIN_MIN:
            for (const IndexSet& i : spinor_min_sets(n)) out.push_back(set_str(i));
            return out;
        default:
            for (const SigmaPair& p : v == Variety::LG ? lg_pairs(n) : spinor_pl_pairs(n)) {
                std::string s = set_str(p.j);
                if (!p.self_mirror) s += "|" + set_str(p.jp);
                out.push_back(s);
            }
            return out;
    }
}

inline size_t label_count(Variety v, int n) {
    return static_cast<size_t>(ambient_dim(v, n)) + 1;
}

// Coordinate index keyed by the canonical set's bitmask.
inline std::unordered_map<uint32_t, int> label_index_by_mask(const std::vector<IndexSet>& sets) {
    std::unordered_map<uint32_t, int> m;
    m.reserve(sets.size() * 2);
    for (size_t i = 0; i < sets.size(); ++i) m[set_mask(sets[i])] = static_cast<int>(i);
    return m;
}

}  // namespace isogeo
