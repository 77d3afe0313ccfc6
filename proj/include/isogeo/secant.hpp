#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "convert.hpp"
#include "embed.hpp"
#include "fp.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "subspace.hpp"
#include "variety.hpp"

namespace isogeo {

// ---------------------------------------------------------------------------
// Expected secant dimensions
// ---------------------------------------------------------------------------

// Expected projective dimension of the h-th secant variety of an
// X of dimension dim_x inside P^N: min(h*dim_x + h - 1, N).
inline int64_t expected_secant_dim(int64_t ambient_n, int64_t dim_x, int64_t h) {
    if (h < 1) throw std::invalid_argument("expected_secant_dim: h >= 1");
    return std::min(h * dim_x + h - 1, ambient_n);
}

// ---------------------------------------------------------------------------
// Tangent spaces from the chart Jacobian
// ---------------------------------------------------------------------------

// Affine cone over the embedded tangent space at f(p): the span of the
// coordinate vector and the Jacobian columns.  Cone dimension equals
// dim X + 1 at a generic point; a smaller result flags a non-generic p.
template <typename K>
Subspace<typename K::Elem> tangent_space_at(const PolyMap& f,
                                            const ChartPoint<typename K::Elem>& p,
                                            const K& field) {
    using F = typename K::Elem;
    std::vector<F> val = evaluate(f, p, field);
    Matrix<F> jac = poly_map_jacobian(f, chart_vars_of(p), field);
    Matrix<F> rows(1 + static_cast<size_t>(f.n_vars), val.size());
    for (size_t j = 0; j < val.size(); ++j) rows(0, j) = val[j];
    for (int k = 0; k < f.n_vars; ++k)
        for (size_t j = 0; j < val.size(); ++j) rows(1 + k, j) = jac(j, k);
    return Subspace<F>::span(std::move(rows));
}

// ---------------------------------------------------------------------------
// Terracini probes
// ---------------------------------------------------------------------------

enum class SecantVerdict { CERTIFIED_NONDEFECTIVE, DEFECTIVE_EVIDENCE, INCONCLUSIVE };

inline const char* verdict_str(SecantVerdict v) {
    switch (v) {
        case SecantVerdict::CERTIFIED_NONDEFECTIVE: return "certified-nondefective";
        case SecantVerdict::DEFECTIVE_EVIDENCE: return "defective-evidence";
        case SecantVerdict::INCONCLUSIVE: return "inconclusive";
    }
    return "?";
}

// Trials required before a persistent rank deficit is reported as evidence.
constexpr int kEvidenceTrials = 20;

// Outcome of a randomized secant-dimension probe.  computed_rank_max is
// the rank of the stacked affine tangent cones, so a certified row reads
// computed_rank_max == expected + 1.  Random ranks only certify lower
// bounds for dim Sec_h; a deficit is evidence of defectivity, not proof.
struct TerraciniReport {
    Variety variety = Variety::GR;
    int n = 0;
    int h = 0;
    int64_t ambient_n = 0;          // projective dimension of the coordinate space
    int64_t dim_x = 0;              // chart dimension of the variety
    int64_t expected = 0;           // min(h*dim_x + h - 1, ambient_n)
    int64_t computed_rank_max = 0;  // best stacked-cone rank over the trials
    int trials = 0;
    std::string field;              // descriptor of the coefficient field(s)
    uint64_t seed = 0;
    SecantVerdict verdict = SecantVerdict::INCONCLUSIVE;
};

// Rank of the joined tangent cones at h random chart points, maximized
// over independent trials.  Trial t draws from the derived stream
// derive_seed(seed, t), so reports are reproducible and trials merge by
// index.  The rank can never exceed expected + 1; crossing that cap is a
// hard error rather than a report.
template <typename K>
TerraciniReport terracini_rank(Variety v, int n, int h, const K& field,
                               int trials = kEvidenceTrials, uint64_t seed = kDefaultSeed) {
    if (h < 1) throw std::invalid_argument("terracini_rank: h >= 1");
    if (trials < 1) throw std::invalid_argument("terracini_rank: trials >= 1");
    using F = typename K::Elem;
    TerraciniReport r;
    r.variety = v;
    r.n = n;
    r.h = h;
    r.ambient_n = ambient_dim(v, n);
    r.dim_x = variety_dim(v, n);
    r.expected = expected_secant_dim(r.ambient_n, r.dim_x, h);
    r.trials = trials;
    r.field = field.descriptor();
    r.seed = seed;
    const size_t cols = static_cast<size_t>(r.ambient_n) + 1;
    const size_t block = static_cast<size_t>(r.dim_x) + 1;
    const ChartShape shape = chart_shape(v);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(derive_seed(seed, static_cast<uint64_t>(t)));
        Matrix<F> stack(static_cast<size_t>(h) * block, cols);
        for (int q = 0; q < h; ++q) {
            ChartPoint<F> p = random_chart_point(shape, n, field, rng);
            ChartEval<F> ev = chart_eval(v, n, p.a, field);
            size_t base = static_cast<size_t>(q) * block;
            for (size_t j = 0; j < cols; ++j) stack(base, j) = ev.value[j];
            for (int64_t k = 0; k < r.dim_x; ++k)
                for (size_t j = 0; j < cols; ++j) stack(base + 1 + k, j) = ev.jacobian(j, k);
        }
        int64_t rk = static_cast<int64_t>(rank(std::move(stack)));
        if (rk > r.expected + 1)
            throw std::logic_error("terracini_rank: rank above the cone bound");
        r.computed_rank_max = std::max(r.computed_rank_max, rk);
        // the cap is an upper bound for every trial, so stopping is lossless
        if (r.computed_rank_max == r.expected + 1) break;
    }
    if (r.computed_rank_max == r.expected + 1)
        r.verdict = SecantVerdict::CERTIFIED_NONDEFECTIVE;
    else if (trials >= kEvidenceTrials)
        r.verdict = SecantVerdict::DEFECTIVE_EVIDENCE;
    else
        r.verdict = SecantVerdict::INCONCLUSIVE;
    return r;
}

// Cross-field evidence protocol: a rank deficit only counts once it
// persists over two distinct primes and an exact rational run with at
// least kEvidenceTrials draws in total; agreement across fields rules out
// bad-prime and bad-point artefacts.  A cap hit in any field certifies.
inline TerraciniReport cross_field_terracini(Variety v, int n, int h, int prime_trials = 9,
                                             int rational_trials = 2,
                                             uint64_t seed = kDefaultSeed) {
    GFp p1(2147483647), p2(1000003);
    QQ qq;
    TerraciniReport a = terracini_rank(v, n, h, p1, prime_trials, derive_seed(seed, 1));
    TerraciniReport b = terracini_rank(v, n, h, p2, prime_trials, derive_seed(seed, 2));
    TerraciniReport c = terracini_rank(v, n, h, qq, rational_trials, derive_seed(seed, 3));
    TerraciniReport r = a;
    r.field = p1.descriptor() + "+" + p2.descriptor() + "+" + qq.descriptor();
    r.seed = seed;
    r.trials = a.trials + b.trials + c.trials;
    r.computed_rank_max =
        std::max({a.computed_rank_max, b.computed_rank_max, c.computed_rank_max});
    if (r.computed_rank_max == r.expected + 1)
        r.verdict = SecantVerdict::CERTIFIED_NONDEFECTIVE;
    else if (r.trials >= kEvidenceTrials)
        r.verdict = SecantVerdict::DEFECTIVE_EVIDENCE;
    else
        r.verdict = SecantVerdict::INCONCLUSIVE;
    return r;
}

// One report per (n, h) for n in [n_lo, n_hi] and h up to the
// non-defectivity bound h_bound(v, n); certified rows reproduce the bound.
template <typename K>
std::vector<TerraciniReport> defect_table(Variety v, int n_lo, int n_hi, const K& field,
                                          int trials = 3, uint64_t seed = kDefaultSeed) {
    std::vector<TerraciniReport> rows;
    for (int n = n_lo; n <= n_hi; ++n)
        for (int h = 1; h <= h_bound(v, n); ++h)
            rows.push_back(terracini_rank(
                v, n, h, field, trials,
                derive_seed(seed, (static_cast<uint64_t>(n) << 16) | static_cast<uint64_t>(h))));
    return rows;
}

// ---------------------------------------------------------------------------
// Osculating projections
// ---------------------------------------------------------------------------

// Linear projection away from the coordinate hull of the osculating
// filtration at the base point.  The center is a coordinate subspace, so
// projecting just drops coordinates; the surviving labels are exactly the
// ones of order > s, and they vanish on every jet of order <= s.
struct ProjectionSetup {
    Variety variety = Variety::GR;
    int n = 0;
    int s = 0;
    std::vector<size_t> center_axes;     // coordinate axes spanning the center
    std::vector<size_t> surviving_axes;  // coordinate axes of order > s
    std::vector<std::string> surviving;  // their labels
    PolyMap projected;                   // the chart map restricted to the survivors
};

inline ProjectionSetup osculating_projection(Variety v, int n, int s) {
    if (s < 0 || s >= full_osc_threshold(v, n))
        throw std::invalid_argument("osculating_projection: order outside [0, threshold)");
    ProjectionSetup out;
    out.variety = v;
    out.n = n;
    out.s = s;
    PolyMap f = poly_map_for(v, n);
    std::vector<int> orders = label_orders(v, n);
    out.projected.variety = v;
    out.projected.n = n;
    out.projected.n_vars = f.n_vars;
    for (size_t i = 0; i < f.coords.size(); ++i) {
        if (orders[i] <= s) {
            out.center_axes.push_back(i);
            continue;
        }
        out.surviving_axes.push_back(i);
        out.surviving.push_back(f.labels[i]);
        out.projected.coords.push_back(f.coords[i]);
        out.projected.coord_index.push_back(f.coord_index[i]);
        out.projected.labels.push_back(f.labels[i]);
    }
    return out;
}

// The center as a subspace of the full coordinate space.
template <typename K>
Subspace<typename K::Elem> center_span(const ProjectionSetup& setup, const K& field) {
    return Subspace<typename K::Elem>::coordinate_span(
        static_cast<size_t>(ambient_dim(setup.variety, setup.n)) + 1, setup.center_axes, field);
}

// Image of a chart point under the projected map.
template <typename K>
std::vector<typename K::Elem> project_point(const ProjectionSetup& setup,
                                            const ChartPoint<typename K::Elem>& p,
                                            const K& field) {
    return evaluate(setup.projected, p, field);
}

// Generic-finiteness probe of a projected chart map.  The projective image
// dimension is the stacked value+Jacobian rank minus one; rank is
// lower-semicontinuous, so the maximum over samples is the generic value
// with overwhelming probability.
struct FinitenessReport {
    int64_t dim_x = 0;      // dimension of the source variety
    int64_t image_dim = 0;  // projective dimension of the image
    int64_t fiber_dim = 0;  // dim_x - image_dim
    bool finite = false;    // fiber_dim == 0
    int trials = 0;
    uint64_t seed = 0;
};

inline FinitenessReport generic_finiteness(const ProjectionSetup& setup, int trials = 10,
                                           uint64_t seed = kDefaultSeed) {
    if (trials < 1) throw std::invalid_argument("generic_finiteness: trials >= 1");
    GFp field(2147483647);
    FinitenessReport r;
    r.dim_x = variety_dim(setup.variety, setup.n);
    r.trials = trials;
    r.seed = seed;
    const std::vector<size_t>& surv = setup.surviving_axes;
    const ChartShape shape = chart_shape(setup.variety);
    size_t rank_max = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(derive_seed(seed, static_cast<uint64_t>(t)));
        ChartPoint<Fp> p = random_chart_point(shape, setup.n, field, rng);
        ChartEval<Fp> ev = chart_eval(setup.variety, setup.n, p.a, field);
        Matrix<Fp> m(1 + static_cast<size_t>(r.dim_x), surv.size());
        for (size_t j = 0; j < surv.size(); ++j) {
            m(0, j) = ev.value[surv[j]];
            for (int64_t k = 0; k < r.dim_x; ++k) m(1 + k, j) = ev.jacobian(surv[j], k);
        }
        rank_max = std::max(rank_max, rank(std::move(m)));
        if (rank_max == static_cast<size_t>(r.dim_x) + 1) break;
    }
    r.image_dim = static_cast<int64_t>(rank_max) - 1;
    r.fiber_dim = r.dim_x - r.image_dim;
    r.finite = r.fiber_dim == 0;
    return r;
}

// ---------------------------------------------------------------------------
// Explicit inversion of the projected images
// ---------------------------------------------------------------------------

// Exact inverse of the osculating projection on its birational range.
// The surviving minors/Pfaffians determine the inverse of the chart block
// through scale-invariant ratios, and the block follows by one matrix
// inversion (three overlapping principal blocks when the full block is
// odd-sized and singular on the skew charts).  `image` lists the surviving
// coordinate values in coordinate order, the layout produced by
// osculating_projection / project_point; any projective rescaling of it
// reconstructs the same block.
template <typename K>
ChartPoint<typename K::Elem> reconstruct_inverse(Variety v, int n, int s,
                                                 const std::vector<typename K::Elem>& image,
                                                 const K& field) {
    using F = typename K::Elem;
    if (v != Variety::LG && v != Variety::SPIN_PL && v != Variety::SPIN_MIN)
        throw std::invalid_argument("reconstruct_inverse: no inversion route for this chart");
    if (s < 0 || s > birational_threshold(v, n))
        throw std::invalid_argument("reconstruct_inverse: order outside the birational range");

    std::vector<int> orders = label_orders(v, n);
    std::vector<int> pos(orders.size(), -1);
    int count = 0;
    for (size_t i = 0; i < orders.size(); ++i)
        if (orders[i] > s) pos[i] = count++;
    if (image.size() != static_cast<size_t>(count))
        throw std::invalid_argument("reconstruct_inverse: image size does not match the projection");

    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    auto submask = [](const std::vector<int>& sub) {
        uint32_t m = 0;
        for (int x : sub) m |= 1u << (x - 1);
        return m;
    };

    // Full even-sized block: one inversion of the reconstructed inverse.
    auto assemble_full = [&](auto&& inv_block, ChartShape shape) {
        return chart_point(shape, inverse(inv_block(full), field));
    };
    // Odd-sized skew block: det/Pfaffian of the full block vanishes, so
    // recover the three largest principal blocks (their union covers every
    // entry) and check that the overlaps agree.
    auto assemble_blocks = [&](auto&& inv_block, ChartShape shape) {
        Matrix<F> a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = field.zero();
        std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
        for (int drop : {n, n - 1, 1}) {
            std::vector<int> sub;
            for (int x = 1; x <= n; ++x)
                if (x != drop) sub.push_back(x);
            Matrix<F> m = inverse(inv_block(sub), field);
            for (size_t x = 0; x < sub.size(); ++x)
                for (size_t y = 0; y < sub.size(); ++y) {
                    int gi = sub[x] - 1, gj = sub[y] - 1;
                    if (seen[gi][gj] && !(a(gi, gj) == m(x, y)))
                        throw std::domain_error(
                            "reconstruct_inverse: inconsistent principal blocks");
                    a(gi, gj) = m(x, y);
                    seen[gi][gj] = 1;
                }
        }
        return chart_point(shape, std::move(a));
    };

    if (v == Variety::SPIN_MIN) {
        std::unordered_map<uint32_t, int> at = label_index_by_mask(spinor_min_sets(n));
        auto pf_value = [&](uint32_t gmask) -> F {
            auto it = at.find(gmask);
            if (it == at.end()) throw std::logic_error("reconstruct_inverse: label out of range");
            if (pos[it->second] < 0)
                throw std::logic_error("reconstruct_inverse: label was projected away");
            return image[pos[it->second]];
        };
        // (M^{-1})_{ab} = (-1)^{a+b} pf(M without a,b) / pf(M) for a < b.
        auto inv_block = [&](const std::vector<int>& sub) {
            uint32_t smask = submask(sub);
            F pf = pf_value(smask);
            if (pf.is_zero())
                throw std::domain_error("reconstruct_inverse: vanishing pivot Pfaffian");
            F ipf = field.one() / pf;
            Matrix<F> b(sub.size(), sub.size());
            for (size_t x = 0; x < sub.size(); ++x) b(x, x) = field.zero();
            for (size_t x = 0; x < sub.size(); ++x)
                for (size_t y = x + 1; y < sub.size(); ++y) {
                    F g = pf_value(smask & ~(1u << (sub[x] - 1)) & ~(1u << (sub[y] - 1))) * ipf;
                    if ((x + y) % 2 != 0) g = -g;
                    b(x, y) = g;
                    b(y, x) = -g;
                }
            return b;
        };
        if (n % 2 == 0) return assemble_full(inv_block, ChartShape::SKEW);
        return assemble_blocks(inv_block, ChartShape::SKEW);
    }

    // Pair charts: coordinates are the stripped minors of the canonical
    // orbit member; the mirror member's minor has transposed row/column
    // sets, which costs (-1)^distance on the skew chart and nothing on the
    // symmetric one.
    const bool skew_chart = v == Variety::SPIN_PL;
    std::vector<SigmaPair> pairs = skew_chart ? spinor_pl_pairs(n) : lg_pairs(n);
    std::unordered_map<uint32_t, std::pair<int, int>> at;
    for (size_t i = 0; i < pairs.size(); ++i) {
        at[set_mask(pairs[i].j)] = {static_cast<int>(i), 0};
        if (!pairs[i].self_mirror) at[set_mask(pairs[i].jp)] = {static_cast<int>(i), 1};
    }
    const uint32_t i0mask = (1u << n) - 1;
    auto minor_value = [&](uint32_t rows, uint32_t cols) -> F {
        uint32_t jmask = (i0mask & ~rows) | (cols << n);
        auto it = at.find(jmask);
        if (it == at.end()) {
            // only odd principal skew minors are unindexed: identically zero
            if (rows == cols) return field.zero();
            throw std::logic_error("reconstruct_inverse: label out of range");
        }
        auto [idx, side] = it->second;
        if (pos[idx] < 0) throw std::logic_error("reconstruct_inverse: label was projected away");
        F val = image[pos[idx]];
        if (skew_chart && side == 1 && pairs[idx].distance % 2 == 1) val = -val;
        return val;
    };
    // (M^{-1})_{ab} = (-1)^{a+b} det M(row b, col a removed) / det M.
    auto inv_block = [&](const std::vector<int>& sub) {
        uint32_t smask = submask(sub);
        F det = minor_value(smask, smask);
        if (det.is_zero())
            throw std::domain_error("reconstruct_inverse: vanishing pivot minor");
        F idet = field.one() / det;
        Matrix<F> b(sub.size(), sub.size());
        for (size_t x = 0; x < sub.size(); ++x)
            for (size_t y = 0; y < sub.size(); ++y) {
                F g = minor_value(smask & ~(1u << (sub[y] - 1)),
                                  smask & ~(1u << (sub[x] - 1))) *
                      idet;
                if ((x + y) % 2 != 0) g = -g;
                b(x, y) = g;
            }
        return b;
    };
    if (!skew_chart) return assemble_full(inv_block, ChartShape::SYMMETRIC);
    if (n % 2 == 0) return assemble_full(inv_block, ChartShape::SKEW);
    return assemble_blocks(inv_block, ChartShape::SKEW);
}

}  // namespace isogeo
