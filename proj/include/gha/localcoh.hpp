#pragma once

// Torsion cohomology of graded left modules. Route one runs the direct
// system over the radical power quotients A/A_{>=k} and watches the
// images of each stage settle; route two reads a tor row against the
// dualizing module. The reports at the bottom compare the two along the
// graded duality identity, the opposite algebra, tensor factors and the
// Kunneth expansion of the semisimple part.

#include "gha/gorenstein.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace gha {

// consecutive later stages an image dimension must hold to count as settled
inline constexpr int stability_run = 2;

struct LimitCell {
    int dim = -1;   // settled image dimension, valid when status == 0
    int stage = -1; // first stage whose image already equals every later one
    int status = 2; // 0 settled, 1 not yet stable, 2 out of window
};

/* Per (internal degree, vertex) state of the direct system at one
   cohomological degree. The vertex of a cell names the tower summand,
   which matches the left vertex decomposition of the limit. */
struct LimitTable {
    int i = 0;
    int kmax = 0;
    int vcount = 0;
    int dlo = 0, dhi = -1;
    std::vector<char> vertex_all_zero; // certified zero at every degree: the tower stops
                                       // before level i, or the module window forces
                                       // every deep enough stage to vanish
    std::vector<std::vector<LimitCell>> cells; // [d - dlo][vertex]

    const LimitCell& cell(int d, int v) const {
        static const LimitCell settled_zero{0, 1, 0};
        static const LimitCell outside{-1, -1, 2};
        require(v >= 0 && v < vcount, "limit table: vertex out of range");
        if (vertex_all_zero[(std::size_t)v]) return settled_zero;
        if (d < dlo || d > dhi) return outside;
        return cells[(std::size_t)(d - dlo)][(std::size_t)v];
    }
    bool in_range(int d) const { return d >= dlo && d <= dhi; }
    bool stable(int d) const {
        for (int v = 0; v < vcount; ++v)
            if (cell(d, v).status != 0) return false;
        return true;
    }
    int total(int d) const {
        int t = 0;
        for (int v = 0; v < vcount; ++v) {
            const auto& c = cell(d, v);
            require(c.status == 0, "limit table: total over an unsettled cell");
            t += c.dim;
        }
        return t;
    }
};

/* Resolutions of the quotients of one projective by its radical powers,
   k = 1..kmax, with chain maps lifting each tower projection. Reusable
   across modules and cohomological degrees up to hmax - 1. */
template <class F>
struct TruncationTower {
    int vertex = 0;
    int kmax = 0;
    int hmax = 0;
    std::vector<ProjResolution<F>> res;          // [k - 1]
    std::vector<std::vector<GradedMap<F>>> lift; // [k - 2]: stage k into stage k - 1
};

namespace detail {

// identity on the shared coordinates of two truncations of one module
template <class F>
GradedMap<F> truncation_projection(const GradedModule<F>& big, const GradedModule<F>& small) {
    const F& f = big.alg->field;
    GradedMap<F> out;
    out.degree = 0;
    out.lo = big.lo;
    out.hi = big.hi;
    for (int d = big.lo; d <= big.hi; ++d) {
        Matrix<F> b(f, (std::size_t)small.dim_at(d), (std::size_t)big.dim_at(d));
        for (std::size_t i = 0; i < b.rows(); ++i) b.at(i, i) = f.one();
        out.blocks.push_back(std::move(b));
    }
    return out;
}

} // namespace detail

template <class F>
std::vector<TruncationTower<F>> build_towers(const AlgPtr<F>& a, int kmax, int hmax) {
    require(kmax >= 1, "build_towers: at least one stage");
    require(kmax <= a->dmax, "build_towers: stages beyond the degree bound");
    require(hmax >= 1, "build_towers: resolutions need at least one level");
    std::vector<TruncationTower<F>> out;
    out.reserve((std::size_t)a->m);
    for (int v = 0; v < a->m; ++v) {
        TruncationTower<F> tw;
        tw.vertex = v;
        tw.kmax = kmax;
        tw.hmax = hmax;
        auto proj = projective_module(a, v);
        for (int k = 1; k <= kmax; ++k)
            tw.res.push_back(minimal_resolution(truncate_above(proj, k - 1), hmax));
        for (int k = 2; k <= kmax; ++k) {
            const auto& rk = tw.res[(std::size_t)k - 1];
            const auto& rp = tw.res[(std::size_t)k - 2];
            auto pr = detail::truncation_projection(rk.module, rp.module);
            // the lifts are only ever evaluated on generators, so cap
            // the blocks at the deepest generator degree
            int cap = 0;
            for (int s = 0; s < hmax; ++s)
                for (const auto& t : rk.terms[(std::size_t)s]) cap = std::max(cap, t.shift);
            tw.lift.push_back(lift_chain_map(rk, rp, pr, hmax - 1, cap));
        }
        out.push_back(std::move(tw));
    }
    return out;
}

/* Direct system route: per degree, push each stage's cohomology into
   all later stages and settle a cell when those image dimensions agree
   all the way out and match the last stage. Degrees no computed stage
   can reach stay out of window. */
template <class F>
LimitTable gamma_via_limit(const std::vector<TruncationTower<F>>& towers,
                           const GradedModule<F>& m, int i) {
    require(!towers.empty(), "gamma_via_limit: no towers");
    require(i >= 0, "gamma_via_limit: negative cohomological degree");
    require(i + 1 <= towers.front().hmax,
            "gamma_via_limit: towers too shallow for this degree");
    require(!m.is_right, "gamma_via_limit: expects a left module");
    require(m.alg.get() == towers.front().res.front().alg.get(),
            "gamma_via_limit: module over a different algebra");

    /* A module bounded above kills the deep stages outright at positive
       cohomological degrees: stage s >= 1 generators of the resolution
       of Q_v / rad^k Q_v sit in internal degrees >= k + s - 1, so
       Hom(P_s^{(k)}, M)_d vanishes once k > m.hi - d - s + 1. At any
       fixed degree the direct system is eventually zero, hence its
       limit is zero, with no detection run and no tower data needed. */
    if (i >= 1 && m.zero_above && m.alg->degree1_generated) {
        LimitTable zero;
        zero.i = i;
        zero.kmax = towers.front().kmax;
        zero.vcount = (int)towers.size();
        zero.vertex_all_zero.assign(towers.size(), 1);
        return zero;
    }

    const F& f = m.alg->field;
    const int K = towers.front().kmax;

    LimitTable out;
    out.i = i;
    out.kmax = K;
    out.vcount = (int)towers.size();
    out.vertex_all_zero.assign(towers.size(), 0);

    // support union over stages, per vertex and overall
    std::vector<int> vlo(towers.size(), INT32_MAX), vhi(towers.size(), INT32_MIN);
    int dlo = INT32_MAX, dhi = INT32_MIN;
    for (std::size_t v = 0; v < towers.size(); ++v) {
        bool ended = true;
        for (const auto& r : towers[v].res) {
            bool empty_tail = r.tail_empty();
            for (int s = i; s <= r.hmax && empty_tail; ++s)
                empty_tail = r.terms[(std::size_t)s].empty();
            ended = ended && empty_tail;
            if (!r.terms[(std::size_t)i].empty()) {
                vlo[v] = std::min(vlo[v], m.lo - r.max_shift(i));
                vhi[v] = std::max(vhi[v], m.hi - r.min_shift(i));
            }
        }
        if (ended) {
            out.vertex_all_zero[v] = 1;
            continue;
        }
        if (vlo[v] <= vhi[v]) {
            dlo = std::min(dlo, vlo[v]);
            dhi = std::max(dhi, vhi[v]);
        }
    }
    if (dlo > dhi) return out; // every vertex settled at zero or empty

    out.dlo = dlo;
    out.dhi = dhi;
    out.cells.assign((std::size_t)(dhi - dlo + 1),
                     std::vector<LimitCell>(towers.size()));

    for (std::size_t v = 0; v < towers.size(); ++v) {
        if (out.vertex_all_zero[v]) continue;
        const auto& tw = towers[v];
        for (int d = dlo; d <= dhi; ++d) {
            auto& c = out.cells[(std::size_t)(d - dlo)][v];
            if (vlo[v] > vhi[v] || d < vlo[v]) {
                c = {-1, -1, 2}; // below the reach of every computed stage
                continue;
            }
            if (d > vhi[v]) {
                // nothing can appear above the union of stage supports
                c = m.zero_above ? LimitCell{0, 1, 0} : LimitCell{-1, -1, 2};
                continue;
            }
            /* keff: the longest stage prefix whose Hom levels around i the
               module window determines; the detector runs on that prefix so
               a deeper tower never loses already settled cells. */
            int keff = 0;
            for (int k = 1; k <= K; ++k) {
                bool known = true;
                for (int lvl = i - 1; lvl <= i + 1 && known; ++lvl)
                    known = detail::ext_level_known(tw.res[(std::size_t)k - 1], m, lvl, d);
                if (!known) break;
                keff = k;
            }
            if (keff == 0) {
                c = {-1, -1, 2};
                continue;
            }

            // cochain kernels, boundary images and quotient dimensions per stage
            std::vector<Matrix<F>> kerb, imb;
            std::vector<int> rkim(keff), dimv(keff);
            for (int k = 1; k <= keff; ++k) {
                const auto& r = tw.res[(std::size_t)k - 1];
                kerb.push_back(kernel_basis(detail::ext_step(r, m, i, d)));
                imb.push_back(i > 0 ? detail::ext_step(r, m, i - 1, d)
                                    : Matrix<F>(f, kerb.back().rows(), 0));
                rkim[k - 1] = (int)rank(imb.back());
                dimv[k - 1] = (int)kerb.back().cols() - rkim[k - 1];
            }

            // J[k0 - 1][l - k0 - 1]: image dimension of stage k0 inside stage l
            std::vector<std::vector<int>> J(keff);
            std::vector<Matrix<F>> live(keff);
            live[0] = kerb[0];
            for (int k = 2; k <= keff; ++k) {
                auto step = detail::hom_pullback(tw.res[(std::size_t)k - 1], i,
                                                 tw.res[(std::size_t)k - 2], i,
                                                 tw.lift[(std::size_t)k - 2][(std::size_t)i],
                                                 m, d);
                for (int k0 = 1; k0 < k; ++k0) {
                    live[k0 - 1] = matmul(step, live[k0 - 1]);
                    J[k0 - 1].push_back(
                        (int)rank(hstack(live[k0 - 1], imb[(std::size_t)k - 1])) -
                        rkim[k - 1]);
                }
                live[k - 1] = kerb[(std::size_t)k - 1];
            }

            c = {-1, -1, keff == K ? 1 : 2};
            for (int k0 = 1; k0 + stability_run <= keff; ++k0) {
                bool flat = true;
                for (int x : J[k0 - 1]) flat = flat && x == J[k0 - 1].front();
                if (flat && J[k0 - 1].front() == dimv[keff - 1]) {
                    c = {J[k0 - 1].front(), k0, 0};
                    break;
                }
            }
        }
    }
    return out;
}

template <class F>
LimitTable gamma_via_limit(const AlgPtr<F>& a, const GradedModule<F>& m, int i, int kmax) {
    require(i >= 0, "gamma_via_limit: negative cohomological degree");
    return gamma_via_limit(build_towers(a, kmax, i + 1), m, i);
}

/* Dualizing module route: degree i torsion cohomology sits in the tor
   row n - i against the right structure of the dualizing module. */
struct TorRoute {
    int i = 0;
    int row = 0;
    BigradedTable table;
};

template <class F>
TorRoute gamma_via_tor(const GradedModule<F>& m, int i, const DualizingModule<F>& dm,
                       int hmax) {
    require(i >= 0 && i <= dm.n, "gamma_via_tor: degree outside 0..n");
    require(!m.is_right, "gamma_via_tor: expects a left module");
    require(hmax >= dm.n - i, "gamma_via_tor: resolution too short for this row");
    TorRoute out;
    out.i = i;
    out.row = dm.n - i;
    out.table = tor_table(dm.as_right, minimal_resolution(m, hmax));
    return out;
}

/* Two dimension tables compared degree by degree; -1 marks a side that
   is not certified there. */
struct FormulaReport {
    int i = 0;
    int dlo = 0, dhi = -1;
    std::vector<int> lhs, rhs;
    std::vector<int> verdict; // 0 match, 1 mismatch, 2 one side unavailable
    bool any_mismatch = false;
    int matches = 0;

    int lhs_at(int d) const { return pick(lhs, d); }
    int rhs_at(int d) const { return pick(rhs, d); }
    int verdict_at(int d) const {
        return d < dlo || d > dhi ? 2 : verdict[(std::size_t)(d - dlo)];
    }
    int pick(const std::vector<int>& side, int d) const {
        return d < dlo || d > dhi ? -1 : side[(std::size_t)(d - dlo)];
    }
};

namespace detail {

inline FormulaReport compare_tables(int i, int dlo, int dhi,
                                    const std::function<int(int)>& lhs_of,
                                    const std::function<int(int)>& rhs_of) {
    FormulaReport r;
    r.i = i;
    if (dlo > dhi) return r;
    r.dlo = dlo;
    r.dhi = dhi;
    for (int d = dlo; d <= dhi; ++d) {
        int l = lhs_of(d), rr = rhs_of(d);
        r.lhs.push_back(l);
        r.rhs.push_back(rr);
        int v = l < 0 || rr < 0 ? 2 : (l == rr ? 0 : 1);
        if (v == 0) ++r.matches;
        if (v == 1) r.any_mismatch = true;
        r.verdict.push_back(v);
    }
    return r;
}

inline FormulaReport lcf_compare(const LimitTable& lim, const BigradedTable& tbl, int row,
                                 int i) {
    int dlo = INT32_MAX, dhi = INT32_MIN;
    if (lim.dlo <= lim.dhi) {
        dlo = std::min(dlo, -lim.dhi);
        dhi = std::max(dhi, -lim.dlo);
    }
    if (tbl.dlo <= tbl.dhi) {
        dlo = std::min(dlo, tbl.dlo);
        dhi = std::max(dhi, tbl.dhi);
    }
    if (dlo > dhi) {
        FormulaReport r;
        r.i = i;
        return r;
    }
    return compare_tables(
        i, dlo, dhi,
        [&](int d) { return lim.stable(-d) ? lim.total(-d) : -1; },
        [&](int d) { return tbl.certified(row, d) ? tbl.dim(row, d) : -1; });
}

} // namespace detail

/* Degreewise audit of the graded duality identity: the settled limit
   read at negated degrees against the ext row n - i of M into the
   projective dual of the dualizing module. */
template <class F>
FormulaReport verify_lcf(const AlgPtr<F>& a, const GradedModule<F>& m,
                         const DualizingModule<F>& dm, int i, int kmax, int hmax) {
    require(i >= 0 && i <= dm.n, "verify_lcf: degree outside 0..n");
    require(hmax >= dm.n - i, "verify_lcf: resolution too short for this row");
    auto lim = gamma_via_limit(a, m, i, kmax);
    auto tbl = ext_table(minimal_resolution(m, hmax), dual_module(dm.as_right));
    return detail::lcf_compare(lim, tbl, dm.n - i, i);
}

/* All degrees 0..n at once, sharing the towers, the resolution of M and
   its ext table across the reports. */
template <class F>
std::vector<FormulaReport> verify_lcf_all(const std::vector<TruncationTower<F>>& towers,
                                          const GradedModule<F>& m,
                                          const DualizingModule<F>& dm, int hmax) {
    require(hmax >= dm.n, "verify_lcf_all: resolution too short for the bottom row");
    require(!towers.empty() && towers.front().hmax >= dm.n + 1,
            "verify_lcf_all: towers too shallow for the top degree");
    auto tbl = ext_table(minimal_resolution(m, hmax), dual_module(dm.as_right));
    std::vector<FormulaReport> out;
    for (int i = 0; i <= dm.n; ++i)
        out.push_back(detail::lcf_compare(gamma_via_limit(towers, m, i), tbl, dm.n - i, i));
    return out;
}

template <class F>
std::vector<FormulaReport> verify_lcf_all(const AlgPtr<F>& a, const GradedModule<F>& m,
                                          const DualizingModule<F>& dm, int kmax, int hmax) {
    return verify_lcf_all(build_towers(a, kmax, dm.n + 1), m, dm, hmax);
}

/* The regular module's settled torsion cohomology against the same
   computation over the opposite algebra, vertices matched identically. */
template <class F>
FormulaReport verify_prop5(const AlgPtr<F>& a, int i, int kmax) {
    auto left = gamma_via_limit(a, regular_module(a), i, kmax);
    auto op = opposite(a);
    auto right = gamma_via_limit(op, regular_module(op), i, kmax);
    int dlo = INT32_MAX, dhi = INT32_MIN;
    for (const auto* t : {&left, &right})
        if (t->dlo <= t->dhi) {
            dlo = std::min(dlo, t->dlo);
            dhi = std::max(dhi, t->dhi);
        }
    if (dlo > dhi) {
        FormulaReport r;
        r.i = i;
        return r;
    }
    return detail::compare_tables(
        i, dlo, dhi,
        [&](int d) { return left.stable(d) ? left.total(d) : -1; },
        [&](int d) { return right.stable(d) ? right.total(d) : -1; });
}

/* Level zero torsion commutes with tensor factors: the settled table of
   the tensor algebra's regular module against the convolution of the
   factors' settled tables. */
template <class F>
FormulaReport check_gamma_tensor_composition(const AlgPtr<F>& a, const AlgPtr<F>& b,
                                             int kmax) {
    auto t = tensor_algebra(a, b);
    auto lim = gamma_via_limit(t, regular_module(t), 0, kmax);
    auto la = gamma_via_limit(a, regular_module(a), 0, kmax);
    auto lb = gamma_via_limit(b, regular_module(b), 0, kmax);
    require(lim.dlo <= lim.dhi, "tensor composition: empty tensor table");
    return detail::compare_tables(
        0, 0, lim.dhi, [&](int d) { return lim.stable(d) ? lim.total(d) : -1; },
        [&](int d) {
            int s = 0;
            for (int d1 = 0; d1 <= d; ++d1) {
                if (!la.stable(d1) || !lb.stable(d - d1)) return -1;
                s += la.total(d1) * lb.total(d - d1);
            }
            return s;
        });
}

/* Kunneth audit for the semisimple part: the ext row t over the tensor
   algebra against the convolution of the factor tables. */
template <class F>
FormulaReport verify_kunneth(const AlgPtr<F>& a, const AlgPtr<F>& b, int t, int hmax) {
    require(t >= 0 && t + 1 <= hmax, "verify_kunneth: row outside the resolution bound");
    auto top = [](const AlgPtr<F>& x) {
        std::vector<GradedModule<F>> parts;
        for (int j = 0; j < x->m; ++j) parts.push_back(simple_module(x, j));
        return direct_sum(parts);
    };
    auto ta = tensor_algebra(a, b);
    auto lt = ext_table(minimal_resolution(top(ta), hmax), regular_module(ta));
    auto ea = ext_table(minimal_resolution(top(a), hmax), regular_module(a));
    auto eb = ext_table(minimal_resolution(top(b), hmax), regular_module(b));

    bool below_ok = ea.zero_below_certified || eb.zero_above_certified;
    bool above_ok = ea.zero_above_certified || eb.zero_below_certified;
    auto rhs_of = [&](int d) -> int {
        if (!below_ok || !above_ok) return -1;
        long s = 0;
        int lo1 = std::min(ea.dlo, d - eb.dhi), hi1 = std::max(ea.dhi, d - eb.dlo);
        for (int ii = 0; ii <= t; ++ii) {
            int jj = t - ii;
            for (int d1 = lo1; d1 <= hi1; ++d1) {
                bool ca = ea.certified(ii, d1), cb = eb.certified(jj, d - d1);
                if (ca && ea.dim(ii, d1) == 0) continue;
                if (cb && eb.dim(jj, d - d1) == 0) continue;
                if (!ca || !cb) return -1;
                s += ea.dim(ii, d1) * eb.dim(jj, d - d1);
            }
        }
        return (int)s;
    };

    int dlo = INT32_MAX, dhi = INT32_MIN;
    if (lt.dlo <= lt.dhi) {
        dlo = std::min(dlo, lt.dlo);
        dhi = std::max(dhi, lt.dhi);
    }
    if (ea.dlo <= ea.dhi && eb.dlo <= eb.dhi) {
        dlo = std::min(dlo, ea.dlo + eb.dlo);
        dhi = std::max(dhi, ea.dhi + eb.dhi);
    }
    if (dlo > dhi) {
        FormulaReport r;
        r.i = t;
        return r;
    }
    return detail::compare_tables(
        t, dlo, dhi,
        [&](int d) { return lt.certified(t, d) ? lt.dim(t, d) : -1; }, rhs_of);
}

/* Largest cohomological degree up to lmax with a settled nonzero cell,
   per sample and overall; -1 when everything settles at zero. */
struct LcProbe {
    std::vector<int> per_sample;
    int overall = -1;
};

template <class F>
LcProbe lc_dimension_probe(const AlgPtr<F>& a, int lmax,
                           const std::vector<GradedModule<F>>& samples, int kmax) {
    require(lmax >= 0, "lc_dimension_probe: negative level cap");
    auto towers = build_towers(a, kmax, lmax + 1);
    LcProbe out;
    for (const auto& m : samples) {
        int best = -1;
        for (int i = lmax; i >= 0 && best < 0; --i) {
            auto t = gamma_via_limit(towers, m, i);
            for (int d = t.dlo; d <= t.dhi && best < 0; ++d)
                if (t.stable(d) && t.total(d) > 0) best = i;
        }
        out.per_sample.push_back(best);
        out.overall = std::max(out.overall, best);
    }
    return out;
}

} // namespace gha
