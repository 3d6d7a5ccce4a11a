#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gha/homology.hpp"

namespace gha {

/* Verdict of the bounded Gorenstein probe. Verified and Refuted rest
   only on certified table cells; whatever the window leaves open turns
   into Inconclusive, never into a guess. Both verdicts are relative to
   the stage bound hmax and the degree windows of the algebra. */
struct GorensteinReport {
    enum class Kind { Verified, Refuted, Inconclusive };
    Kind kind = Kind::Inconclusive;
    int n = -1;              // the single stage where ext against the algebra lives
    std::vector<int> sigma;  // vertex of the stage-n class, per simple
    std::vector<int> shifts; // internal degree of the stage-n class, per simple
    int hmax = 0;
    int wit_vertex = -1, wit_s = -1, wit_degree = 0; // refutation witness cell
    std::string reason;
};

namespace detail {

struct GorensteinSide {
    int status = 2; // 0 = clean, 1 = refuted, 2 = inconclusive
    int n = -1;
    std::vector<int> sigma, shifts;
    int wit_vertex = -1, wit_s = -1, wit_degree = 0;
    std::string reason;
};

/* One-sided probe: for every simple, locate the certified nonzero rows
   of its ext table against the regular module, demand a single stage
   carrying a single one-dimensional class, and read off that class's
   vertex and internal degree from the dual-complex cohomology. */
template <class F>
GorensteinSide gorenstein_side(const AlgPtr<F>& a, int hmax) {
    GorensteinSide out;
    out.sigma.assign((std::size_t)a->m, -1);
    out.shifts.assign((std::size_t)a->m, 0);
    auto reg = regular_module(a);
    std::vector<char> image_hit((std::size_t)a->m, 0);
    auto refute = [&out](int j, int s, int d, std::string why) {
        out.status = 1;
        out.wit_vertex = j;
        out.wit_s = s;
        out.wit_degree = d;
        out.reason = std::move(why);
    };
    for (int j = 0; j < a->m; ++j) {
        auto res = minimal_resolution(simple_module(a, j), hmax);
        auto tbl = ext_table(res, reg);
        bool open = !tbl.zero_below_certified || !tbl.zero_above_certified;
        std::vector<std::vector<std::pair<int, int>>> nz((std::size_t)hmax + 1);
        for (int s = 0; s <= hmax; ++s)
            for (int d = tbl.dlo; d <= tbl.dhi; ++d) {
                const auto* c = tbl.cell(s, d);
                if (!c->certified)
                    open = true;
                else if (c->dim > 0)
                    nz[(std::size_t)s].push_back({d, c->dim});
            }
        std::vector<int> stages;
        for (int s = 0; s <= hmax; ++s)
            if (!nz[(std::size_t)s].empty()) stages.push_back(s);
        if (stages.empty()) {
            if (!open) {
                refute(j, -1, 0,
                       "ext of simple " + std::to_string(j) +
                           " vanishes at every stage up to the bound");
                return out;
            }
            out.reason = "ext of simple " + std::to_string(j) +
                         " vanishes on every certified cell; cells inside the bound stay open";
            return out;
        }
        if (stages.size() >= 2) {
            refute(j, stages[1], nz[(std::size_t)stages[1]][0].first,
                   "ext of simple " + std::to_string(j) + " is nonzero at stages " +
                       std::to_string(stages[0]) + " and " + std::to_string(stages[1]));
            return out;
        }
        int nj = stages[0];
        const auto& cells = nz[(std::size_t)nj];
        if (cells.size() >= 2) {
            refute(j, nj, cells[1].first,
                   "the stage-" + std::to_string(nj) + " class of simple " + std::to_string(j) +
                       " spreads over two internal degrees");
            return out;
        }
        if (cells[0].second != 1) {
            refute(j, nj, cells[0].first,
                   "the stage-" + std::to_string(nj) + " class of simple " + std::to_string(j) +
                       " is not one dimensional");
            return out;
        }
        int dj = cells[0].first;
        if (out.n < 0)
            out.n = nj;
        else if (out.n != nj) {
            refute(j, nj, dj, "simples disagree on the nonzero stage");
            return out;
        }
        // a certified cell at (nj, dj) guarantees level nj + 1 was known,
        // so the dual-complex cohomology at nj is available
        auto cls = homology_at(rigid_dual_complex(res), nj);
        if (!(dj >= cls.lo && dj <= cls.hi)) {
            out.reason = "cohomology window misses the stage class of simple " + std::to_string(j);
            return out;
        }
        for (int d = cls.lo; d <= cls.hi; ++d)
            if (d != dj && cls.dim_at(d) > 0) {
                refute(j, nj, d,
                       "simple " + std::to_string(j) + " carries a second stage-" +
                           std::to_string(nj) + " class");
                return out;
            }
        require(cls.dim_at(dj) == 1, "gorenstein probe: cohomology disagrees with the table");
        int v = cls.tags_at(dj)[0];
        if (image_hit[(std::size_t)v]) {
            refute(j, nj, dj, "two simples map to the same vertex at the nonzero stage");
            return out;
        }
        image_hit[(std::size_t)v] = 1;
        out.sigma[(std::size_t)j] = v;
        out.shifts[(std::size_t)j] = dj;
    }
    out.status = 0;
    return out;
}

} // namespace detail

/* Bounded two-sided probe. The opposite side doubles as the double-ext
   check: each stage-n class is literally one dimensional, hence a
   shifted simple, so requiring the opposite permutation to invert this
   side's (with matching degrees) is exactly the return condition. */
template <class F>
GorensteinReport check_as_gorenstein(const AlgPtr<F>& a, int hmax) {
    require(hmax >= 1, "check_as_gorenstein: bound must be at least 1");
    GorensteinReport rep;
    rep.hmax = hmax;
    auto take = [&rep](const detail::GorensteinSide& s, const char* side) {
        rep.wit_vertex = s.wit_vertex;
        rep.wit_s = s.wit_s;
        rep.wit_degree = s.wit_degree;
        rep.reason = std::string(side) + s.reason;
    };
    auto left = detail::gorenstein_side(a, hmax);
    if (left.status == 1) {
        rep.kind = GorensteinReport::Kind::Refuted;
        take(left, "");
        return rep;
    }
    auto right = detail::gorenstein_side(opposite(a), hmax);
    if (right.status == 1) {
        rep.kind = GorensteinReport::Kind::Refuted;
        take(right, "opposite side: ");
        return rep;
    }
    if (left.status == 2 || right.status == 2) {
        rep.kind = GorensteinReport::Kind::Inconclusive;
        take(left.status == 2 ? left : right, left.status == 2 ? "" : "opposite side: ");
        return rep;
    }
    if (left.n != right.n) {
        rep.kind = GorensteinReport::Kind::Refuted;
        rep.wit_s = right.n;
        rep.reason = "the two sides disagree on the nonzero stage";
        return rep;
    }
    for (int j = 0; j < a->m; ++j) {
        int k = left.sigma[(std::size_t)j];
        if (right.sigma[(std::size_t)k] != j) {
            rep.kind = GorensteinReport::Kind::Refuted;
            rep.wit_vertex = j;
            rep.wit_s = left.n;
            rep.wit_degree = left.shifts[(std::size_t)j];
            rep.reason = "double ext of simple " + std::to_string(j) +
                         " returns vertex " + std::to_string(right.sigma[(std::size_t)k]);
            return rep;
        }
        if (right.shifts[(std::size_t)k] != left.shifts[(std::size_t)j]) {
            rep.kind = GorensteinReport::Kind::Refuted;
            rep.wit_vertex = j;
            rep.wit_s = left.n;
            rep.wit_degree = left.shifts[(std::size_t)j];
            rep.reason = "stage-class degrees disagree between the two sides at simple " +
                         std::to_string(j);
            return rep;
        }
    }
    rep.kind = GorensteinReport::Kind::Verified;
    rep.n = left.n;
    rep.sigma = std::move(left.sigma);
    rep.shifts = std::move(left.shifts);
    return rep;
}

/* The permutation and degree data of a verified report, re-validated. */
inline std::pair<std::vector<int>, std::vector<int>> extract_sigma(const GorensteinReport& rep) {
    require(rep.kind == GorensteinReport::Kind::Verified, "extract_sigma: report is not verified");
    std::vector<char> seen(rep.sigma.size(), 0);
    for (int v : rep.sigma) {
        require(v >= 0 && v < (int)rep.sigma.size() && !seen[(std::size_t)v],
                "extract_sigma: vertex assignment is not a bijection");
        seen[(std::size_t)v] = 1;
    }
    return {rep.sigma, rep.shifts};
}

namespace detail {

// direct sum after refitting every part to the largest shared window
template <class F>
GradedModule<F> aligned_sum(const std::vector<GradedModule<F>>& parts) {
    int lo = parts[0].lo, hi = parts[0].hi;
    for (auto& p : parts) {
        lo = std::min(lo, p.lo);
        hi = std::max(hi, p.hi);
    }
    for (auto& p : parts) {
        if (!p.zero_below) lo = std::max(lo, p.lo);
        if (!p.zero_above) hi = std::min(hi, p.hi);
    }
    require(lo <= hi, "aligned_sum: summand windows do not overlap");
    std::vector<GradedModule<F>> fitted;
    for (auto& p : parts) fitted.push_back(refit_window(p, lo, hi));
    return direct_sum(fitted);
}

} // namespace detail

/* The graded bimodule glued from duals of the indicated projectives:
   summand k is the dual of the right projective at sigma^{-1}(k),
   pushed to the internal degree of that simple's stage class. as_left
   and as_right realize the two one-sided structures; their Hilbert
   tables must agree on the shared window. */
template <class F>
struct DualizingModule {
    struct Summand {
        int vertex = 0;
        int shift = 0;
    };
    int n = -1; // the verified nonzero stage
    std::vector<Summand> summands;
    GradedModule<F> as_left;
    GradedModule<F> as_right;
};

template <class F>
DualizingModule<F> dualizing_module(const AlgPtr<F>& a, const GorensteinReport& rep) {
    auto [sigma, shifts] = extract_sigma(rep);
    require((int)sigma.size() == a->m, "dualizing_module: report belongs to a different algebra");
    std::vector<int> inv((std::size_t)a->m, 0);
    for (int j = 0; j < a->m; ++j) inv[(std::size_t)sigma[(std::size_t)j]] = j;
    DualizingModule<F> out;
    out.n = rep.n;
    std::vector<GradedModule<F>> lparts, rparts;
    for (int k = 0; k < a->m; ++k) {
        int j = inv[(std::size_t)k];
        out.summands.push_back({j, -shifts[(std::size_t)j]});
        lparts.push_back(shift_module(dual_module(make_free(a, {{j, 0}}, true).mod),
                                      -shifts[(std::size_t)j]));
        rparts.push_back(shift_module(dual_module(projective_module(a, sigma[(std::size_t)k])),
                                      -shifts[(std::size_t)k]));
    }
    out.as_left = detail::aligned_sum(lparts);
    out.as_right = detail::aligned_sum(rparts);
    for (int d = std::max(out.as_left.lo, out.as_right.lo);
         d <= std::min(out.as_left.hi, out.as_right.hi); ++d)
        require(out.as_left.dim_at(d) == out.as_right.dim_at(d),
                "dualizing_module: left and right Hilbert tables disagree");
    return out;
}

/* Round trip through the stage-n ext of a finite-length module: off-row
   vanishing on certified cells, length preservation, and the degreewise
   return of the module's Hilbert table after the second dualization. */
struct DoubleExtReport {
    bool ok = false;
    bool vanishing_ok = false, length_ok = false, hilbert_ok = false;
    int row_total = 0;
    std::string detail;
};

template <class F>
DoubleExtReport verify_double_ext(const AlgPtr<F>& a, const GradedModule<F>& m,
                                  const GorensteinReport& rep, int hmax) {
    require(rep.kind == GorensteinReport::Kind::Verified,
            "verify_double_ext: report is not verified");
    require(m.alg.get() == a.get() && !m.is_right,
            "verify_double_ext: need a left module over the algebra");
    require(m.zero_below && m.zero_above, "verify_double_ext: module must have finite length");
    const int n = rep.n;
    require(hmax >= n, "verify_double_ext: bound sits below the nonzero stage");
    DoubleExtReport out;
    auto res = minimal_resolution(m, hmax);
    auto tbl = ext_table(res, regular_module(a));
    out.vanishing_ok = true;
    for (int s = 0; s <= hmax; ++s) {
        if (s == n) continue;
        for (int d = tbl.dlo; d <= tbl.dhi; ++d) {
            const auto* c = tbl.cell(s, d);
            if (c->certified && c->dim > 0) {
                out.vanishing_ok = false;
                out.detail = "certified nonzero ext at stage " + std::to_string(s) +
                             ", degree " + std::to_string(d);
            }
        }
    }
    require(n < hmax || res.tail_empty(), "verify_double_ext: stage n sits at the bound");
    auto row = homology_at(rigid_dual_complex(res), n);
    int mlen = 0;
    for (int d = m.lo; d <= m.hi; ++d) mlen += m.dim_at(d);
    for (int d = row.lo; d <= row.hi; ++d) out.row_total += row.dim_at(d);
    out.length_ok = out.row_total == mlen;
    if (!out.length_ok && out.detail.empty())
        out.detail = "stage-" + std::to_string(n) + " total " + std::to_string(out.row_total) +
                     " differs from the module total " + std::to_string(mlen);
    auto back = homology_at(rigid_dual_complex(minimal_resolution(row, hmax)), n);
    out.hilbert_ok = true;
    for (int d = std::min(m.lo, back.lo); d <= std::max(m.hi, back.hi); ++d) {
        if (!back.known(d)) {
            if (m.dim_at(d) != 0) {
                out.hilbert_ok = false;
                out.detail = "double ext window misses degree " + std::to_string(d);
            }
            continue;
        }
        if (vertex_dims(back, d) != vertex_dims(m, d)) {
            out.hilbert_ok = false;
            out.detail = "double ext disagrees with the module in degree " + std::to_string(d);
        }
    }
    out.ok = out.vanishing_ok && out.length_ok && out.hilbert_ok;
    return out;
}

} // namespace gha
