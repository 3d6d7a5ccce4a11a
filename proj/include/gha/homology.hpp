#pragma once

#include <cstdint>
#include <vector>

#include "gha/resolution.hpp"

namespace gha {

/* Bigraded dimension table indexed by (homological stage s, internal
   degree d). dim = -1 marks an entry the window could not pin down;
   certified entries never change when the bounds are enlarged. Cells
   outside the stored degree range are zero, and certified exactly when
   the matching side flag promises it. */
struct TableCell {
    int dim = 0;
    bool certified = false;
    std::vector<int> vdims; // per-vertex split when the entry carries one
};

struct BigradedTable {
    int smax = 0;
    int dlo = 0, dhi = -1;
    bool zero_below_certified = false, zero_above_certified = false;
    std::vector<std::vector<TableCell>> cells; // [s][d - dlo]

    const TableCell* cell(int s, int d) const {
        if (s < 0 || s > smax || d < dlo || d > dhi) return nullptr;
        return &cells[s][d - dlo];
    }
    int dim(int s, int d) const {
        auto* c = cell(s, d);
        return c ? c->dim : 0;
    }
    bool certified(int s, int d) const {
        if (s < 0 || s > smax) return false;
        if (d < dlo) return zero_below_certified;
        if (d > dhi) return zero_above_certified;
        return cells[s][d - dlo].certified;
    }
};

namespace detail {

// positions of the slots of N in degree q carrying vertex tag v
template <class F>
std::vector<int> tag_positions(const GradedModule<F>& n, int q, int v) {
    std::vector<int> out;
    const auto& tg = n.tags_at(q);
    for (std::size_t i = 0; i < tg.size(); ++i)
        if (tg[i] == v) out.push_back((int)i);
    return out;
}

// every component of N touched by level sp of the resolution at internal
// degree n is inside N's known range
template <class F>
bool ext_level_known(const ProjResolution<F>& res, const GradedModule<F>& n_mod, int sp, int n) {
    if (sp < 0) return true;
    if (sp > res.hmax) return res.tail_empty();
    if (res.terms[sp].empty()) return true;
    return n_mod.known(n + res.min_shift(sp)) && n_mod.known(n + res.max_shift(sp));
}

template <class F>
bool tor_level_known(const ProjResolution<F>& res, const GradedModule<F>& x, int sp, int d) {
    if (sp < 0) return true;
    if (sp > res.hmax) return res.tail_empty();
    if (res.terms[sp].empty()) return true;
    return x.known(d - res.max_shift(sp)) && x.known(d - res.min_shift(sp));
}

template <class F>
int ext_comp_dim(const ProjResolution<F>& res, const GradedModule<F>& n_mod, int s, int n) {
    int out = 0;
    for (auto& t : res.terms[s])
        out += (int)tag_positions(n_mod, t.shift + n, t.vertex).size();
    return out;
}

template <class F>
int tor_comp_dim(const ProjResolution<F>& res, const GradedModule<F>& x, int s, int d) {
    int out = 0;
    for (auto& t : res.terms[s])
        out += (int)tag_positions(x, d - t.shift, t.vertex).size();
    return out;
}

/* Matrix of Hom(P_st(tgt), N)_n -> Hom(P_ss(src), N)_n given by
   precomposition with a degree-0 free module map phi: P_ss(src) ->
   P_st(tgt), read off its generator columns. Rows follow the src terms
   and columns the tgt terms, each split along N's vertex tags. */
template <class F>
Matrix<F> hom_pullback(const ProjResolution<F>& src, int ss, const ProjResolution<F>& tgt,
                       int st, const GradedMap<F>& phi, const GradedModule<F>& n_mod,
                       int n) {
    const F& f = src.alg->field;
    const auto& up = src.terms[ss];
    const auto& tp = tgt.terms[st];
    std::vector<std::vector<int>> rpos(up.size()), cpos(tp.size());
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> roff(up.size()), coff(tp.size());
    for (std::size_t u = 0; u < up.size(); ++u) {
        roff[u] = rows;
        rpos[u] = tag_positions(n_mod, up[u].shift + n, up[u].vertex);
        rows += rpos[u].size();
    }
    for (std::size_t t = 0; t < tp.size(); ++t) {
        coff[t] = cols;
        cpos[t] = tag_positions(n_mod, tp[t].shift + n, tp[t].vertex);
        cols += cpos[t].size();
    }
    Matrix<F> out(f, rows, cols);
    const auto& psl = tgt.frees[st];
    for (std::size_t u = 0; u < up.size(); ++u) {
        int du = up[u].shift;
        require(du >= phi.lo && du <= phi.hi,
                "hom_pullback: generator column outside the map window");
        const auto& col = phi.block_at(du);
        const auto& slots = psl.slots[du - psl.mod.lo];
        for (std::size_t row = 0; row < slots.size(); ++row) {
            auto c = col.at(row, (std::size_t)src.gen_slot(ss, (int)u));
            if (f.is_zero(c)) continue;
            auto [t, x] = slots[row];
            int dt = tp[t].shift;
            auto act = act_elem(n_mod, du - dt, x, dt + n);
            for (std::size_t i = 0; i < rpos[u].size(); ++i)
                for (std::size_t j = 0; j < cpos[t].size(); ++j) {
                    auto& dst = out.at(roff[u] + i, coff[t] + j);
                    dst = f.add(dst, f.mul(c, act.at(rpos[u][i], cpos[t][j])));
                }
        }
    }
    return out;
}

// Matrix of Hom(P_s, N)_n -> Hom(P_{s+1}, N)_n, precomposition with the boundary.
template <class F>
Matrix<F> ext_step(const ProjResolution<F>& res, const GradedModule<F>& n_mod, int s, int n) {
    return hom_pullback(res, s + 1, res, s, res.boundary[s + 1], n_mod, n);
}

/* Matrix of (X (x) P_s)_d -> (X (x) P_{s-1})_d: the boundary coefficients
   of each generator of P_s act on X through the opposite algebra. */
template <class F>
Matrix<F> tor_step(const ProjResolution<F>& res, const GradedModule<F>& x_mod, int s, int d) {
    const F& f = res.alg->field;
    const auto& up = res.terms[s - 1];
    const auto& tp = res.terms[s];
    std::vector<std::vector<int>> rpos(up.size()), cpos(tp.size());
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> roff(up.size()), coff(tp.size());
    for (std::size_t u = 0; u < up.size(); ++u) {
        roff[u] = rows;
        rpos[u] = tag_positions(x_mod, d - up[u].shift, up[u].vertex);
        rows += rpos[u].size();
    }
    for (std::size_t t = 0; t < tp.size(); ++t) {
        coff[t] = cols;
        cpos[t] = tag_positions(x_mod, d - tp[t].shift, tp[t].vertex);
        cols += cpos[t].size();
    }
    Matrix<F> out(f, rows, cols);
    const auto& bnd = res.boundary[s];
    const auto& psl = res.frees[s - 1];
    for (std::size_t t = 0; t < tp.size(); ++t) {
        int dt = tp[t].shift;
        require(dt >= bnd.lo && dt <= bnd.hi, "tor_step: boundary column outside its window");
        const auto& col = bnd.block_at(dt);
        const auto& slots = psl.slots[dt - psl.mod.lo];
        for (std::size_t row = 0; row < slots.size(); ++row) {
            auto c = col.at(row, (std::size_t)res.gen_slot(s, (int)t));
            if (f.is_zero(c)) continue;
            auto [u, z] = slots[row];
            int du = up[u].shift;
            auto act = act_elem(x_mod, dt - du, z, d - dt);
            for (std::size_t i = 0; i < rpos[u].size(); ++i)
                for (std::size_t j = 0; j < cpos[t].size(); ++j) {
                    auto& dst = out.at(roff[u] + i, coff[t] + j);
                    dst = f.add(dst, f.mul(c, act.at(rpos[u][i], cpos[t][j])));
                }
        }
    }
    return out;
}

} // namespace detail

/* Ext table of the resolved module against N: entry (s, n) is the
   homology of Hom(P_., N) at stage s in internal degree n. */
template <class F>
BigradedTable ext_table(const ProjResolution<F>& res, const GradedModule<F>& n_mod) {
    require(n_mod.alg.get() == res.alg.get() && n_mod.is_right == res.is_right,
            "ext_table: module is on the wrong side of the algebra");
    BigradedTable out;
    out.smax = res.hmax;
    out.zero_below_certified = n_mod.zero_below;
    out.zero_above_certified = n_mod.zero_above;
    int dlo = INT32_MAX, dhi = INT32_MIN;
    for (int s = 0; s <= res.hmax; ++s) {
        if (res.terms[s].empty()) continue;
        dlo = std::min(dlo, n_mod.lo - res.max_shift(s));
        dhi = std::max(dhi, n_mod.hi - res.min_shift(s));
    }
    if (dlo > dhi) {
        out.dlo = 0;
        out.dhi = -1;
        out.cells.assign(res.hmax + 1, {});
        return out;
    }
    out.dlo = dlo;
    out.dhi = dhi;
    out.cells.assign(res.hmax + 1, std::vector<TableCell>(dhi - dlo + 1));
    // a step's rank serves two neighboring cells; compute it once
    std::vector<std::vector<int>> memo(std::max(0, res.hmax),
                                       std::vector<int>(dhi - dlo + 1, -1));
    auto step_rank = [&](int s, int n) {
        int& r = memo[s][n - dlo];
        if (r < 0) r = (int)rank(detail::ext_step(res, n_mod, s, n));
        return r;
    };
    for (int s = 0; s <= res.hmax; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            TableCell& c = out.cells[s][n - dlo];
            bool self = detail::ext_level_known(res, n_mod, s, n);
            if (!self) {
                c.dim = -1;
                continue;
            }
            int cdim = detail::ext_comp_dim(res, n_mod, s, n);
            if (cdim == 0) {
                c.dim = 0;
                c.certified = true;
                continue;
            }
            bool below = detail::ext_level_known(res, n_mod, s - 1, n);
            bool above = detail::ext_level_known(res, n_mod, s + 1, n);
            if (!below || !above) {
                c.dim = -1;
                continue;
            }
            int rk_in = 0, rk_out = 0;
            if (s > 0) rk_in = step_rank(s - 1, n);
            if (s < res.hmax) rk_out = step_rank(s, n);
            c.dim = cdim - rk_in - rk_out;
            c.certified = true;
        }
    return out;
}

/* Tor table of X (on the opposite side) against the resolved module:
   entry (s, d) is the homology of X (x) P_. at stage s in degree d. */
template <class F>
BigradedTable tor_table(const GradedModule<F>& x_mod, const ProjResolution<F>& res) {
    require(x_mod.is_right != res.is_right, "tor_table: modules on the same side");
    require(x_mod.alg.get() == opposite(res.alg).get(),
            "tor_table: module is over a different algebra");
    BigradedTable out;
    out.smax = res.hmax;
    out.zero_below_certified = x_mod.zero_below;
    out.zero_above_certified = x_mod.zero_above;
    int dlo = INT32_MAX, dhi = INT32_MIN;
    for (int s = 0; s <= res.hmax; ++s) {
        if (res.terms[s].empty()) continue;
        dlo = std::min(dlo, x_mod.lo + res.min_shift(s));
        dhi = std::max(dhi, x_mod.hi + res.max_shift(s));
    }
    if (dlo > dhi) {
        out.dlo = 0;
        out.dhi = -1;
        out.cells.assign(res.hmax + 1, {});
        return out;
    }
    out.dlo = dlo;
    out.dhi = dhi;
    out.cells.assign(res.hmax + 1, std::vector<TableCell>(dhi - dlo + 1));
    // tor_step(s, d) serves the cells at stages s and s - 1; compute once
    std::vector<std::vector<int>> memo(res.hmax + 1, std::vector<int>(dhi - dlo + 1, -1));
    auto step_rank = [&](int s, int d) {
        int& r = memo[s - 1][d - dlo];
        if (r < 0) r = (int)rank(detail::tor_step(res, x_mod, s, d));
        return r;
    };
    for (int s = 0; s <= res.hmax; ++s)
        for (int d = dlo; d <= dhi; ++d) {
            TableCell& c = out.cells[s][d - dlo];
            bool self = detail::tor_level_known(res, x_mod, s, d);
            if (!self) {
                c.dim = -1;
                continue;
            }
            int cdim = detail::tor_comp_dim(res, x_mod, s, d);
            if (cdim == 0) {
                c.dim = 0;
                c.certified = true;
                continue;
            }
            bool below = detail::tor_level_known(res, x_mod, s - 1, d);
            bool above = detail::tor_level_known(res, x_mod, s + 1, d);
            if (!below || !above) {
                c.dim = -1;
                continue;
            }
            int rk_out = 0, rk_in = 0;
            if (s > 0) rk_out = step_rank(s, d);
            if (s < res.hmax) rk_in = step_rank(s + 1, d);
            c.dim = cdim - rk_out - rk_in;
            c.certified = true;
        }
    return out;
}

/* Degree-wise identity between the dual of Hom(M, X) and D(X) (x) M,
   checked on every certified degree of the tensor side. Meaningful for
   finite-length M, where the hom spaces are pinned exactly. */
template <class F>
bool check_dual_hom_tensor_identity(const GradedModule<F>& m, const GradedModule<F>& x) {
    auto res = minimal_resolution(m, 1);
    auto t = tor_table(dual_module(x), res);
    bool any = false, ok = true;
    for (int j = t.dlo - 1; j <= t.dhi + 1; ++j) {
        if (!t.certified(0, j)) continue;
        any = true;
        ok &= (int)hom_space(m, x, -j).size() == t.dim(0, j);
    }
    return ok && any;
}

/* Degree-wise identity between Ext^s(X, Y) and the dual of
   Tor_s(D(Y), X), checked wherever both tables are certified. */
template <class F>
bool check_ext_tor_duality(const GradedModule<F>& x, const GradedModule<F>& y, int hmax) {
    auto res = minimal_resolution(x, hmax);
    auto e = ext_table(res, y);
    auto t = tor_table(dual_module(y), res);
    bool any = false, ok = true;
    for (int s = 0; s <= hmax; ++s)
        for (int d = std::min(e.dlo, -t.dhi) - 1; d <= std::max(e.dhi, -t.dlo) + 1; ++d) {
            if (!e.certified(s, d) || !t.certified(s, -d)) continue;
            any = true;
            ok &= e.dim(s, d) == t.dim(s, -d);
        }
    return ok && any;
}

} // namespace gha
