#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gha/algebra.hpp"
#include "gha/matrix.hpp"
#include "gha/rng.hpp"

namespace gha {

/* Graded modules carry an explicit validity window [lo, hi]: components
   are materialized exactly there. zero_below / zero_above promise that
   everything outside the window on that side vanishes; without the
   promise, out-of-window queries are contract errors, never silent
   zeros. Right modules are stored as left modules over the opposite
   algebra, with is_right recording the interpretation. */

template <class F>
struct GradedModule {
    AlgPtr<F> alg; // the acting algebra (already the opposite for right modules)
    bool is_right = false;
    int lo = 0, hi = -1;
    bool zero_below = true, zero_above = false;
    std::vector<std::vector<int>> tags;      // [d - lo] -> vertex tag per slot
    std::vector<std::vector<Matrix<F>>> act; // [d - lo][g] : M_d -> M_{d+1}, d < hi

    bool known(int d) const {
        if (d >= lo && d <= hi) return true;
        return d < lo ? zero_below : zero_above;
    }
    int dim_at(int d) const {
        if (d >= lo && d <= hi) return (int)tags[d - lo].size();
        require(known(d), "module component queried outside the validity window");
        return 0;
    }
    static const std::vector<int>& no_tags() {
        static const std::vector<int> e;
        return e;
    }
    const std::vector<int>& tags_at(int d) const {
        if (d >= lo && d <= hi) return tags[d - lo];
        require(known(d), "module tags queried outside the validity window");
        return no_tags();
    }
    /* Action of degree-1 generator g as a matrix M_d -> M_{d+1}. */
    Matrix<F> action(int g, int d) const {
        require(known(d) && known(d + 1), "module action queried outside the validity window");
        if (d >= lo && d < hi) return act[d - lo][g];
        return Matrix<F>(alg->field, (std::size_t)dim_at(d + 1), (std::size_t)dim_at(d));
    }
    int gens() const { return alg->dim(1); }
};

template <class F>
std::vector<int> vertex_dims(const GradedModule<F>& m, int d) {
    std::vector<int> out(m.alg->m, 0);
    for (int t : m.tags_at(d)) ++out[t];
    return out;
}

/* Action of an arbitrary-degree algebra basis element x (degree l) on
   the component M_d, expanded through the degree-1 section. */
template <class F>
Matrix<F> act_elem(const GradedModule<F>& m, int l, int x, int d) {
    const F& f = m.alg->field;
    if (l == 0) {
        Matrix<F> p(f, (std::size_t)m.dim_at(d), (std::size_t)m.dim_at(d));
        const auto& tg = m.tags_at(d);
        for (std::size_t i = 0; i < tg.size(); ++i)
            if (tg[i] == x) p.at(i, i) = f.one();
        return p;
    }
    if (l == 1) return m.action(x, d);
    require(m.alg->degree1_generated, "act_elem: algebra has no degree-1 section");
    Matrix<F> out(f, (std::size_t)m.dim_at(d + l), (std::size_t)m.dim_at(d));
    for (auto& t : m.alg->section[l][x]) {
        auto part = matmul(m.action(t.g, d + l - 1), act_elem(m, l - 1, t.v, d));
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(t.c, part.at(i, j)));
    }
    return out;
}

template <class F>
GradedModule<F> simple_module(const AlgPtr<F>& a, int i) {
    require(i >= 0 && i < a->m, "simple_module: vertex out of range");
    GradedModule<F> m;
    m.alg = a;
    m.lo = 0;
    m.hi = 0;
    m.zero_below = m.zero_above = true;
    m.tags = {{i}};
    m.act = {};
    return m;
}

struct FreeSummand {
    int vertex = 0;
    int shift = 0; // generator sits in this internal degree
};

template <class F>
struct FreeModule {
    std::vector<FreeSummand> summands;
    GradedModule<F> mod;
    // slots[d - mod.lo][k] = (summand, algebra basis index in degree d - shift)
    std::vector<std::vector<std::pair<int, int>>> slots;
};

/* Materialize the free module ⊕_t Q_{vertex_t}[-shift_t] over the given
   acting algebra; is_right only records the interpretation. Callers that
   start from the original algebra of a right module go through make_free,
   which substitutes the opposite first. */
template <class F>
FreeModule<F> make_free_acting(const AlgPtr<F>& aa, const std::vector<FreeSummand>& summands,
                               bool is_right) {
    FreeModule<F> out;
    out.summands = summands;
    out.mod.alg = aa;
    out.mod.is_right = is_right;
    if (summands.empty()) {
        out.mod.lo = 0;
        out.mod.hi = aa->dmax;
        out.mod.zero_below = out.mod.zero_above = true;
        out.mod.tags.assign(aa->dmax + 1, {});
        out.slots.assign(aa->dmax + 1, {});
        out.mod.act.assign(aa->dmax, std::vector<Matrix<F>>(aa->dim(1), Matrix<F>()));
        for (int d = 0; d < aa->dmax; ++d)
            for (int g = 0; g < aa->dim(1); ++g)
                out.mod.act[d][g] = Matrix<F>(aa->field, 0, 0);
        return out;
    }
    int lo = summands[0].shift, hi = summands[0].shift + aa->dmax;
    for (auto& s : summands) {
        require(s.vertex >= 0 && s.vertex < aa->m, "make_free: vertex out of range");
        lo = std::min(lo, s.shift);
        hi = std::min(hi, s.shift + aa->dmax);
    }
    out.mod.lo = lo;
    out.mod.hi = hi;
    out.mod.zero_below = true;
    out.mod.zero_above = aa->finite_sharp;
    int span = hi - lo + 1;
    out.mod.tags.assign(span, {});
    out.slots.assign(span, {});
    // abpos[t][d - lo]: algebra basis index -> slot offset within block t
    std::vector<std::vector<std::vector<int>>> abpos(summands.size());
    for (std::size_t t = 0; t < summands.size(); ++t) {
        abpos[t].assign(span, {});
        for (int d = lo; d <= hi; ++d) {
            int ad = d - summands[t].shift;
            if (ad < 0 || ad > aa->dmax) continue;
            abpos[t][d - lo].assign(aa->dim(ad), -1);
            for (int x = 0; x < aa->dim(ad); ++x)
                if (aa->basis[ad][x].rv == summands[t].vertex) {
                    abpos[t][d - lo][x] = (int)out.mod.tags[d - lo].size();
                    out.mod.tags[d - lo].push_back(aa->basis[ad][x].lv);
                    out.slots[d - lo].push_back({(int)t, x});
                }
        }
    }
    const F& f = aa->field;
    out.mod.act.assign(span - 1 >= 0 ? span - 1 : 0, {});
    for (int d = lo; d < hi; ++d) {
        out.mod.act[d - lo].assign(aa->dim(1), Matrix<F>());
        for (int g = 0; g < aa->dim(1); ++g) {
            Matrix<F> mat(f, out.mod.tags[d + 1 - lo].size(), out.mod.tags[d - lo].size());
            for (std::size_t col = 0; col < out.slots[d - lo].size(); ++col) {
                auto [t, x] = out.slots[d - lo][col];
                int ad = d - summands[t].shift;
                if (ad + 1 > aa->dmax) continue; // window already clipped to hi
                if (ad == 0) {
                    // g * e_x is g itself when the tags compose
                    if (aa->basis[1][g].rv == x) mat.at(abpos[t][d + 1 - lo][g], col) = f.one();
                    continue;
                }
                for (auto& [z, c] : aa->left_mult(g, ad, x)) {
                    int row = abpos[t][d + 1 - lo][z];
                    mat.at(row, col) = c;
                }
            }
            out.mod.act[d - lo][g] = std::move(mat);
        }
    }
    return out;
}

/* Free module over a, with the opposite acting when is_right: the
   summands are then e_vertex * A shifted. */
template <class F>
FreeModule<F> make_free(const AlgPtr<F>& a, const std::vector<FreeSummand>& summands,
                        bool is_right) {
    return make_free_acting(is_right ? opposite(a) : a, summands, is_right);
}

template <class F>
GradedModule<F> projective_module(const AlgPtr<F>& a, int i) {
    require(i >= 0 && i < a->m, "projective_module: vertex out of range");
    return make_free(a, {{i, 0}}, false).mod;
}

template <class F>
GradedModule<F> shift_module(const GradedModule<F>& m, int n) {
    GradedModule<F> s = m;
    s.lo = m.lo - n;
    s.hi = m.hi - n;
    return s;
}

template <class F>
GradedModule<F> truncate_below(const GradedModule<F>& m, int n) {
    if (n <= m.lo) return m;
    GradedModule<F> t;
    t.alg = m.alg;
    t.is_right = m.is_right;
    t.lo = n;
    t.hi = m.hi;
    t.zero_below = true;
    t.zero_above = m.zero_above;
    if (t.hi < t.lo) return t;
    t.tags.assign(m.tags.begin() + (n - m.lo), m.tags.end());
    if (n - m.lo <= (int)m.act.size())
        t.act.assign(m.act.begin() + (n - m.lo), m.act.end());
    return t;
}

template <class F>
GradedModule<F> truncate_above(const GradedModule<F>& m, int c) {
    if (c >= m.hi && m.zero_above) return m;
    GradedModule<F> t;
    t.alg = m.alg;
    t.is_right = m.is_right;
    t.lo = m.lo;
    t.hi = std::min(m.hi, c);
    t.zero_below = m.zero_below;
    t.zero_above = true;
    if (t.hi < t.lo) {
        t.hi = t.lo - 1;
        return t;
    }
    t.tags.assign(m.tags.begin(), m.tags.begin() + (t.hi - t.lo + 1));
    t.act.assign(m.act.begin(), m.act.begin() + std::max(0, t.hi - t.lo));
    return t;
}

/* Reshape the validity window to [lo, hi]; every target degree must be
   known. Shrinking a side drops its vanishing promise. */
template <class F>
GradedModule<F> refit_window(const GradedModule<F>& m, int lo, int hi) {
    require(lo <= hi, "refit_window: empty target window");
    require(m.known(lo) && m.known(hi), "refit_window: target leaves the known range");
    GradedModule<F> out;
    out.alg = m.alg;
    out.is_right = m.is_right;
    out.lo = lo;
    out.hi = hi;
    out.zero_below = lo <= m.lo ? m.zero_below : false;
    out.zero_above = hi >= m.hi ? m.zero_above : false;
    out.tags.assign((std::size_t)(hi - lo + 1), {});
    for (int d = lo; d <= hi; ++d) out.tags[(std::size_t)(d - lo)] = m.tags_at(d);
    out.act.assign((std::size_t)(hi - lo), {});
    for (int d = lo; d < hi; ++d) {
        auto& row = out.act[(std::size_t)(d - lo)];
        row.reserve((std::size_t)m.gens());
        for (int g = 0; g < m.gens(); ++g) row.push_back(m.action(g, d));
    }
    return out;
}

template <class F>
GradedModule<F> direct_sum(const std::vector<GradedModule<F>>& parts) {
    require(!parts.empty(), "direct_sum: no summands");
    GradedModule<F> s;
    s.alg = parts[0].alg;
    s.is_right = parts[0].is_right;
    int L = parts[0].lo;
    bool all_sharp_above = true, all_sharp_below = true;
    int hmax = parts[0].hi, hmin_unsharp = INT32_MAX;
    for (auto& p : parts) {
        require(p.alg.get() == s.alg.get(), "direct_sum: mixed algebras");
        require(p.is_right == s.is_right, "direct_sum: mixed sides");
        L = std::min(L, p.lo);
        hmax = std::max(hmax, p.hi);
        all_sharp_above &= p.zero_above;
        all_sharp_below &= p.zero_below;
        if (!p.zero_above) hmin_unsharp = std::min(hmin_unsharp, p.hi);
    }
    int H = all_sharp_above ? hmax : std::min(hmax, (int)hmin_unsharp);
    s.lo = L;
    s.hi = H;
    s.zero_below = all_sharp_below;
    s.zero_above = all_sharp_above;
    const F& f = s.alg->field;
    s.tags.assign(H - L + 1, {});
    for (int d = L; d <= H; ++d)
        for (auto& p : parts)
            for (int t : p.tags_at(d)) s.tags[d - L].push_back(t);
    s.act.assign(std::max(0, H - L), {});
    for (int d = L; d < H; ++d) {
        s.act[d - L].assign(s.gens(), Matrix<F>());
        for (int g = 0; g < s.gens(); ++g) {
            Matrix<F> mat(f, s.tags[d + 1 - L].size(), s.tags[d - L].size());
            std::size_t r0 = 0, c0 = 0;
            for (auto& p : parts) {
                auto blockm = p.action(g, d);
                paste(mat, r0, c0, blockm);
                r0 += blockm.rows();
                c0 += blockm.cols();
            }
            s.act[d - L][g] = std::move(mat);
        }
    }
    return s;
}

/* The algebra as a left module over itself, split into projectives. */
template <class F>
GradedModule<F> regular_module(const AlgPtr<F>& a) {
    std::vector<GradedModule<F>> parts;
    for (int i = 0; i < a->m; ++i) parts.push_back(projective_module(a, i));
    return direct_sum(parts);
}

template <class F>
GradedModule<F> algebra_mod_truncation(const AlgPtr<F>& a, int k) {
    require(k >= 1 && k <= a->dmax, "algebra_mod_truncation: k out of range");
    std::vector<GradedModule<F>> parts;
    for (int i = 0; i < a->m; ++i) parts.push_back(projective_module(a, i));
    return truncate_above(direct_sum(parts), k - 1);
}

template <class F>
GradedModule<F> dual_module(const GradedModule<F>& m) {
    GradedModule<F> d;
    d.alg = opposite(m.alg);
    d.is_right = !m.is_right;
    d.lo = -m.hi;
    d.hi = -m.lo;
    d.zero_below = m.zero_above;
    d.zero_above = m.zero_below;
    if (d.hi < d.lo) return d;
    d.tags.assign(d.hi - d.lo + 1, {});
    for (int j = d.lo; j <= d.hi; ++j) d.tags[j - d.lo] = m.tags_at(-j);
    d.act.assign(std::max(0, d.hi - d.lo), {});
    for (int j = d.lo; j < d.hi; ++j) {
        d.act[j - d.lo].assign(d.gens(), Matrix<F>());
        for (int g = 0; g < d.gens(); ++g)
            d.act[j - d.lo][g] = transpose(m.action(g, -j - 1));
    }
    return d;
}

template <class F>
struct GradedMap {
    int degree = 0;
    int lo = 0, hi = -1;             // domain degrees with materialized blocks
    std::vector<Matrix<F>> blocks;   // [d - lo] : M_d -> N_{d + degree}
    const Matrix<F>& block_at(int d) const {
        require(d >= lo && d <= hi, "map block queried outside its window");
        return blocks[d - lo];
    }
};

template <class F>
bool map_commutes(const GradedModule<F>& m, const GradedModule<F>& n, const GradedMap<F>& f) {
    for (int d = f.lo; d < f.hi; ++d) {
        if (!(m.known(d) && m.known(d + 1) && n.known(d + f.degree) && n.known(d + f.degree + 1)))
            continue;
        for (int g = 0; g < m.gens(); ++g) {
            auto lhs = matmul(n.action(g, d + f.degree), f.blocks[d - f.lo]);
            auto rhs = matmul(f.blocks[d + 1 - f.lo], m.action(g, d));
            if (!equal(lhs, rhs)) return false;
        }
    }
    return true;
}

/* Basis of degree-k module maps M -> N: tag-respecting degreewise blocks
   commuting with every generator action. Solved exactly as one linear
   system; the returned maps carry the window on which they are pinned. */
template <class F>
std::vector<GradedMap<F>> hom_space(const GradedModule<F>& m, const GradedModule<F>& n, int k) {
    require(m.alg.get() == n.alg.get() && m.is_right == n.is_right,
            "hom_space: modules over different algebras");
    const F& f = m.alg->field;
    int vlo = std::max(m.lo, n.lo - k), vhi = std::min(m.hi, n.hi - k);
    require(vlo <= vhi || (m.zero_below && m.zero_above) || m.hi < m.lo,
            "hom_space: windows do not overlap");
    // variables: tag-matching entries of each block
    struct Var {
        int d, r, c;
    };
    std::vector<Var> vars;
    std::vector<std::vector<std::vector<int>>> vid; // [d - vlo][r][c] -> var or -1
    for (int d = vlo; d <= vhi; ++d) {
        int mr = n.dim_at(d + k), mc = m.dim_at(d);
        vid.push_back(std::vector<std::vector<int>>(mr, std::vector<int>(mc, -1)));
        for (int r = 0; r < mr; ++r)
            for (int c = 0; c < mc; ++c)
                if (n.tags_at(d + k)[r] == m.tags_at(d)[c]) {
                    vid.back()[r][c] = (int)vars.size();
                    vars.push_back({d, r, c});
                }
    }
    // equations: naturality squares wherever all four corners are known
    std::vector<std::vector<std::pair<int, typename F::Elem>>> rows;
    for (int d = vlo - 1; d <= vhi; ++d) {
        if (!(m.known(d) && m.known(d + 1) && n.known(d + k) && n.known(d + k + 1))) continue;
        bool lowvar = d >= vlo, highvar = d + 1 <= vhi;
        if (!lowvar && !highvar) continue;
        for (int g = 0; g < m.gens(); ++g) {
            auto an = n.action(g, d + k);
            auto am = m.action(g, d);
            // rows indexed by (target row i, source col j):
            // sum_r an(i,r) f_d(r,j) - sum_c f_{d+1}(i,c) am(c,j) = 0
            for (int i = 0; i < n.dim_at(d + k + 1); ++i)
                for (int j = 0; j < m.dim_at(d); ++j) {
                    std::vector<std::pair<int, typename F::Elem>> row;
                    if (lowvar)
                        for (int r = 0; r < n.dim_at(d + k); ++r) {
                            int v = vid[d - vlo][r][j];
                            if (v >= 0 && !f.is_zero(an.at(i, r))) row.push_back({v, an.at(i, r)});
                        }
                    if (highvar)
                        for (int c = 0; c < m.dim_at(d + 1); ++c) {
                            int v = vid[d + 1 - vlo][i][c];
                            if (v >= 0 && !f.is_zero(am.at(c, j)))
                                row.push_back({v, f.neg(am.at(c, j))});
                        }
                    if (!row.empty()) rows.push_back(std::move(row));
                }
        }
    }
    Matrix<F> sys(f, rows.size(), vars.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto& [v, c] : rows[i]) sys.at(i, v) = f.add(sys.at(i, v), c);
    auto kb = kernel_basis(sys);
    std::vector<GradedMap<F>> out;
    for (std::size_t col = 0; col < kb.cols(); ++col) {
        GradedMap<F> g;
        g.degree = k;
        g.lo = vlo;
        g.hi = vhi;
        for (int d = vlo; d <= vhi; ++d)
            g.blocks.push_back(Matrix<F>(f, (std::size_t)n.dim_at(d + k), (std::size_t)m.dim_at(d)));
        for (std::size_t v = 0; v < vars.size(); ++v)
            g.blocks[vars[v].d - vlo].at(vars[v].r, vars[v].c) = kb.at(v, col);
        out.push_back(std::move(g));
    }
    return out;
}

/* Degree-k map out of a free module, pinned by one image column per
   generator: the slot (t, x) column is x acting on gen_images[t].
   Columns are filled degree by degree, each as the degree-1 action of
   the section terms applied to parent columns one degree down, so no
   product of action matrices is ever formed. hi_cap trims the block
   window for callers that only ever read shallow degrees. */
template <class F>
GradedMap<F> map_from_free(const FreeModule<F>& p, const GradedModule<F>& n,
                           const std::vector<Matrix<F>>& gen_images, int k,
                           int hi_cap = INT32_MAX) {
    require(gen_images.size() == p.summands.size(), "map_from_free: one image per generator");
    const F& f = n.alg->field;
    GradedMap<F> out;
    out.degree = k;
    out.lo = p.mod.lo;
    // blocks extend as far as every target degree up to d + k is known,
    // including known-zero tails beyond the stored window
    out.hi = out.lo - 1;
    while (out.hi + 1 <= p.mod.hi && out.hi + 1 <= hi_cap && n.known(out.hi + 1 + k)) ++out.hi;
    std::map<std::pair<int, int>, std::size_t> below; // (t, x) -> column one degree down
    for (int d = out.lo; d <= out.hi; ++d) {
        const auto& slots = p.slots[d - p.mod.lo];
        Matrix<F> blockm(f, (std::size_t)n.dim_at(d + k), (std::size_t)p.mod.dim_at(d));
        const Matrix<F>* prevblk = out.blocks.empty() ? nullptr : &out.blocks.back();
        std::map<std::pair<int, int>, std::size_t> here;
        std::vector<std::optional<Matrix<F>>> acts((std::size_t)n.gens());
        auto act_of = [&](int g) -> const Matrix<F>& {
            auto& slot = acts[(std::size_t)g];
            if (!slot) slot = n.action(g, d - 1 + k);
            return *slot;
        };
        auto parent = [&](int t, int x) {
            auto it = below.find({t, x});
            require(it != below.end(), "map_from_free: parent slot missing");
            return it->second;
        };
        // column += c * (g acting on the parent column)
        auto accumulate = [&](std::size_t col, int g, std::size_t pcol,
                              const typename F::Elem& c) {
            const auto& am = act_of(g);
            for (std::size_t r = 0; r < am.rows(); ++r) {
                auto s = f.zero();
                for (std::size_t q = 0; q < am.cols(); ++q)
                    s = f.add(s, f.mul(am.at(r, q), prevblk->at(q, pcol)));
                blockm.at(r, col) = f.add(blockm.at(r, col), f.mul(c, s));
            }
        };
        for (std::size_t col = 0; col < slots.size(); ++col) {
            auto [t, x] = slots[col];
            here[{t, x}] = col;
            int l = d - p.summands[t].shift;
            if (l == 0) {
                // e_vertex * image: components at other vertices drop
                require(gen_images[t].rows() == blockm.rows() && gen_images[t].cols() == 1,
                        "map_from_free: generator image has the wrong degree");
                const auto& tg = n.tags_at(d + k);
                for (std::size_t r = 0; r < blockm.rows(); ++r)
                    if (tg[r] == x) blockm.at(r, col) = gen_images[t].at(r, 0);
            } else if (l == 1) {
                accumulate(col, x, parent(t, p.summands[t].vertex), f.one());
            } else {
                require(n.alg->degree1_generated, "map_from_free: algebra has no degree-1 section");
                for (const auto& tm : n.alg->section[l][x])
                    accumulate(col, tm.g, parent(t, tm.v), tm.c);
            }
        }
        here.swap(below);
        out.blocks.push_back(std::move(blockm));
    }
    return out;
}

template <class F>
struct SubmoduleResult {
    GradedModule<F> mod;
    std::vector<Matrix<F>> embed; // [d - mod.lo]: columns in ambient coordinates
};

/* Submodule spanned per degree by the given column spans. Every span
   column is split into its vertex components first, so the chosen basis
   is tag-pure; spans must already be action-closed. */
template <class F>
SubmoduleResult<F> submodule_of(const GradedModule<F>& m, const std::vector<Matrix<F>>& spans) {
    const F& f = m.alg->field;
    SubmoduleResult<F> out;
    out.mod.alg = m.alg;
    out.mod.is_right = m.is_right;
    out.mod.lo = m.lo;
    out.mod.hi = m.hi;
    out.mod.zero_below = m.zero_below;
    out.mod.zero_above = m.zero_above;
    int span = m.hi - m.lo + 1;
    if (span <= 0) return out;
    out.mod.tags.assign(span, {});
    out.embed.assign(span, Matrix<F>());
    for (int d = m.lo; d <= m.hi; ++d) {
        const auto& tg = m.tags_at(d);
        // vertex-split columns, vertex-major order
        std::vector<std::vector<typename F::Elem>> cols;
        std::vector<int> coltag;
        for (int v = 0; v < m.alg->m; ++v)
            for (std::size_t j = 0; j < spans[d - m.lo].cols(); ++j) {
                std::vector<typename F::Elem> c((std::size_t)m.dim_at(d), f.zero());
                bool nz = false;
                for (int r = 0; r < m.dim_at(d); ++r)
                    if (tg[r] == v && !f.is_zero(spans[d - m.lo].at(r, j))) {
                        c[r] = spans[d - m.lo].at(r, j);
                        nz = true;
                    }
                if (nz) {
                    cols.push_back(std::move(c));
                    coltag.push_back(v);
                }
            }
        Matrix<F> w(f, (std::size_t)m.dim_at(d), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (int r = 0; r < m.dim_at(d); ++r) w.at(r, j) = cols[j][r];
        auto rr = rref(w);
        out.embed[d - m.lo] = columns(w, rr.pivots);
        for (auto p : rr.pivots) out.mod.tags[d - m.lo].push_back(coltag[p]);
    }
    out.mod.act.assign(std::max(0, span - 1), {});
    for (int d = m.lo; d < m.hi; ++d) {
        out.mod.act[d - m.lo].assign(m.gens(), Matrix<F>());
        for (int g = 0; g < m.gens(); ++g) {
            auto img = matmul(m.action(g, d), out.embed[d - m.lo]);
            auto sol = solve(out.embed[d + 1 - m.lo], img);
            require(sol.has_value(), "submodule_of: spans are not action-closed");
            out.mod.act[d - m.lo][g] = std::move(*sol);
        }
    }
    return out;
}

/* Close the given seed spans under all generator actions, sweeping
   upward through the window, then take the spanned submodule. */
template <class F>
SubmoduleResult<F> generated_submodule(const GradedModule<F>& m,
                                       const std::vector<Matrix<F>>& seeds) {
    std::vector<Matrix<F>> spans = seeds;
    for (int d = m.lo; d < m.hi; ++d) {
        Matrix<F> nxt = spans[d + 1 - m.lo];
        for (int g = 0; g < m.gens(); ++g)
            nxt = hstack(nxt, matmul(m.action(g, d), spans[d - m.lo]));
        spans[d + 1 - m.lo] = std::move(nxt);
    }
    return submodule_of(m, spans);
}

template <class F>
struct QuotientResult {
    GradedModule<F> mod;
    std::vector<Matrix<F>> project;        // [d]: ambient -> quotient coordinates
    std::vector<std::vector<int>> rep_slots; // ambient slot representing each basis vector
};

/* Quotient of M by an embedded submodule. The quotient basis is the
   canonical unit-vector complement of the embedding, so its slots keep
   honest vertex tags; project kills the submodule. */
template <class F>
QuotientResult<F> quotient_module(const GradedModule<F>& m, const std::vector<Matrix<F>>& embed) {
    const F& f = m.alg->field;
    QuotientResult<F> out;
    out.mod.alg = m.alg;
    out.mod.is_right = m.is_right;
    out.mod.lo = m.lo;
    out.mod.hi = m.hi;
    out.mod.zero_below = m.zero_below;
    out.mod.zero_above = m.zero_above;
    int span = m.hi - m.lo + 1;
    if (span <= 0) return out;
    out.mod.tags.assign(span, {});
    out.project.assign(span, Matrix<F>());
    out.rep_slots.assign(span, {});
    for (int d = m.lo; d <= m.hi; ++d) {
        int n = m.dim_at(d);
        const auto& b = embed[d - m.lo];
        require((int)b.rows() == n, "quotient_module: embedding shape mismatch");
        auto rr = rref(hstack(b, Matrix<F>::identity(f, n)));
        std::vector<std::size_t> reps;
        for (auto p : rr.pivots)
            if (p >= b.cols()) reps.push_back(p - b.cols());
        for (auto r : reps) {
            out.rep_slots[d - m.lo].push_back((int)r);
            out.mod.tags[d - m.lo].push_back(m.tags_at(d)[r]);
        }
        // inverse of [b | unit reps]: bottom rows give the projection
        Matrix<F> basis(f, n, n);
        paste(basis, 0, 0, b);
        for (std::size_t j = 0; j < reps.size(); ++j) basis.at(reps[j], b.cols() + j) = f.one();
        auto invb = solve(basis, Matrix<F>::identity(f, n));
        require(invb.has_value(), "quotient_module: embedding columns are dependent");
        out.project[d - m.lo] = block(*invb, b.cols(), 0, reps.size(), n);
    }
    out.mod.act.assign(std::max(0, span - 1), {});
    for (int d = m.lo; d < m.hi; ++d) {
        out.mod.act[d - m.lo].assign(m.gens(), Matrix<F>());
        for (int g = 0; g < m.gens(); ++g) {
            Matrix<F> incl(f, (std::size_t)m.dim_at(d), out.rep_slots[d - m.lo].size());
            for (std::size_t j = 0; j < out.rep_slots[d - m.lo].size(); ++j)
                incl.at(out.rep_slots[d - m.lo][j], j) = f.one();
            out.mod.act[d - m.lo][g] =
                matmul(out.project[d + 1 - m.lo], matmul(m.action(g, d), incl));
        }
    }
    return out;
}

template <class F>
GradedModule<F> radical_module(const GradedModule<F>& m) {
    const F& f = m.alg->field;
    std::vector<Matrix<F>> spans;
    for (int d = m.lo; d <= m.hi; ++d) {
        Matrix<F> s(f, (std::size_t)m.dim_at(d), 0);
        if (d > m.lo || (m.zero_below && m.known(d - 1)))
            for (int g = 0; g < m.gens(); ++g) s = hstack(s, m.action(g, d - 1));
        spans.push_back(std::move(s));
    }
    return submodule_of(m, spans).mod;
}

template <class F>
GradedModule<F> top_module(const GradedModule<F>& m) {
    const F& f = m.alg->field;
    std::vector<Matrix<F>> spans;
    for (int d = m.lo; d <= m.hi; ++d) {
        Matrix<F> s(f, (std::size_t)m.dim_at(d), 0);
        if (d > m.lo || (m.zero_below && m.known(d - 1)))
            for (int g = 0; g < m.gens(); ++g) s = hstack(s, m.action(g, d - 1));
        spans.push_back(std::move(s));
    }
    auto rad = submodule_of(m, spans);
    return quotient_module(m, rad.embed).mod;
}

/* Structural audit: tag-respecting action blocks, plus every kernel
   vector of the word multiplication map acting as zero wherever the
   whole composition track lies in the window. */
template <class F>
void validate_module(const GradedModule<F>& m, int word_len_max) {
    const F& f = m.alg->field;
    for (int d = m.lo; d < m.hi; ++d)
        for (int g = 0; g < m.gens(); ++g) {
            const auto& a = m.act[d - m.lo][g];
            require((int)a.rows() == m.dim_at(d + 1) && (int)a.cols() == m.dim_at(d),
                    "validate_module: action shape mismatch");
            int lv = m.alg->basis[1][g].lv, rv = m.alg->basis[1][g].rv;
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (std::size_t c = 0; c < a.cols(); ++c)
                    if (!f.is_zero(a.at(r, c)))
                        require(m.tags_at(d + 1)[r] == lv && m.tags_at(d)[c] == rv,
                                "validate_module: action violates vertex tags");
        }
    int n1 = m.gens();
    for (int l = 2; l <= std::min(word_len_max, m.alg->dmax); ++l) {
        auto rels = m.alg->word_relations(l);
        for (int d = m.lo; d + l <= m.hi; ++d) {
            for (auto& rel : rels) {
                Matrix<F> acc(f, (std::size_t)m.dim_at(d + l), (std::size_t)m.dim_at(d));
                for (auto& [word, coef] : rel) {
                    std::vector<int> gs(l);
                    int w = word;
                    for (int t = 0; t < l; ++t) {
                        gs[t] = w % n1;
                        w /= n1;
                    }
                    Matrix<F> chain = m.action(gs[l - 1], d);
                    for (int t = l - 2; t >= 0; --t)
                        chain = matmul(m.action(gs[t], d + l - 1 - t), chain);
                    for (std::size_t r = 0; r < acc.rows(); ++r)
                        for (std::size_t c = 0; c < acc.cols(); ++c)
                            acc.at(r, c) = f.add(acc.at(r, c), f.mul(coef, chain.at(r, c)));
                }
                require(is_zero(acc), "validate_module: a word relation acts nonzero");
            }
        }
    }
}

/* Deterministic finite-length sample: a quotient of a small shifted free
   module by a randomly generated submodule, truncated above. Retries
   with the same stream until the total dimension lands in [1, max_total]. */
template <class F>
GradedModule<F> random_finite_module(const AlgPtr<F>& a, uint64_t seed, int max_total,
                                     int cutoff) {
    require(a->degree1_generated, "random_finite_module: algebra has no degree-1 section");
    const F& f = a->field;
    SplitMix rng(seed * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull);
    for (int attempt = 0; attempt < 64; ++attempt) {
        int nsum = 1 + (int)rng.below(2);
        std::vector<FreeSummand> summands;
        for (int t = 0; t < nsum; ++t)
            summands.push_back({(int)rng.below((uint64_t)a->m), (int)rng.below(2)});
        auto free = make_free(a, summands, false);
        auto p = truncate_above(free.mod, cutoff);
        if (p.hi < p.lo) continue;
        std::vector<Matrix<F>> seeds;
        for (int d = p.lo; d <= p.hi; ++d)
            seeds.push_back(Matrix<F>(f, (std::size_t)p.dim_at(d), 0));
        int nseeds = 1 + (int)rng.below(3);
        for (int t = 0; t < nseeds; ++t) {
            int d = p.lo + 1 + (int)rng.below((uint64_t)std::max(1, p.hi - p.lo));
            if (d > p.hi) continue;
            Matrix<F> v(f, (std::size_t)p.dim_at(d), 1);
            for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, 0) = f.from_long(rng.centered(3));
            seeds[d - p.lo] = hstack(seeds[d - p.lo], v);
        }
        auto sub = generated_submodule(p, seeds);
        auto quo = quotient_module(p, sub.embed);
        int total = 0;
        for (int d = quo.mod.lo; d <= quo.mod.hi; ++d) total += quo.mod.dim_at(d);
        if (total >= 1 && total <= max_total) return quo.mod;
    }
    throw contract_error("random_finite_module: no sample within the dimension cap");
}

/* Kernel of a degree-k map as a submodule of its source. */
template <class F>
SubmoduleResult<F> kernel_submodule(const GradedModule<F>& m, const GradedModule<F>& n,
                                    const GradedMap<F>& fmap) {
    GradedModule<F> clipped = m;
    // restrict to the window where the map is pinned
    clipped = truncate_above(clipped, fmap.hi);
    require(fmap.lo <= m.lo || (m.zero_below && fmap.lo <= m.lo),
            "kernel_submodule: map window does not cover the source");
    std::vector<Matrix<F>> spans;
    for (int d = clipped.lo; d <= clipped.hi; ++d)
        spans.push_back(kernel_basis(fmap.block_at(d)));
    auto out = submodule_of(clipped, spans);
    out.mod.zero_above = m.zero_above && fmap.hi >= m.hi;
    return out;
}

} // namespace gha
