#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gha/module.hpp"

namespace gha {

/* Minimal graded projective resolution P_hmax -> ... -> P_0 -> M.
   Every P_s is recorded as its summand list (vertex, shift); the
   multiplicity tables are complete for shifts inside the syzygy windows,
   which shrink predictably with s. Syzygies are re-presented as abstract
   modules with their own canonical bases, never as subspace inclusions. */
template <class F>
struct ProjResolution {
    AlgPtr<F> alg; // acting algebra of the terms (already the opposite for right modules)
    bool is_right = false;
    int hmax = 0;
    GradedModule<F> module;
    std::vector<std::vector<FreeSummand>> terms;
    std::vector<FreeModule<F>> frees;
    std::vector<GradedMap<F>> boundary; // [s], s >= 1: P_s -> P_{s-1}; [0] unused
    GradedMap<F> augment;               // P_0 -> M
    std::vector<std::vector<int>> gen_slots; // [s][t]: slot of generator t at its shift
    int terminated_at = -1; // first level with a provably zero syzygy behind it

    int gen_slot(int s, int t) const { return gen_slots[s][t]; }
    // true when every term past hmax is known to vanish
    bool tail_empty() const { return terminated_at >= 0; }
    int max_shift(int s) const {
        int out = INT32_MIN;
        for (auto& t : terms[s]) out = std::max(out, t.shift);
        return out;
    }
    int min_shift(int s) const {
        int out = INT32_MAX;
        for (auto& t : terms[s]) out = std::min(out, t.shift);
        return out;
    }
};

template <class F>
ProjResolution<F> minimal_resolution(const GradedModule<F>& M, int hmax) {
    require(hmax >= 0, "minimal_resolution: negative length");
    require(M.zero_below, "minimal_resolution: module must be bounded below");
    require(M.hi >= M.lo || M.zero_above,
            "minimal_resolution: empty window with no vanishing promise");
    const F& f = M.alg->field;
    ProjResolution<F> res;
    res.alg = M.alg;
    res.is_right = M.is_right;
    res.hmax = hmax;
    res.module = M;
    GradedModule<F> cur = M;               // current syzygy in its own coordinates
    std::vector<Matrix<F>> prev_embed;     // embedding of cur into P_{s-1}
    for (int s = 0; s <= hmax; ++s) {
        // generators of cur = a basis of its top, one summand per basis vector
        std::vector<FreeSummand> summands;
        std::vector<Matrix<F>> gen_images;
        if (cur.hi >= cur.lo) {
            std::vector<Matrix<F>> spans;
            for (int d = cur.lo; d <= cur.hi; ++d) {
                Matrix<F> sp(f, (std::size_t)cur.dim_at(d), 0);
                if (d > cur.lo)
                    for (int g = 0; g < cur.gens(); ++g) sp = hstack(sp, cur.action(g, d - 1));
                spans.push_back(std::move(sp));
            }
            auto rad = submodule_of(cur, spans);
            auto quo = quotient_module(cur, rad.embed);
            for (int d = quo.mod.lo; d <= quo.mod.hi; ++d) {
                const auto& tg = quo.mod.tags_at(d);
                for (std::size_t j = 0; j < tg.size(); ++j) {
                    summands.push_back({tg[j], d});
                    Matrix<F> img(f, (std::size_t)cur.dim_at(d), 1);
                    img.at((std::size_t)quo.rep_slots[d - quo.mod.lo][j], 0) = f.one();
                    gen_images.push_back(std::move(img));
                }
            }
        }
        auto free = make_free_acting(res.alg, summands, res.is_right);
        std::vector<int> gs;
        for (std::size_t t = 0; t < summands.size(); ++t) {
            int d = summands[t].shift;
            const auto& sl = free.slots[d - free.mod.lo];
            int pos = -1;
            for (std::size_t j = 0; j < sl.size(); ++j)
                if (sl[j].first == (int)t && sl[j].second == summands[t].vertex) pos = (int)j;
            require(pos >= 0, "minimal_resolution: generator slot not found");
            gs.push_back(pos);
        }
        auto cover = map_from_free(free, cur, gen_images, 0);
        if (s == 0) {
            res.augment = cover;
            res.boundary.push_back(GradedMap<F>{}); // placeholder for index 0
        } else {
            // boundary = embedding of cur into P_{s-1} after the cover
            const auto& prev = res.frees[s - 1].mod;
            GradedMap<F> b;
            b.degree = 0;
            b.lo = free.mod.lo;
            b.hi = std::min(cover.hi, prev.hi);
            if (!cur.zero_above) b.hi = std::min(b.hi, cur.hi);
            for (int d = b.lo; d <= b.hi; ++d) {
                Matrix<F> emb = d >= cur.lo && d <= cur.hi
                                    ? prev_embed[d - cur.lo]
                                    : Matrix<F>(f, (std::size_t)prev.dim_at(d), 0);
                b.blocks.push_back(matmul(emb, cover.block_at(d)));
            }
            res.boundary.push_back(std::move(b));
        }
        auto ker = kernel_submodule(free.mod, cur, cover);
        res.terms.push_back(std::move(summands));
        res.frees.push_back(std::move(free));
        res.gen_slots.push_back(std::move(gs));
        if (res.terminated_at < 0 && ker.mod.zero_above) {
            bool zero = true;
            for (int d = ker.mod.lo; d <= ker.mod.hi; ++d) zero &= ker.mod.dim_at(d) == 0;
            if (zero) res.terminated_at = s + 1;
        }
        cur = std::move(ker.mod);
        prev_embed = std::move(ker.embed);
    }
    return res;
}

/* Chain map phi_s: P_s(src) -> P_s(tgt), s = 0..up_to, lifting the
   degree-0 module map f: src.module -> tgt.module through both
   resolutions. Each generator image solves against the target boundary
   (the augmentation at stage 0); exactness of the target on the touched
   degrees makes the solves consistent. hi_cap trims the materialized
   blocks; anything covering the source generator degrees is enough for
   consumers that only evaluate the map on generators. */
template <class F>
std::vector<GradedMap<F>> lift_chain_map(const ProjResolution<F>& src,
                                         const ProjResolution<F>& tgt, const GradedMap<F>& f,
                                         int up_to, int hi_cap = INT32_MAX) {
    require(src.alg.get() == tgt.alg.get() && src.is_right == tgt.is_right,
            "lift_chain_map: resolutions are not over the same setting");
    require(f.degree == 0, "lift_chain_map: the lifted map must have degree zero");
    require(up_to >= 0 && up_to <= src.hmax && up_to <= tgt.hmax,
            "lift_chain_map: stage outside one of the resolutions");
    std::vector<GradedMap<F>> out;
    out.reserve((std::size_t)up_to + 1);
    for (int s = 0; s <= up_to; ++s) {
        // generators sharing an internal degree solve against the same
        // target block, so batch them into one system per degree
        std::map<int, std::vector<std::size_t>> gens_by_degree;
        for (std::size_t u = 0; u < src.terms[s].size(); ++u)
            gens_by_degree[src.terms[s][u].shift].push_back(u);
        std::vector<Matrix<F>> images(src.terms[s].size());
        for (const auto& [du, us] : gens_by_degree) {
            const auto& down = s == 0 ? src.augment : src.boundary[s];
            std::vector<std::size_t> cols;
            cols.reserve(us.size());
            for (auto u : us) cols.push_back((std::size_t)src.gen_slot(s, (int)u));
            auto y = columns(down.block_at(du), cols);
            auto w = s == 0 ? matmul(f.block_at(du), y)
                            : matmul(out[(std::size_t)s - 1].block_at(du), y);
            const auto& amat =
                s == 0 ? tgt.augment.block_at(du) : tgt.boundary[s].block_at(du);
            auto x = solve(amat, w);
            require(x.has_value(), "lift_chain_map: the target resolution is not exact here");
            for (std::size_t j = 0; j < us.size(); ++j)
                images[us[j]] = block(*x, 0, j, x->rows(), 1);
        }
        out.push_back(map_from_free(src.frees[s], tgt.frees[s].mod, images, 0, hi_cap));
    }
    return out;
}

/* The rigid dual complex C^s = Hom(P_s, A): right free modules over the
   opposite algebra, with summand (i, d) of P_s contributing e_i A [d].
   The cochain maps transpose the boundaries through the slot pairing. */
template <class F>
struct DualComplex {
    AlgPtr<F> alg; // acting algebra of the terms (opposite of the resolution's)
    bool is_right = false;
    int hmax = 0;
    bool tail_empty = false;
    std::vector<std::vector<FreeSummand>> terms;
    std::vector<FreeModule<F>> frees;
    std::vector<GradedMap<F>> delta; // [s]: C^s -> C^{s+1}, s < hmax
};

template <class F>
DualComplex<F> rigid_dual_complex(const ProjResolution<F>& res) {
    const F& f = res.alg->field;
    DualComplex<F> dc;
    dc.alg = opposite(res.alg);
    dc.is_right = !res.is_right;
    dc.hmax = res.hmax;
    dc.tail_empty = res.tail_empty();
    for (int s = 0; s <= res.hmax; ++s) {
        std::vector<FreeSummand> su;
        for (auto& t : res.terms[s]) su.push_back({t.vertex, -t.shift});
        dc.frees.push_back(make_free_acting(dc.alg, su, dc.is_right));
        dc.terms.push_back(std::move(su));
    }
    for (int s = 0; s < res.hmax; ++s) {
        std::vector<Matrix<F>> gens;
        for (std::size_t t = 0; t < dc.terms[s].size(); ++t) {
            int deg = dc.terms[s][t].shift; // generator of C^s sits at -shift of P_s
            const auto& target = dc.frees[s + 1];
            Matrix<F> img(f, (std::size_t)target.mod.dim_at(deg), 1);
            if (deg >= target.mod.lo && deg <= target.mod.hi) {
                const auto& sl = target.slots[deg - target.mod.lo];
                const auto& bnd = res.boundary[s + 1];
                for (std::size_t pos = 0; pos < sl.size(); ++pos) {
                    auto [u, x] = sl[pos];
                    int du = res.terms[s + 1][u].shift;
                    // coefficient of slot (t, x) in the boundary column of gen u
                    if (res.alg->basis[du - res.terms[s][t].shift][x].rv !=
                        res.terms[s][t].vertex)
                        continue;
                    require(du >= bnd.lo && du <= bnd.hi,
                            "rigid_dual_complex: boundary column outside its window");
                    const auto& col = bnd.block_at(du);
                    const auto& psl = res.frees[s].slots[du - res.frees[s].mod.lo];
                    int row = -1;
                    for (std::size_t j = 0; j < psl.size(); ++j)
                        if (psl[j].first == (int)t && psl[j].second == x) row = (int)j;
                    require(row >= 0, "rigid_dual_complex: paired slot not found");
                    img.at(pos, 0) = col.at((std::size_t)row, (std::size_t)res.gen_slot(s + 1, (int)u));
                }
            }
            gens.push_back(std::move(img));
        }
        dc.delta.push_back(map_from_free(dc.frees[s], dc.frees[s + 1].mod, gens, 0));
    }
    return dc;
}

/* Cohomology of the rigid dual at stage s, as an abstract right module:
   kernel of delta^s modulo the image of delta^{s-1}, both re-presented
   through the canonical submodule and quotient bases. */
template <class F>
GradedModule<F> homology_at(const DualComplex<F>& dc, int s) {
    require(s >= 0 && s <= dc.hmax, "homology_at: stage out of range");
    require(s < dc.hmax || dc.tail_empty, "homology_at: the next term is unknown");
    const F& f = dc.alg->field;
    const auto& C = dc.frees[s].mod;
    SubmoduleResult<F> ker;
    if (s < dc.hmax) {
        ker = kernel_submodule(C, dc.frees[s + 1].mod, dc.delta[s]);
    } else {
        ker.mod = C;
        for (int d = C.lo; d <= C.hi; ++d)
            ker.embed.push_back(Matrix<F>::identity(f, (std::size_t)C.dim_at(d)));
    }
    // image of delta^{s-1} in kernel coordinates; degrees where the image
    // is unknown clip the window instead of being guessed
    int hi = ker.mod.hi;
    if (s > 0) {
        const auto& dm = dc.delta[s - 1];
        const auto& prev = dc.frees[s - 1].mod;
        for (int d = ker.mod.lo; d <= ker.mod.hi; ++d)
            if (!(d >= dm.lo && d <= dm.hi) && !(prev.known(d) && prev.dim_at(d) == 0)) {
                hi = d - 1;
                break;
            }
    }
    GradedModule<F> win = ker.mod;
    if (hi < ker.mod.hi) {
        win.hi = hi;
        win.zero_above = false;
        win.tags.resize((std::size_t)std::max(0, hi - win.lo + 1));
        win.act.resize((std::size_t)std::max(0, hi - win.lo));
    }
    std::vector<Matrix<F>> spans;
    for (int d = win.lo; d <= win.hi; ++d) {
        Matrix<F> sp(f, (std::size_t)win.dim_at(d), 0);
        if (s > 0) {
            const auto& dm = dc.delta[s - 1];
            if (d >= dm.lo && d <= dm.hi) {
                auto sol = solve(ker.embed[d - ker.mod.lo], dm.block_at(d));
                require(sol.has_value(), "homology_at: image escapes the kernel");
                sp = std::move(*sol);
            }
        }
        spans.push_back(std::move(sp));
    }
    auto sub = submodule_of(win, spans);
    return quotient_module(win, sub.embed).mod;
}

} // namespace gha
