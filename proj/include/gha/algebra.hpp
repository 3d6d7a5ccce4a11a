#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gha/matrix.hpp"
#include "gha/quiver.hpp"

namespace gha {

/* A locally finite positively graded algebra, materialized up to a fixed
   degree window [0, dmax]. Degree 0 is spanned by the vertex idempotents.
   Every basis element carries a vertex bigrade (lv, rv): it lies in
   e_lv * A * e_rv, i.e. as a path it runs from rv to lv.

   Products x * y mean "first y then x", so a path [a, b] in traversal
   order equals the product b * a. Full structure constants are kept only
   for degree-1 factors (left1, right1); everything else is recovered
   through the degree-1 section, which expresses each basis element of
   degree l >= 2 as a combination of products (degree 1) * (degree l-1). */

template <class F>
class GradedAlgebra;

template <class F>
using AlgPtr = std::shared_ptr<const GradedAlgebra<F>>;

template <class F>
class GradedAlgebra : public std::enable_shared_from_this<GradedAlgebra<F>> {
public:
    using Elem = typename F::Elem;
    using Sparse = std::vector<std::pair<int, Elem>>;

    struct Slot {
        int lv = 0, rv = 0;
    };
    struct SecTerm {
        int g = 0, v = 0;
        Elem c;
    };

    F field;
    int m = 0;       // vertex count
    int dmax = 0;    // degrees materialized
    bool finite_sharp = false;      // all degrees above dmax are known to vanish
    bool degree1_generated = false; // sections exist for every degree <= dmax
    int top_degree = 0;             // last degree <= dmax with nonzero dim

    std::vector<std::vector<Slot>> basis;     // [d] -> slots
    std::vector<std::vector<Sparse>> left1;   // [e][g * dim(e) + y] = g * y
    std::vector<std::vector<Sparse>> right1;  // [e][y * dim(1) + g] = y * g
    std::vector<std::vector<std::vector<SecTerm>>> section; // [l][x], l >= 2

    mutable AlgPtr<F> op_cache;

    explicit GradedAlgebra(F f) : field(std::move(f)) {}

    int dim(int d) const {
        return (d < 0 || d > dmax) ? 0 : (int)basis[d].size();
    }

    const Sparse& left_mult(int g, int e, int y) const {
        require(e >= 1 && e + 1 <= dmax, "left_mult: degree out of window");
        return left1[e][(std::size_t)g * dim(e) + y];
    }

    const Sparse& right_mult(int e, int y, int g) const {
        require(e >= 1 && e + 1 <= dmax, "right_mult: degree out of window");
        return right1[e][(std::size_t)y * dim(1) + g];
    }

    /* Product of basis elements of arbitrary degrees d, e with d+e <= dmax.
       Degree-0 factors act as idempotent projections; higher left factors
       are expanded through the section. */
    Sparse mult_general(int d, int x, int e, int y) const {
        require(d + e <= dmax, "mult_general: product degree out of window");
        if (d == 0)
            return basis[e][y].lv == x ? Sparse{{y, field.one()}} : Sparse{};
        if (e == 0)
            return basis[d][x].rv == y ? Sparse{{x, field.one()}} : Sparse{};
        if (d == 1) return left1[e][(std::size_t)x * dim(e) + y];
        if (e == 1) return right1[d][(std::size_t)x * dim(1) + y];
        require(!section[d].empty() || dim(d) == 0,
                "mult_general: no degree-1 section available");
        std::map<int, Elem> acc;
        for (auto& t : section[d][x])
            for (auto& [z, c] : mult_general(d - 1, t.v, e, y))
                for (auto& [w, c2] : left1[d - 1 + e][(std::size_t)t.g * dim(d - 1 + e) + z]) {
                    auto& slot = acc.try_emplace(w, field.zero()).first->second;
                    slot = field.add(slot, field.mul(t.c, field.mul(c, c2)));
                }
        Sparse out;
        for (auto& [w, c] : acc)
            if (!field.is_zero(c)) out.push_back({w, c});
        return out;
    }

    /* Kernel of the word multiplication map F1^(tensor l) -> A_l on the
       degree-1 basis. A word (g_0, ..., g_{l-1}) encodes the product
       g_0 * g_1 * ... * g_{l-1} and has index sum_t g_t * dim(1)^t.
       Every kernel vector must annihilate any honest module. */
    std::vector<std::vector<std::pair<int, Elem>>> word_relations(int l) const {
        require(l >= 1 && l <= dmax, "word_relations: length out of window");
        int n1 = dim(1);
        std::size_t words = 1;
        for (int t = 0; t < l; ++t) words *= (std::size_t)n1;
        Matrix<F> w(field, (std::size_t)dim(l), words);
        for (std::size_t idx = 0; idx < words; ++idx) {
            std::vector<int> gs(l);
            std::size_t v = idx;
            for (int t = 0; t < l; ++t) {
                gs[t] = (int)(v % n1);
                v /= n1;
            }
            Sparse cur{{gs[l - 1], field.one()}};
            int deg = 1;
            for (int t = l - 2; t >= 0; --t) {
                std::map<int, Elem> next;
                for (auto& [z, c] : cur)
                    for (auto& [u, c2] : left1[deg][(std::size_t)gs[t] * dim(deg) + z]) {
                        auto& slot = next.try_emplace(u, field.zero()).first->second;
                        slot = field.add(slot, field.mul(c, c2));
                    }
                cur.assign(next.begin(), next.end());
                ++deg;
            }
            for (auto& [z, c] : cur) w.at(z, idx) = c;
        }
        auto k = kernel_basis(w);
        std::vector<std::vector<std::pair<int, Elem>>> out;
        for (std::size_t j = 0; j < k.cols(); ++j) {
            std::vector<std::pair<int, Elem>> rel;
            for (std::size_t i = 0; i < k.rows(); ++i)
                if (!field.is_zero(k.at(i, j))) rel.push_back({(int)i, k.at(i, j)});
            out.push_back(std::move(rel));
        }
        return out;
    }
};

namespace detail {

/* Solve for the canonical degree-1 sections. Returns false when some
   degree is not spanned by (degree 1) * (degree l-1) products. */
template <class F>
bool build_sections(GradedAlgebra<F>& a) {
    const F& f = a.field;
    a.section.assign(a.dmax + 1, {});
    for (int l = 2; l <= a.dmax; ++l) {
        int nl = a.dim(l);
        if (nl == 0) continue;
        int n1 = a.dim(1), nv = a.dim(l - 1);
        Matrix<F> mu(f, (std::size_t)nl, (std::size_t)n1 * nv);
        for (int g = 0; g < n1; ++g)
            for (int v = 0; v < nv; ++v)
                for (auto& [z, c] : a.left1[l - 1][(std::size_t)g * nv + v])
                    mu.at(z, (std::size_t)g * nv + v) = c;
        auto x = solve(mu, Matrix<F>::identity(f, nl));
        if (!x) {
            a.section.assign(a.dmax + 1, {});
            return false;
        }
        a.section[l].resize(nl);
        for (int b = 0; b < nl; ++b)
            for (int g = 0; g < n1; ++g)
                for (int v = 0; v < nv; ++v) {
                    auto& c = x->at((std::size_t)g * nv + v, b);
                    if (!f.is_zero(c))
                        a.section[l][b].push_back({g, v, c});
                }
    }
    return true;
}

template <class F>
void set_top_degree(GradedAlgebra<F>& a) {
    a.top_degree = 0;
    for (int d = 0; d <= a.dmax; ++d)
        if (a.dim(d) > 0) a.top_degree = d;
}

struct Path {
    std::vector<int> tr; // arrow indices, traversal order
    int src = 0, tgt = 0;
};

inline std::vector<std::vector<Path>> enumerate_paths(int m, const std::vector<Arrow>& arrows,
                                                      int dmax) {
    std::vector<std::vector<Path>> paths(dmax + 1);
    for (int i = 0; i < m; ++i) paths[0].push_back({{}, i, i});
    for (int d = 1; d <= dmax; ++d)
        for (auto& p : paths[d - 1])
            for (int a = 0; a < (int)arrows.size(); ++a)
                if (arrows[a].src == p.tgt) {
                    Path q = p;
                    q.tr.push_back(a);
                    q.tgt = arrows[a].tgt;
                    paths[d].push_back(std::move(q));
                }
    return paths;
}

} // namespace detail

/* Build A = kQ / I up to degree dmax. Arrows are sorted by name, paths
   enumerated in length-then-lex order, and in each degree the surviving
   basis is the lex-least complement of the relation span. */
template <class F>
AlgPtr<F> build_algebra(const QuiverPresentation& pres, F field, int dmax) {
    require(dmax >= 1, "build_algebra: dmax must be at least 1");
    validate_presentation(pres);

    // canonical arrow order: sort by name, remap relation indices
    std::vector<int> order(pres.arrows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return pres.arrows[x].name < pres.arrows[y].name;
    });
    std::vector<Arrow> arrows;
    std::vector<int> inv(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        arrows.push_back(pres.arrows[order[i]]);
        inv[order[i]] = (int)i;
    }

    auto a = std::make_shared<GradedAlgebra<F>>(field);
    const F& f = a->field;
    a->m = pres.vertex_count;
    a->dmax = dmax;
    a->basis.assign(dmax + 1, {});
    a->left1.assign(dmax, {});
    a->right1.assign(dmax, {});

    auto paths = detail::enumerate_paths(a->m, arrows, dmax);
    for (int i = 0; i < a->m; ++i) a->basis[0].push_back({i, i});

    // nf[d][path index] = sparse expansion over the degree-d basis
    std::vector<std::vector<typename GradedAlgebra<F>::Sparse>> nf(dmax + 1);
    std::vector<std::map<std::vector<int>, int>> pindex(dmax + 1);
    for (int d = 1; d <= dmax; ++d)
        for (int i = 0; i < (int)paths[d].size(); ++i) pindex[d][paths[d][i].tr] = i;

    std::vector<std::vector<int>> basis_path(dmax + 1); // path index per basis slot

    for (int d = 1; d <= dmax; ++d) {
        int np = (int)paths[d].size();
        // span of the ideal in degree d: every composable embedding
        // prefix ++ relation ++ suffix of total traversal length d
        std::vector<std::vector<std::pair<int, typename F::Elem>>> rows;
        for (auto& rel : pres.relations) {
            int rl = (int)rel.terms[0].arrows.size();
            if (rl > d) continue;
            auto [rsrc, rtgt] = path_endpoints(pres.arrows, rel.terms[0].arrows);
            for (int pl = 0; pl + rl <= d; ++pl) {
                int sl = d - rl - pl;
                for (auto& u : paths[pl]) {
                    if (u.tgt != rsrc) continue;
                    for (auto& w : paths[sl]) {
                        if (w.src != rtgt) continue;
                        std::vector<std::pair<int, typename F::Elem>> row;
                        for (auto& t : rel.terms) {
                            std::vector<int> full = u.tr;
                            for (int ai : t.arrows) full.push_back(inv[ai]);
                            full.insert(full.end(), w.tr.begin(), w.tr.end());
                            row.push_back({pindex[d].at(full), f.ratio(t.num, t.den)});
                        }
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
        Matrix<F> span(f, rows.size(), (std::size_t)np);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (auto& [j, c] : rows[i])
                span.at(i, j) = f.add(span.at(i, j), c);
        auto r = rref(span);
        std::vector<int> pivot_row(np, -1);
        for (std::size_t t = 0; t < r.pivots.size(); ++t) pivot_row[r.pivots[t]] = (int)t;
        std::vector<int> slot_of(np, -1);
        for (int j = 0; j < np; ++j)
            if (pivot_row[j] < 0) {
                slot_of[j] = (int)a->basis[d].size();
                a->basis[d].push_back({paths[d][j].tgt, paths[d][j].src});
                basis_path[d].push_back(j);
            }
        nf[d].resize(np);
        for (int j = 0; j < np; ++j) {
            if (pivot_row[j] < 0) {
                nf[d][j] = {{slot_of[j], f.one()}};
            } else {
                int rr = pivot_row[j];
                for (int c = j + 1; c < np; ++c)
                    if (slot_of[c] >= 0 && !f.is_zero(r.mat.at(rr, c)))
                        nf[d][j].push_back({slot_of[c], f.neg(r.mat.at(rr, c))});
            }
        }
    }

    // degree-1 product tables from concatenation + normal form
    for (int e = 1; e < dmax; ++e) {
        int n1 = a->dim(1), ne = a->dim(e);
        a->left1[e].resize((std::size_t)n1 * ne);
        a->right1[e].resize((std::size_t)ne * n1);
        for (int g = 0; g < n1; ++g) {
            const auto& gp = paths[1][basis_path[1][g]];
            for (int y = 0; y < ne; ++y) {
                const auto& yp = paths[e][basis_path[e][y]];
                // g * y: first y then g
                if (yp.tgt == gp.src) {
                    std::vector<int> full = yp.tr;
                    full.insert(full.end(), gp.tr.begin(), gp.tr.end());
                    a->left1[e][(std::size_t)g * ne + y] = nf[e + 1][pindex[e + 1].at(full)];
                }
                // y * g: first g then y
                if (gp.tgt == yp.src) {
                    std::vector<int> full = gp.tr;
                    full.insert(full.end(), yp.tr.begin(), yp.tr.end());
                    a->right1[e][(std::size_t)y * n1 + g] = nf[e + 1][pindex[e + 1].at(full)];
                }
            }
        }
    }

    a->degree1_generated = detail::build_sections(*a);
    require(a->degree1_generated, "quotient algebra lost degree-1 generation");
    detail::set_top_degree(*a);
    bool some_zero = false;
    for (int d = 0; d <= dmax; ++d) some_zero |= (a->dim(d) == 0);
    a->finite_sharp = some_zero; // generated in degree 1: a zero layer stays zero
    return a;
}

/* Opposite algebra: same basis, swapped bigrades, reversed products. */
template <class F>
AlgPtr<F> opposite(const AlgPtr<F>& a) {
    if (a->op_cache) return a->op_cache;
    auto op = std::make_shared<GradedAlgebra<F>>(a->field);
    op->m = a->m;
    op->dmax = a->dmax;
    op->finite_sharp = a->finite_sharp;
    op->top_degree = a->top_degree;
    op->basis.assign(a->dmax + 1, {});
    for (int d = 0; d <= a->dmax; ++d)
        for (auto& s : a->basis[d]) op->basis[d].push_back({s.rv, s.lv});
    op->left1.assign(a->dmax, {});
    op->right1.assign(a->dmax, {});
    for (int e = 1; e < a->dmax; ++e) {
        int n1 = a->dim(1), ne = a->dim(e);
        op->left1[e].resize((std::size_t)n1 * ne);
        op->right1[e].resize((std::size_t)ne * n1);
        for (int g = 0; g < n1; ++g)
            for (int y = 0; y < ne; ++y) {
                op->left1[e][(std::size_t)g * ne + y] = a->right1[e][(std::size_t)y * n1 + g];
                op->right1[e][(std::size_t)y * n1 + g] = a->left1[e][(std::size_t)g * ne + y];
            }
    }
    op->degree1_generated = detail::build_sections(*op);
    a->op_cache = op;
    op->op_cache = a;
    return op;
}

/* Tensor product algebra, vertices paired as va * m_b + vb. Basis of
   degree d lists blocks (p, d-p) with p ascending, factors in order. */
template <class F>
AlgPtr<F> tensor_algebra(const AlgPtr<F>& a, const AlgPtr<F>& b) {
    require(a->field == b->field, "tensor_algebra: factors over different fields");
    auto t = std::make_shared<GradedAlgebra<F>>(a->field);
    const F& f = t->field;
    t->m = a->m * b->m;
    t->dmax = std::min(a->dmax, b->dmax);
    int dm = t->dmax;
    t->basis.assign(dm + 1, {});

    // index maps: start[d][p] = first slot of block (p, d-p)
    std::vector<std::vector<int>> start(dm + 1);
    for (int d = 0; d <= dm; ++d) {
        start[d].assign(d + 2, 0);
        for (int p = 0; p <= d; ++p) {
            start[d][p] = (int)t->basis[d].size();
            for (int x = 0; x < a->dim(p); ++x)
                for (int y = 0; y < b->dim(d - p); ++y)
                    t->basis[d].push_back(
                        {a->basis[p][x].lv * b->m + b->basis[d - p][y].lv,
                         a->basis[p][x].rv * b->m + b->basis[d - p][y].rv});
        }
        start[d][d + 1] = (int)t->basis[d].size();
    }
    auto slot = [&](int d, int p, int x, int y) {
        return start[d][p] + x * b->dim(d - p) + y;
    };

    // half-degree products in a factor, covering degree 0 projections
    auto amul = [&](int du, int u, int dx, int x) -> typename GradedAlgebra<F>::Sparse {
        return a->mult_general(du, u, dx, x);
    };
    auto bmul = [&](int dv, int v, int dy, int y) -> typename GradedAlgebra<F>::Sparse {
        return b->mult_general(dv, v, dy, y);
    };

    t->left1.assign(dm, {});
    t->right1.assign(dm, {});
    for (int e = 1; e < dm; ++e) {
        int n1 = t->dim(1), ne = t->dim(e);
        t->left1[e].resize((std::size_t)n1 * ne);
        t->right1[e].resize((std::size_t)ne * n1);
        for (int g = 0; g < n1; ++g) {
            int gp = g < start[1][1] ? 0 : 1; // A-degree of the generator
            int gx, gy;
            if (gp == 0) {
                gx = (g - start[1][0]) / b->dim(1);
                gy = (g - start[1][0]) % b->dim(1);
            } else {
                gx = (g - start[1][1]) / b->dim(0);
                gy = (g - start[1][1]) % b->dim(0);
            }
            for (int p = 0; p <= e; ++p) {
                int q = e - p;
                for (int x = 0; x < a->dim(p); ++x)
                    for (int y = 0; y < b->dim(q); ++y) {
                        int col = slot(e, p, x, y);
                        // (gx ox gy) * (x ox y) = (gx * x) ox (gy * y)
                        auto ax = amul(gp, gx, p, x);
                        auto by = bmul(1 - gp, gy, q, y);
                        auto& cell = t->left1[e][(std::size_t)g * ne + col];
                        for (auto& [u, cu] : ax)
                            for (auto& [v, cv] : by)
                                cell.push_back({slot(e + 1, p + gp, u, v), f.mul(cu, cv)});
                        std::sort(cell.begin(), cell.end(),
                                  [](auto& l, auto& r) { return l.first < r.first; });
                        // (x ox y) * (gx ox gy)
                        auto xa = amul(p, x, gp, gx);
                        auto yb = bmul(q, y, 1 - gp, gy);
                        auto& rcell = t->right1[e][(std::size_t)col * n1 + g];
                        for (auto& [u, cu] : xa)
                            for (auto& [v, cv] : yb)
                                rcell.push_back({slot(e + 1, p + gp, u, v), f.mul(cu, cv)});
                        std::sort(rcell.begin(), rcell.end(),
                                  [](auto& l, auto& r) { return l.first < r.first; });
                    }
            }
        }
    }

    t->degree1_generated = detail::build_sections(*t);
    detail::set_top_degree(*t);
    t->finite_sharp = a->finite_sharp && b->finite_sharp &&
                      a->top_degree + b->top_degree <= dm;
    return t;
}

inline QuiverPresentation polynomial_presentation(int n) {
    require(n >= 1, "polynomial algebra needs at least one variable");
    QuiverPresentation p;
    p.vertex_count = 1;
    for (int i = 0; i < n; ++i) p.arrows.push_back({"x" + std::to_string(i + 1), 0, 0});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p.relations.push_back({{{1, 1, {i, j}}, {-1, 1, {j, i}}}});
    return p;
}

inline QuiverPresentation exterior_presentation(int n) {
    require(n >= 1, "exterior algebra needs at least one variable");
    QuiverPresentation p;
    p.vertex_count = 1;
    for (int i = 0; i < n; ++i) p.arrows.push_back({"x" + std::to_string(i + 1), 0, 0});
    for (int i = 0; i < n; ++i) {
        p.relations.push_back({{{1, 1, {i, i}}}});
        for (int j = i + 1; j < n; ++j)
            p.relations.push_back({{{1, 1, {i, j}}, {1, 1, {j, i}}}});
    }
    return p;
}

inline QuiverPresentation preprojective_presentation(const Quiver& q) {
    validate_quiver(q.vertex_count, q.arrows);
    for (auto& a : q.arrows)
        require(a.src != a.tgt, "preprojective construction rejects loops");
    QuiverPresentation p;
    p.vertex_count = q.vertex_count;
    int n = (int)q.arrows.size();
    for (auto& a : q.arrows) p.arrows.push_back(a);
    for (auto& a : q.arrows) p.arrows.push_back({a.name + "*", a.tgt, a.src});
    for (int v = 0; v < q.vertex_count; ++v) {
        Relation rel;
        for (int i = 0; i < n; ++i) {
            if (q.arrows[i].src == v) rel.terms.push_back({1, 1, {i, n + i}});
            if (q.arrows[i].tgt == v) rel.terms.push_back({-1, 1, {n + i, i}});
        }
        if (!rel.terms.empty()) p.relations.push_back(std::move(rel));
    }
    return p;
}

template <class F>
AlgPtr<F> polynomial_algebra(int n, F field, int dmax) {
    return build_algebra(polynomial_presentation(n), std::move(field), dmax);
}

template <class F>
AlgPtr<F> exterior_algebra(int n, F field, int dmax) {
    return build_algebra(exterior_presentation(n), std::move(field), dmax);
}

template <class F>
AlgPtr<F> preprojective_algebra(const Quiver& q, F field, int dmax) {
    return build_algebra(preprojective_presentation(q), std::move(field), dmax);
}

/* Trivial extension of a path algebra kQ by its dual bimodule, built
   directly: degree 0 the vertices, degree 1 arrows plus dual arrows,
   degree 2 the dual vertex classes. Requires every vertex to be a sink
   or a source, so kQ has no paths of length 2. Only nonzero positive
   products: a * a' = (dual vertex at tgt a), a' * a = (dual vertex at
   src a) for each arrow a with dual a'. */
template <class F>
AlgPtr<F> trivial_extension_algebra(const Quiver& q, F field, int dmax) {
    validate_quiver(q.vertex_count, q.arrows);
    require(dmax >= 2, "trivial extension needs dmax >= 2");
    for (int v = 0; v < q.vertex_count; ++v) {
        bool has_out = false, has_in = false;
        for (auto& a : q.arrows) {
            has_out |= (a.src == v);
            has_in |= (a.tgt == v);
        }
        require(!(has_out && has_in),
                "trivial extension requires every vertex to be a sink or a source");
    }

    auto t = std::make_shared<GradedAlgebra<F>>(field);
    const F& f = t->field;
    t->m = q.vertex_count;
    t->dmax = dmax;
    t->basis.assign(dmax + 1, {});
    for (int i = 0; i < t->m; ++i) t->basis[0].push_back({i, i});

    // doubled arrow list sorted by name; duals get "*" suffixed
    struct DArrow {
        std::string name;
        int src, tgt;
        int mate; // index of the dual partner after sorting
        bool original;
    };
    std::vector<DArrow> darr;
    int n = (int)q.arrows.size();
    for (int i = 0; i < n; ++i)
        darr.push_back({q.arrows[i].name, q.arrows[i].src, q.arrows[i].tgt, n + i, true});
    for (int i = 0; i < n; ++i)
        darr.push_back({q.arrows[i].name + "*", q.arrows[i].tgt, q.arrows[i].src, i, false});
    std::vector<int> order(darr.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return darr[x].name < darr[y].name; });
    std::vector<int> pos(darr.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = (int)i;
    std::vector<DArrow> sorted;
    for (int i : order) {
        DArrow d = darr[i];
        d.mate = pos[d.mate];
        sorted.push_back(d);
    }
    for (auto& d : sorted) t->basis[1].push_back({d.tgt, d.src});
    for (int i = 0; i < t->m; ++i) t->basis[2].push_back({i, i});

    t->left1.assign(dmax, {});
    t->right1.assign(dmax, {});
    int n1 = t->dim(1);
    t->left1[1].resize((std::size_t)n1 * n1);
    t->right1[1].resize((std::size_t)n1 * n1);
    for (int g = 0; g < n1; ++g)
        for (int y = 0; y < n1; ++y) {
            // an arrow followed by its dual closes a loop at its start vertex
            if (sorted[g].mate != y) continue;
            // g * y: first y then g, loop at src(y); y * g symmetrically
            t->left1[1][(std::size_t)g * n1 + y] = {{sorted[y].src, f.one()}};
            t->right1[1][(std::size_t)y * n1 + g] = {{sorted[g].src, f.one()}};
        }
    for (int e = 2; e < dmax; ++e) {
        t->left1[e].resize((std::size_t)n1 * t->dim(e));
        t->right1[e].resize((std::size_t)t->dim(e) * n1);
    }

    t->degree1_generated = detail::build_sections(*t);
    detail::set_top_degree(*t);
    t->finite_sharp = true;
    return t;
}

} // namespace gha
