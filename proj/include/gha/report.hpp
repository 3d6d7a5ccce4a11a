#pragma once

// JSON assembly for the machine-readable report. Sections are plain
// data: every dimension travels with its certification marker, and
// certified-zero cells are omitted wholesale (the omitted_cells field
// of each section names the convention). nlohmann::json orders keys,
// so identical inputs serialize byte for byte.

#include "gha/localcoh.hpp"
#include "gha/presentation.hpp"
#include "json.hpp"

namespace gha {

using Json = nlohmann::json;

inline constexpr const char* report_schema_version = "1.0";

template <class F>
Json algebra_summary_json(const AlgPtr<F>& a) {
    Json dims = Json::array();
    for (int d = 0; d <= a->dmax; ++d)
        dims.push_back(Json{{"degree", d}, {"dim", a->dim(d)}, {"certified", true}});
    Json out;
    out["vertices"] = a->m;
    out["dmax"] = a->dmax;
    out["degree_dims"] = dims;
    out["top_degree_known"] = a->finite_sharp;
    if (a->finite_sharp) out["top_degree"] = a->top_degree;
    return out;
}

inline const char* verdict_name(GorensteinReport::Kind k) {
    switch (k) {
    case GorensteinReport::Kind::Verified: return "Verified";
    case GorensteinReport::Kind::Refuted: return "Refuted";
    default: return "Inconclusive";
    }
}

inline Json gorenstein_json(const GorensteinReport& r) {
    Json out;
    out["verdict"] = verdict_name(r.kind);
    out["hmax"] = r.hmax;
    if (r.kind == GorensteinReport::Kind::Verified) {
        out["n"] = r.n;
        out["sigma"] = r.sigma;
        out["shifts"] = r.shifts;
    }
    if (r.kind == GorensteinReport::Kind::Refuted)
        out["witness"] = Json{
            {"vertex", r.wit_vertex}, {"stage", r.wit_s}, {"degree", r.wit_degree}};
    if (!r.reason.empty()) out["reason"] = r.reason;
    return out;
}

/* Hilbert table of a concrete module: dims inside the window are exact,
   the two flags certify the outside. */
template <class F>
Json module_hilbert_json(const GradedModule<F>& m) {
    Json cells = Json::array();
    for (int d = m.lo; d <= m.hi; ++d) {
        auto vd = vertex_dims(m, d);
        cells.push_back(Json{
            {"degree", d}, {"dim", m.dim_at(d)}, {"by_vertex", vd}, {"certified", true}});
    }
    Json out;
    out["window"] = Json{{"lo", m.lo}, {"hi", m.hi}};
    out["zero_below_certified"] = m.zero_below;
    out["zero_above_certified"] = m.zero_above;
    out["cells"] = cells;
    return out;
}

template <class F>
Json dualizing_json(const DualizingModule<F>& dm) {
    Json summands = Json::array();
    for (const auto& s : dm.summands)
        summands.push_back(Json{{"vertex", s.vertex}, {"shift", s.shift}});
    Json out;
    out["n"] = dm.n;
    out["summands"] = summands;
    out["hilbert"] = module_hilbert_json(dm.as_left);
    return out;
}

template <class F>
Json resolution_json(const ProjResolution<F>& r) {
    Json stages = Json::array();
    for (int s = 0; s <= r.hmax; ++s) {
        Json terms = Json::array();
        for (const auto& t : r.terms[(std::size_t)s])
            terms.push_back(Json{{"vertex", t.vertex}, {"degree", t.shift}});
        stages.push_back(Json{{"stage", s}, {"terms", terms}});
    }
    Json out;
    out["hmax"] = r.hmax;
    out["terminated_at"] = r.terminated_at;
    out["stages"] = stages;
    return out;
}

inline Json bigraded_json(const BigradedTable& t) {
    Json cells = Json::array();
    for (int s = 0; s <= t.smax; ++s)
        for (int d = t.dlo; d <= t.dhi; ++d) {
            const auto* c = t.cell(s, d);
            if (c->dim == 0 && c->certified) continue;
            cells.push_back(
                Json{{"s", s}, {"degree", d}, {"dim", c->dim}, {"certified", c->certified}});
        }
    Json out;
    out["smax"] = t.smax;
    out["window"] = Json{{"dlo", t.dlo}, {"dhi", t.dhi}};
    out["zero_below_certified"] = t.zero_below_certified;
    out["zero_above_certified"] = t.zero_above_certified;
    out["cells"] = cells;
    out["omitted_cells"] = "certified zero";
    return out;
}

inline Json limit_json(const LimitTable& t) {
    Json cells = Json::array();
    for (int d = t.dlo; d <= t.dhi; ++d)
        for (int v = 0; v < t.vcount; ++v) {
            const auto& c = t.cell(d, v);
            if (c.status == 0 && c.dim == 0) continue;
            Json row{{"degree", d}, {"vertex", v}};
            row["status"] = c.status == 0   ? "settled"
                            : c.status == 1 ? "unstable"
                                            : "window-limited";
            if (c.status == 0) {
                row["dim"] = c.dim;
                row["stage"] = c.stage;
            }
            cells.push_back(row);
        }
    Json vz = Json::array();
    for (char v : t.vertex_all_zero) vz.push_back((bool)v);
    Json out;
    out["i"] = t.i;
    out["kmax"] = t.kmax;
    out["window"] = Json{{"dlo", t.dlo}, {"dhi", t.dhi}};
    out["vertex_all_zero"] = vz;
    out["cells"] = cells;
    out["omitted_cells"] = "settled zero";
    return out;
}

inline Json formula_json(const FormulaReport& r) {
    Json cells = Json::array();
    for (int d = r.dlo; d <= r.dhi; ++d) {
        int v = r.verdict_at(d);
        if (v == 0 && r.lhs_at(d) == 0) continue;
        cells.push_back(Json{{"degree", d},
                             {"lhs", r.lhs_at(d)},
                             {"rhs", r.rhs_at(d)},
                             {"verdict", v == 0   ? "match"
                                         : v == 1 ? "mismatch"
                                                  : "undetermined"}});
    }
    Json out;
    out["i"] = r.i;
    out["window"] = Json{{"dlo", r.dlo}, {"dhi", r.dhi}};
    out["matches"] = r.matches;
    out["any_mismatch"] = r.any_mismatch;
    out["cells"] = cells;
    out["omitted_cells"] = "matching zero (-1 marks an uncertified side)";
    return out;
}

inline Json double_ext_json(const DoubleExtReport& r) {
    Json out;
    out["ok"] = r.ok;
    out["vanishing_ok"] = r.vanishing_ok;
    out["length_ok"] = r.length_ok;
    out["hilbert_ok"] = r.hilbert_ok;
    out["row_total"] = r.row_total;
    if (!r.detail.empty()) out["detail"] = r.detail;
    return out;
}

} // namespace gha
