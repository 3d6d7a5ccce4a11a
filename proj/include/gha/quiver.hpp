#pragma once

#include <set>
#include <string>
#include <vector>

#include "gha/error.hpp"

namespace gha {

/* Quivers and presentations. Vertices are 0-based indices. A path is a
   sequence of arrow indices in traversal order: [a, b] first walks a,
   then b, so tgt(a) == src(b). As an algebra element the path [a, b]
   is the product b * a, since x * y means "first y then x". */

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

struct Quiver {
    int vertex_count = 0;
    std::vector<Arrow> arrows;
};

struct PathTerm {
    long num = 1;
    long den = 1;
    std::vector<int> arrows; // traversal order
};

struct Relation {
    std::vector<PathTerm> terms;
};

struct QuiverPresentation {
    int vertex_count = 0;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
};

inline void validate_quiver(int vertex_count, const std::vector<Arrow>& arrows) {
    require(vertex_count >= 1, "quiver needs at least one vertex");
    std::set<std::string> names;
    for (auto& a : arrows) {
        require(!a.name.empty(), "arrow with empty name");
        require(names.insert(a.name).second, "duplicate arrow name: " + a.name);
        require(a.src >= 0 && a.src < vertex_count, "arrow " + a.name + ": source out of range");
        require(a.tgt >= 0 && a.tgt < vertex_count, "arrow " + a.name + ": target out of range");
    }
}

/* Source and target of a path, with composability checking. */
inline std::pair<int, int> path_endpoints(const std::vector<Arrow>& arrows,
                                          const std::vector<int>& path) {
    require(!path.empty(), "empty path in relation");
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
        require(arrows[path[t]].tgt == arrows[path[t + 1]].src,
                "non-composable path in relation");
    return {arrows[path.front()].src, arrows[path.back()].tgt};
}

inline void validate_presentation(const QuiverPresentation& p) {
    validate_quiver(p.vertex_count, p.arrows);
    for (auto& rel : p.relations) {
        require(!rel.terms.empty(), "relation with no terms");
        int src = -1, tgt = -1;
        std::size_t len = 0;
        for (auto& t : rel.terms) {
            require(t.den != 0, "relation coefficient with zero denominator");
            for (int a : t.arrows)
                require(a >= 0 && a < (int)p.arrows.size(), "relation arrow index out of range");
            auto [s, g] = path_endpoints(p.arrows, t.arrows);
            if (src < 0) {
                src = s;
                tgt = g;
                len = t.arrows.size();
            } else {
                require(s == src && g == tgt, "relation mixes paths with different endpoints");
                require(t.arrows.size() == len, "relation mixes paths of different lengths");
            }
        }
        require(len >= 2, "relation of path length < 2");
    }
}

} // namespace gha
