#pragma once

// Path algebras of quivers modulo homogeneous relations. Paths compose left to right.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "structure.hpp"

namespace sphertwist {

struct Arrow {
    std::string name;
    std::size_t from = 0, to = 0;
};

// A relation is a list of (coefficient, path) terms; a path is a list of arrow indices.
struct RelationTerm {
    Scalar coeff;
    std::vector<std::size_t> path;
};
using Relation = std::vector<RelationTerm>;

struct QuiverSpec {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    std::size_t zero_length = 0; // if nonzero: every path of this length is a relation
    std::size_t length_cap = 64;
};

namespace detail {

using Path = std::vector<std::size_t>;

inline std::size_t path_start(const QuiverSpec& q, const Path& p, std::size_t vertex_if_trivial) {
    return p.empty() ? vertex_if_trivial : q.arrows[p.front()].from;
}

inline std::vector<std::pair<std::size_t, Path>> paths_of_length(const QuiverSpec& q, std::size_t len) {
    // (start vertex, path); trivial paths only at length 0
    std::vector<std::pair<std::size_t, Path>> out;
    if (len == 0) {
        for (std::size_t v = 0; v < q.vertices.size(); ++v) out.push_back({v, {}});
        return out;
    }
    auto prev = paths_of_length(q, len - 1);
    require(prev.size() < 200000, ErrorKind::InfiniteDimensional, "path enumeration exceeds 200000 paths");
    for (const auto& [v, p] : prev) {
        std::size_t end = p.empty() ? v : q.arrows[p.back()].to;
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
            if (q.arrows[a].from == end) {
                Path np = p;
                np.push_back(a);
                out.push_back({v, np});
            }
    }
    return out;
}

} // namespace detail

inline AlgebraPtr from_quiver(const QuiverSpec& q, Field f) {
    using detail::Path;
    std::size_t nv = q.vertices.size();
    require(nv > 0, ErrorKind::MalformedRelation, "quiver without vertices");
    for (const auto& a : q.arrows)
        require(a.from < nv && a.to < nv, ErrorKind::MalformedRelation, "arrow " + a.name + " has an unknown endpoint");
    // relation degrees and parallelism
    std::vector<std::size_t> rel_deg;
    for (const auto& r : q.relations) {
        require(!r.empty(), ErrorKind::MalformedRelation, "empty relation");
        std::size_t d = r[0].path.size();
        require(d >= 1, ErrorKind::MalformedRelation, "relation term is a trivial path");
        std::size_t s = q.arrows[r[0].path.front()].from, t = q.arrows[r[0].path.back()].to;
        for (const auto& term : r) {
            require(term.path.size() == d, ErrorKind::MalformedRelation, "relation is not homogeneous in path length");
            for (std::size_t k = 0; k + 1 < term.path.size(); ++k)
                require(q.arrows[term.path[k]].to == q.arrows[term.path[k + 1]].from, ErrorKind::MalformedRelation,
                        "relation term is not a composable path");
            require(q.arrows[term.path.front()].from == s && q.arrows[term.path.back()].to == t, ErrorKind::MalformedRelation,
                    "relation terms are not parallel");
            require(term.coeff.field() == f, ErrorKind::FieldMismatch, "relation coefficient field");
        }
        rel_deg.push_back(d);
    }

    // Degree-wise: paths of length d modulo the degree-d part of the ideal.
    std::vector<std::vector<Path>> deg_paths;
    std::vector<std::vector<std::size_t>> deg_start;
    std::vector<RowSpace> deg_ideal;
    std::vector<std::vector<std::size_t>> deg_basis; // indices into deg_paths[d] surviving as normal forms
    for (std::size_t d = 0;; ++d) {
        require(d <= q.length_cap, ErrorKind::InfiniteDimensional,
                "paths of length " + std::to_string(q.length_cap) + " survive the relations");
        auto pl = detail::paths_of_length(q, d);
        std::vector<Path> paths;
        std::vector<std::size_t> starts;
        std::map<Path, std::size_t> index;
        for (auto& [v, p] : pl) {
            if (d > 0) index[p] = paths.size();
            paths.push_back(p);
            starts.push_back(v);
        }
        std::size_t n = paths.size();
        std::vector<Vec> gens;
        if (d > 0 && q.zero_length && d >= q.zero_length) {
            for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vec(n, i, f));
        } else if (d > 0) {
            for (std::size_t r = 0; r < q.relations.size(); ++r) {
                std::size_t k = rel_deg[r];
                if (k > d) continue;
                for (std::size_t a = 0; a + k <= d; ++a) {
                    // prefix of length a, suffix of length d-k-a
                    for (const auto& [pv, pre] : detail::paths_of_length(q, a)) {
                        std::size_t rs = q.arrows[q.relations[r][0].path.front()].from;
                        std::size_t pe = pre.empty() ? pv : q.arrows[pre.back()].to;
                        if (pe != rs) continue;
                        std::size_t rt = q.arrows[q.relations[r][0].path.back()].to;
                        for (const auto& [sv, suf] : detail::paths_of_length(q, d - k - a)) {
                            if (sv != rt) continue;
                            Vec g = zero_vec(n, f);
                            for (const auto& term : q.relations[r]) {
                                Path full = pre;
                                full.insert(full.end(), term.path.begin(), term.path.end());
                                full.insert(full.end(), suf.begin(), suf.end());
                                g[index.at(full)] += term.coeff;
                            }
                            gens.push_back(g);
                        }
                    }
                }
            }
        }
        RowSpace I(gens, n, f);
        std::vector<bool> piv(n, false);
        for (auto p : I.pivots()) piv[p] = true;
        std::vector<std::size_t> surv;
        for (std::size_t i = 0; i < n; ++i)
            if (!piv[i]) surv.push_back(i);
        deg_paths.push_back(paths);
        deg_start.push_back(starts);
        deg_ideal.push_back(I);
        deg_basis.push_back(surv);
        if (surv.empty()) break;
    }

    // global basis: normal-form paths by degree
    std::vector<std::pair<std::size_t, std::size_t>> basis; // (degree, index in deg_paths)
    std::vector<std::vector<long>> pos(deg_paths.size());
    for (std::size_t d = 0; d < deg_paths.size(); ++d) {
        pos[d].assign(deg_paths[d].size(), -1);
        for (auto i : deg_basis[d]) {
            pos[d][i] = static_cast<long>(basis.size());
            basis.push_back({d, i});
        }
    }
    std::size_t N = basis.size();
    std::vector<std::string> labels;
    for (auto [d, i] : basis) {
        if (d == 0) {
            labels.push_back("e_" + q.vertices[deg_start[0][i]]);
            continue;
        }
        std::string s;
        for (std::size_t k = 0; k < deg_paths[d][i].size(); ++k) s += (k ? "*" : "") + q.arrows[deg_paths[d][i][k]].name;
        labels.push_back(s);
    }
    // reduce a degree-d path to normal-form coordinates
    auto reduce = [&](std::size_t d, const Path& p) {
        Vec out = zero_vec(N, f);
        if (d >= deg_paths.size()) return out;
        std::size_t n = deg_paths[d].size();
        std::size_t idx = n;
        for (std::size_t i = 0; i < n; ++i)
            if (deg_paths[d][i] == p) { idx = i; break; }
        Vec v = unit_vec(n, idx, f);
        const RowSpace& I = deg_ideal[d];
        for (std::size_t r = 0; r < I.dim(); ++r) {
            Scalar c = v[I.pivots()[r]];
            if (!c.is_zero()) axpy(v, -c, I.basis().row(r));
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!v[i].is_zero()) out[static_cast<std::size_t>(pos[d][i])] = v[i];
        return out;
    };
    std::vector<std::vector<Vec>> mult(N, std::vector<Vec>(N, zero_vec(N, f)));
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            auto [dx, ix] = basis[x];
            auto [dy, iy] = basis[y];
            const Path& px = deg_paths[dx][ix];
            const Path& py = deg_paths[dy][iy];
            std::size_t sx = deg_start[dx][ix], sy = deg_start[dy][iy];
            std::size_t ex = px.empty() ? sx : q.arrows[px.back()].to;
            if (ex != sy) continue;
            if (dx == 0) { mult[x][y] = unit_vec(N, y, f); continue; }
            if (dy == 0) { mult[x][y] = unit_vec(N, x, f); continue; }
            Path p = px;
            p.insert(p.end(), py.begin(), py.end());
            mult[x][y] = reduce(dx + dy, p);
        }
    Vec unit = zero_vec(N, f);
    std::vector<Vec> prims;
    for (std::size_t v = 0; v < nv; ++v) {
        unit[v] = Scalar(1, f);
        prims.push_back(unit_vec(N, v, f));
    }
    Algebra A(f, labels, mult, unit, true);
    // trivial paths are pairwise non-isomorphic; nontrivial paths span the radical
    IdempotentData d;
    d.prim = prims;
    for (std::size_t v = 0; v < nv; ++v) {
        d.cls.push_back(v);
        d.rep.push_back(v);
    }
    std::vector<Vec> gens;
    if (deg_paths.size() > 1)
        for (std::size_t i : deg_basis[1]) gens.push_back(unit_vec(N, static_cast<std::size_t>(pos[1][i]), f));
    std::vector<Vec> rad;
    for (std::size_t i = nv; i < N; ++i) rad.push_back(unit_vec(N, i, f));
    A.set_structure(d, gens, rad);
    return make_algebra(std::move(A));
}

} // namespace sphertwist
