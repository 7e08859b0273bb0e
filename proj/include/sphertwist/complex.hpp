#pragma once

// Bounded cochain complexes, of vector spaces or of right modules.

#include <string>
#include <vector>

#include "modules.hpp"

namespace sphertwist {

// Terms in degrees lo .. lo+size-1; d[k]: term k -> term k+1 (rows: source basis).
struct VecComplex {
    Field field;
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> d;

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    std::size_t dim_at(int n) const {
        if (n < lo || n > hi()) return 0;
        return dims[static_cast<std::size_t>(n - lo)];
    }
    // Differential out of degree n, as a (dim_at(n) x dim_at(n+1)) matrix.
    Matrix diff(int n) const {
        if (n < lo || n >= hi()) return Matrix(dim_at(n), dim_at(n + 1), field);
        return d[static_cast<std::size_t>(n - lo)];
    }
    void check() const {
        require(d.size() + 1 == dims.size() || (dims.empty() && d.empty()), ErrorKind::ShapeError, "complex differential count");
        for (std::size_t k = 0; k < d.size(); ++k) {
            require(d[k].rows() == dims[k] && d[k].cols() == dims[k + 1], ErrorKind::ShapeError, "complex differential shape");
            if (k + 1 < d.size()) require((d[k] * d[k + 1]).is_zero(), ErrorKind::NotAChainMap, "d o d != 0 at degree " + std::to_string(lo + static_cast<int>(k)));
        }
    }
    std::size_t cohomology_dim(int n) const {
        std::size_t out_rank = rank(diff(n));
        std::size_t in_rank = rank(diff(n - 1));
        return dim_at(n) - out_rank - in_rank;
    }
    // Cohomology dims over [from, to].
    std::vector<std::size_t> cohomology_dims(int from, int to) const {
        std::vector<std::size_t> out;
        for (int n = from; n <= to; ++n) out.push_back(cohomology_dim(n));
        return out;
    }
    std::size_t total_cohomology() const {
        std::size_t s = 0;
        for (int n = lo; n <= hi(); ++n) s += cohomology_dim(n);
        return s;
    }
};

// C[n]: degree k of C[n] is degree k+n of C; differential sign (-1)^n.
inline VecComplex shift(const VecComplex& c, int n) {
    VecComplex s = c;
    s.lo = c.lo - n;
    if (n % 2 != 0)
        for (auto& m : s.d) m = Scalar(-1, c.field) * m;
    return s;
}

// A chain map f: a -> b, component f.at(n) for degree n (dim_at(n) of a x dim_at(n) of b).
struct VecChainMap {
    int lo = 0;
    std::vector<Matrix> comp;
    Matrix at(int n, const VecComplex& a, const VecComplex& b) const {
        int k = n - lo;
        if (k < 0 || k >= static_cast<int>(comp.size())) return Matrix(a.dim_at(n), b.dim_at(n), a.field);
        return comp[static_cast<std::size_t>(k)];
    }
};

inline void check_chain_map(const VecChainMap& f, const VecComplex& a, const VecComplex& b) {
    int lo = std::min(a.lo, b.lo) - 1, hi = std::max(a.hi(), b.hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
        Matrix lhs = a.diff(n) * f.at(n + 1, a, b);
        Matrix rhs = f.at(n, a, b) * b.diff(n);
        if (lhs != rhs) fail(ErrorKind::NotAChainMap, "square at degree " + std::to_string(n) + " does not commute");
    }
}

// cone(f)^n = a^{n+1} + b^n, d(x, y) = (-d_a x, f x + d_b y) in row convention.
inline VecComplex cone(const VecChainMap& f, const VecComplex& a, const VecComplex& b) {
    check_chain_map(f, a, b);
    Field fld = a.field;
    int lo = std::min(a.lo - 1, b.lo), hi = std::max(a.hi() - 1, b.hi());
    VecComplex c{fld, lo, {}, {}};
    for (int n = lo; n <= hi; ++n) c.dims.push_back(a.dim_at(n + 1) + b.dim_at(n));
    for (int n = lo; n < hi; ++n) {
        std::size_t an = a.dim_at(n + 1), bn = b.dim_at(n), an1 = a.dim_at(n + 2), bn1 = b.dim_at(n + 1);
        Matrix D(an + bn, an1 + bn1, fld);
        D.set_block(0, 0, Scalar(-1, fld) * a.diff(n + 1));
        D.set_block(0, an1, f.at(n + 1, a, b));
        D.set_block(an, an1, b.diff(n));
        c.d.push_back(D);
    }
    c.check();
    return c;
}

// Complex of right modules; differentials are module homs.
struct ChainComplex {
    AlgebraPtr algebra;
    int lo = 0;
    std::vector<ModulePtr> terms;
    std::vector<Matrix> d;

    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    VecComplex vec() const {
        VecComplex v{algebra->field(), lo, {}, d};
        for (const auto& t : terms) v.dims.push_back(t->dim());
        return v;
    }
    ModulePtr term(int n) const {
        if (n < lo || n > hi()) return zero_module(algebra);
        return terms[static_cast<std::size_t>(n - lo)];
    }
    Matrix diff(int n) const { return vec().diff(n); }
    void check() const {
        vec().check();
        for (std::size_t k = 0; k < d.size(); ++k)
            require(ModuleHom{terms[k], terms[k + 1], d[k]}.is_intertwiner(), ErrorKind::NotAChainMap,
                    "differential at degree " + std::to_string(lo + static_cast<int>(k)) + " is not a module map");
    }
};

inline ChainComplex stalk(const ModulePtr& m, int degree = 0) { return {m->algebra(), degree, {m}, {}}; }

} // namespace sphertwist
