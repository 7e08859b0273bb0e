#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace sphertwist {

// Complete set of primitive orthogonal idempotents, grouped by isomorphism of e·A.
struct IdempotentData {
    std::vector<Vec> prim;
    std::vector<std::size_t> cls;   // class of each primitive idempotent
    std::vector<std::size_t> rep;   // representative index per class
    std::size_t classes() const { return rep.size(); }
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
public:
    // mult[i][j] = coordinates of b_i * b_j.
    Algebra(Field f, std::vector<std::string> labels, std::vector<std::vector<Vec>> mult, Vec unit, bool validate = true)
        : field_(f), labels_(std::move(labels)), mult_(std::move(mult)), unit_(std::move(unit)) {
        std::size_t n = labels_.size();
        require(mult_.size() == n && unit_.size() == n, ErrorKind::ShapeError, "structure constants do not match dimension");
        for (const auto& row : mult_) {
            require(row.size() == n, ErrorKind::ShapeError, "structure constant row length");
            for (const auto& v : row) {
                require(v.size() == n, ErrorKind::ShapeError, "structure constant vector length");
                for (const auto& s : v) require(s.field() == f, ErrorKind::FieldMismatch, "structure constant field");
            }
        }
        build_tables();
        if (validate) check_laws();
    }

    Field field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<Vec>>& mult_table() const { return mult_; }
    const Vec& unit() const { return unit_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    Vec basis(std::size_t i) const { return unit_vec(dim(), i, field_); }
    Vec zero() const { return zero_vec(dim(), field_); }

    // x * b_j as row vector: x * right(j).
    const Matrix& right(std::size_t j) const { return right_[j]; }
    // b_i * x as row vector: x * left(i).
    const Matrix& left(std::size_t i) const { return left_[i]; }

    Matrix right_mult(const Vec& y) const { return combine(right_, y); }
    Matrix left_mult(const Vec& y) const { return combine(left_, y); }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec r = zero();
        for (std::size_t j = 0; j < dim(); ++j)
            if (!y[j].is_zero()) axpy(r, y[j], x * right_[j]);
        return r;
    }
    Vec mul(const Vec& x, const Vec& y, const Vec& z) const { return mul(mul(x, y), z); }

    bool has_idempotents() const { return idem_.has_value(); }
    const IdempotentData& idempotents() const {
        require(idem_.has_value(), ErrorKind::NotSplit, "algebra carries no idempotent data");
        return *idem_;
    }
    // Elements of the form e_v x e_w which, with the idempotents, generate the algebra.
    const std::vector<Vec>& generators() const { return gens_; }
    std::vector<Vec> generating_set() const {
        std::vector<Vec> g = idem_ ? idem_->prim : std::vector<Vec>{unit_};
        g.insert(g.end(), gens_.begin(), gens_.end());
        return g;
    }
    // A spanning set of the radical.
    const std::vector<Vec>& radical_generators() const { return rad_gens_; }
    void set_structure(IdempotentData d, std::vector<Vec> gens, std::vector<Vec> rad_gens) {
        idem_ = std::move(d);
        gens_ = std::move(gens);
        rad_gens_ = std::move(rad_gens);
    }

    // Nonzero corner e_v b e_w pieces are what hom computations need.
    Vec corner(const Vec& e, const Vec& x, const Vec& f) const { return mul(e, x, f); }

private:
    static Matrix combine(const std::vector<Matrix>& ms, const Vec& y) {
        Matrix r(ms.empty() ? 0 : ms[0].rows(), ms.empty() ? 0 : ms[0].cols(), ms.empty() ? Field() : ms[0].field());
        for (std::size_t j = 0; j < ms.size(); ++j)
            if (!y[j].is_zero()) r = r + y[j] * ms[j];
        return r;
    }
    void build_tables() {
        std::size_t n = dim();
        right_.assign(n, Matrix(n, n, field_));
        left_.assign(n, Matrix(n, n, field_));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                right_[j].set_row(i, mult_[i][j]);
                left_[i].set_row(j, mult_[i][j]);
            }
    }
    void check_laws() const {
        std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i) {
            Vec bi = basis(i);
            if (mul(unit_, bi) != bi || mul(bi, unit_) != bi)
                fail(ErrorKind::BadUnit, "unit fails on basis element " + labels_[i]);
        }
        // (b_i b_j) b_k = b_i (b_j b_k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Vec& ij = mult_[i][j];
                for (std::size_t k = 0; k < n; ++k) {
                    Vec lhs = ij * right_[k];
                    Vec rhs = zero_vec(n, field_);
                    const Vec& jk = mult_[j][k];
                    for (std::size_t l = 0; l < n; ++l)
                        if (!jk[l].is_zero()) axpy(rhs, jk[l], mult_[i][l]);
                    if (lhs != rhs)
                        fail(ErrorKind::NonAssociative,
                             "(" + labels_[i] + "*" + labels_[j] + ")*" + labels_[k] + " != " + labels_[i] + "*(" + labels_[j] + "*" + labels_[k] + ")");
                }
            }
    }

    Field field_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Vec>> mult_;
    Vec unit_;
    std::string name_;
    std::vector<Matrix> right_, left_;
    std::optional<IdempotentData> idem_;
    std::vector<Vec> gens_;
    std::vector<Vec> rad_gens_;
};

inline AlgebraPtr make_algebra(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

inline bool same_algebra(const Algebra& a, const Algebra& b) {
    if (&a == &b) return true;
    return a.field() == b.field() && a.dim() == b.dim() && a.mult_table() == b.mult_table() && a.unit() == b.unit();
}

inline Algebra from_structure_constants(Field f, std::vector<std::string> labels, std::vector<std::vector<Vec>> mult, Vec unit) {
    return Algebra(f, std::move(labels), std::move(mult), std::move(unit), true);
}

// Span of products of two row spaces (rows of a and b are algebra elements).
inline Matrix product_span(const Algebra& A, const Matrix& a, const Matrix& b) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vec x = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) out.push_back(A.mul(x, b.row(j)));
    }
    return row_basis_of(out, A.dim(), A.field());
}

// Jacobson radical via the trace form; rows are a canonical basis.
inline Matrix radical(const Algebra& A) {
    std::size_t n = A.dim();
    Field f = A.field();
    require(f.is_rational() || f.p > n, ErrorKind::UnsupportedCharacteristic,
            "radical needs characteristic 0 or p > dim (" + f.name() + ", dim " + std::to_string(n) + ")");
    Vec tr = zero_vec(n, f);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) tr[k] += A.right(k)(i, i);
    Matrix G(n, n, f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s(0, f);
            const Vec& c = A.mult_table()[i][j];
            for (std::size_t k = 0; k < n; ++k)
                if (!c[k].is_zero()) s += c[k] * tr[k];
            G(i, j) = s;
        }
    Matrix J = left_kernel(G);
    // nilpotency audit: J^k = 0 for some k <= dim
    Matrix P = J;
    std::size_t k = 1;
    while (P.rows() > 0) {
        require(k <= n, ErrorKind::AuditFailed, "trace-form radical is not nilpotent");
        P = product_span(A, P, J);
        ++k;
    }
    return J;
}

inline std::size_t nilpotency_index(const Algebra& A, const Matrix& J) {
    Matrix P = J;
    std::size_t k = 1;
    while (P.rows() > 0) {
        P = product_span(A, P, J);
        ++k;
    }
    return J.rows() == 0 ? 0 : k;
}

struct SurjectionData {
    AlgebraPtr source;
    AlgebraPtr target;
    Matrix matrix;        // dim(source) x dim(target): row i = p(b_i)
    Matrix kernel;        // rows: basis of ker p
    std::vector<std::size_t> complement; // source basis indices mapped to the target basis

    Vec apply(const Vec& x) const { return x * matrix; }
    // Preimage under the section sending target basis k to source basis complement[k].
    Vec section(const Vec& y) const {
        Vec x = source->zero();
        for (std::size_t k = 0; k < complement.size(); ++k) x[complement[k]] = y[k];
        return x;
    }
};

namespace detail {
// Two-sided ideal check: rows of I times basis on both sides stay in span.
inline void check_ideal(const Algebra& A, const RowSpace& I) {
    for (std::size_t r = 0; r < I.dim(); ++r) {
        Vec x = I.basis().row(r);
        for (std::size_t j = 0; j < A.dim(); ++j) {
            if (!I.contains(x * A.right(j)))
                fail(ErrorKind::NotAnIdeal, "ideal element times " + A.labels()[j] + " leaves the span");
            if (!I.contains(x * A.left(j)))
                fail(ErrorKind::NotAnIdeal, A.labels()[j] + " times ideal element leaves the span");
        }
    }
}
} // namespace detail

// Structure data for a quotient is filled in by the idempotent layer (see structure.hpp).
inline SurjectionData quotient_surjection_raw(const AlgebraPtr& A, const Matrix& ideal_rows) {
    Field f = A->field();
    std::size_t n = A->dim();
    RowSpace I(ideal_rows.rows() ? ideal_rows : Matrix(0, n, f));
    detail::check_ideal(*A, I);
    std::vector<bool> piv(n, false);
    for (auto p : I.pivots()) piv[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < n; ++j)
        if (!piv[j]) comp.push_back(j);
    std::size_t m = comp.size();
    // reduce x modulo I then read complement coordinates
    auto reduce = [&](Vec x) {
        for (std::size_t r = 0; r < I.dim(); ++r) {
            Scalar c = x[I.pivots()[r]];
            if (!c.is_zero()) axpy(x, -c, I.basis().row(r));
        }
        Vec y;
        y.reserve(m);
        for (auto j : comp) y.push_back(x[j]);
        return y;
    };
    Matrix P(n, m, f);
    for (std::size_t i = 0; i < n; ++i) P.set_row(i, reduce(A->basis(i)));
    std::vector<std::string> labels;
    for (auto j : comp) labels.push_back(A->labels()[j]);
    std::vector<std::vector<Vec>> mult(m, std::vector<Vec>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) mult[a][b] = reduce(A->mult_table()[comp[a]][comp[b]]);
    Vec unit = reduce(A->unit());
    auto B = make_algebra(Algebra(f, labels, mult, unit, false));
    return SurjectionData{A, B, P, I.basis(), comp};
}

inline Algebra opposite_raw(const Algebra& A) {
    std::size_t n = A.dim();
    std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mult[i][j] = A.mult_table()[j][i];
    Algebra op(A.field(), A.labels(), mult, A.unit(), false);
    if (A.has_idempotents()) op.set_structure(A.idempotents(), A.generators(), A.radical_generators());
    op.set_name(A.name().empty() ? "" : A.name() + "^op");
    return op;
}

// b ⊗ a^op: its right modules are a-b-bimodules, m·(y ⊗ x°) = x m y. Basis index i*dim(a)+j for b_i ⊗ a_j.
inline Algebra enveloping_raw(const Algebra& a, const Algebra& b) {
    require(a.field() == b.field(), ErrorKind::FieldMismatch, "enveloping across fields");
    Field f = a.field();
    std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j) labels.push_back(b.labels()[i] + "(x)" + a.labels()[j] + "^op");
    std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n, zero_vec(n, f)));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < na; ++l) {
                    const Vec& bb = b.mult_table()[i][k];
                    const Vec& aa = a.mult_table()[l][j];
                    Vec& out = mult[i * na + j][k * na + l];
                    for (std::size_t p = 0; p < nb; ++p) {
                        if (bb[p].is_zero()) continue;
                        for (std::size_t q = 0; q < na; ++q)
                            if (!aa[q].is_zero()) out[p * na + q] += bb[p] * aa[q];
                    }
                }
    Vec unit = zero_vec(n, f);
    for (std::size_t p = 0; p < nb; ++p)
        for (std::size_t q = 0; q < na; ++q) unit[p * na + q] = b.unit()[p] * a.unit()[q];
    return Algebra(f, labels, mult, unit, n <= 16);
}

// Element y ⊗ x° of the enveloping algebra from components.
inline Vec tensor_element(const Vec& y, const Vec& x) {
    Vec out;
    out.reserve(y.size() * x.size());
    for (const auto& s : y)
        for (const auto& t : x) out.push_back(s * t);
    return out;
}

} // namespace sphertwist
