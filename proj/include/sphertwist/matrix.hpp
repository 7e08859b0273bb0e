#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace sphertwist {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(std::size_t n, Field f) { return Vec(n, Scalar(0, f)); }

inline Vec unit_vec(std::size_t n, std::size_t i, Field f) {
    Vec v = zero_vec(n, f);
    v[i] = Scalar(1, f);
    return v;
}

inline bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline void axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (a.is_zero()) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) y[i] += a * x[i];
}

inline Vec scaled(const Vec& v, const Scalar& a) {
    Vec r = v;
    for (auto& s : r) s *= a;
    return r;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, Field f = Field::rational())
        : rows_(r), cols_(c), field_(f), data_(r * c, Scalar(0, f)) {}

    static Matrix identity(std::size_t n, Field f = Field::rational()) {
        Matrix m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1, f);
        return m;
    }
    static Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows, Field f = Field::rational()) {
        std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
        Matrix m(r, c, f);
        std::size_t i = 0;
        for (const auto& row : rows) {
            require(row.size() == c, ErrorKind::ShapeError, "ragged initializer");
            std::size_t j = 0;
            for (long x : row) m(i, j++) = Scalar(x, f);
            ++i;
        }
        return m;
    }
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols, Field f) {
        Matrix m(rows.size(), cols, f);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, ErrorKind::ShapeError, "row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) {
                require(rows[i][j].field() == f, ErrorKind::FieldMismatch, "entry field differs from matrix field");
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }
    static Matrix row_matrix(const Vec& v, Field f) { return from_rows({v}, v.size(), f); }
    static Matrix column(const Vec& v, Field f) { return row_matrix(v, f).transpose(); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Field field() const { return field_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec col(std::size_t j) const {
        Vec v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    void set_row(std::size_t i, const Vec& v) {
        require(v.size() == cols_, ErrorKind::ShapeError, "set_row length");
        std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
    }
    std::vector<Vec> row_list() const {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != Scalar(i == j ? 1 : 0, field_)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, ErrorKind::ShapeError,
                "product " + a.shape() + " * " + b.shape());
        require(a.field_ == b.field_, ErrorKind::FieldMismatch, "product across fields");
        Matrix c(a.rows_, b.cols_, a.field_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            Scalar* ci = &c.data_[i * c.cols_];
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) continue;
                const Scalar* bk = &b.data_[k * b.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!bk[j].is_zero()) ci[j] += aik * bk[j];
            }
        }
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::ShapeError, "sum " + a.shape() + " + " + b.shape());
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::ShapeError, "difference " + a.shape() + " - " + b.shape());
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }
    friend Matrix operator*(const Scalar& s, const Matrix& m) {
        Matrix c = m;
        for (auto& x : c.data_) x *= s;
        return c;
    }

    // Row vector times matrix.
    friend Vec operator*(const Vec& v, const Matrix& m) {
        require(v.size() == m.rows_, ErrorKind::ShapeError, "vector length vs " + m.shape());
        Vec r = zero_vec(m.cols_, m.field_);
        for (std::size_t k = 0; k < m.rows_; ++k) {
            if (v[k].is_zero()) continue;
            const Scalar* mk = &m.data_[k * m.cols_];
            for (std::size_t j = 0; j < m.cols_; ++j)
                if (!mk[j].is_zero()) r[j] += v[k] * mk[j];
        }
        return r;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix m(idx.size(), cols_, field_);
        for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, row(idx[i]));
        return m;
    }
    Matrix select_cols(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size(), field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::ShapeError, "block out of range");
        Matrix m(nr, nc, field_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorKind::ShapeError, "set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ == 0 && a.cols_ == 0) return b;
        require(a.cols_ == b.cols_, ErrorKind::ShapeError, "vstack " + a.shape() + " / " + b.shape());
        Matrix m(a.rows_ + b.rows_, a.cols_, a.field_);
        std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + a.data_.size());
        return m;
    }
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_, ErrorKind::ShapeError, "hstack " + a.shape() + " | " + b.shape());
        Matrix m(a.rows_, a.cols_ + b.cols_, a.field_);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols_, b);
        return m;
    }
    static Matrix block_diag(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_, a.field_);
        m.set_block(0, 0, a);
        m.set_block(a.rows_, a.cols_, b);
        return m;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

    // Checks every entry lives in the declared field.
    void check_field() const {
        for (const auto& x : data_)
            if (x.field() != field_) fail(ErrorKind::FieldMismatch, "entry over " + x.field().name() + " in matrix over " + field_.name());
    }

    std::vector<Scalar>& raw() { return data_; }
    const std::vector<Scalar>& raw() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    Field field_;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix matrix;
    std::vector<std::size_t> pivots;
};

// In-place Gauss-Jordan on a list of rows; returns the pivot columns.
inline std::vector<std::size_t> rref_rows(std::vector<Vec>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (!rows[i][c].is_zero()) { piv = i; break; }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Scalar inv = rows[r][c].inverse();
        if (!inv.is_one())
            for (std::size_t j = c; j < cols; ++j)
                if (!rows[r][j].is_zero()) rows[r][j] *= inv;
        const Vec& pr = rows[r];
        std::vector<std::size_t> nz;
        for (std::size_t j = c; j < cols; ++j)
            if (!pr[j].is_zero()) nz.push_back(j);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (std::size_t j : nz) rows[i][j] -= f * pr[j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline RrefResult rref(const Matrix& m) {
    m.check_field();
    std::vector<Vec> rows = m.row_list();
    auto piv = rref_rows(rows, m.cols());
    Matrix out(m.rows(), m.cols(), m.field());
    for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
    return {out, piv};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// Nonzero rows of the rref: a canonical basis of the row space.
inline Matrix row_basis(const Matrix& m) {
    m.check_field();
    std::vector<Vec> rows = m.row_list();
    auto piv = rref_rows(rows, m.cols());
    rows.resize(piv.size());
    return Matrix::from_rows(rows, m.cols(), m.field());
}

inline Matrix row_basis_of(const std::vector<Vec>& vs, std::size_t n, Field f) {
    std::vector<Vec> rows = vs;
    auto piv = rref_rows(rows, n);
    rows.resize(piv.size());
    return Matrix::from_rows(rows, n, f);
}

// Basis (rows, rref) of { x : x * m = 0 }.
inline Matrix left_kernel(const Matrix& m);

// Columns spanning { x : m x = 0 }, canonical up to the rref of their transposes.
inline Matrix kernel_basis(const Matrix& m) {
    auto [r, piv] = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec> vs;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v = zero_vec(m.cols(), m.field());
        v[f] = Scalar(1, m.field());
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        vs.push_back(v);
    }
    return row_basis_of(vs, m.cols(), m.field()).transpose();
}

inline Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

// Columns forming a canonical basis of the column span.
inline Matrix image_basis(const Matrix& m) { return row_basis(m.transpose()).transpose(); }

// Some x with m x = b (b a single column), or nothing.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    require(b.cols() == 1 && b.rows() == m.rows(), ErrorKind::ShapeError, "solve: rhs shape " + b.shape() + " vs " + m.shape());
    require(m.field() == b.field(), ErrorKind::FieldMismatch, "solve across fields");
    Matrix aug = Matrix::hstack(m, b);
    auto [r, piv] = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    Matrix x(m.cols(), 1, m.field());
    for (std::size_t i = 0; i < piv.size(); ++i) x(piv[i], 0) = r(i, m.cols());
    return x;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    require(a.field() == b.field(), ErrorKind::FieldMismatch, "kronecker across fields");
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

// Columns: canonical basis of span(u) ∩ span(v).
inline Matrix intersect_subspaces(const Matrix& u, const Matrix& v) {
    require(u.rows() == v.rows(), ErrorKind::ShapeError, "intersect: ambient dims differ");
    if (u.cols() == 0 || v.cols() == 0) return Matrix(u.rows(), 0, u.field());
    Matrix both = Matrix::hstack(u, Scalar(-1, u.field()) * v);
    Matrix ker = kernel_basis(both);
    Matrix coeff = ker.block(0, 0, u.cols(), ker.cols());
    return image_basis(u * coeff);
}

// A subspace of k^n held by its rref row basis; coordinates read off pivot entries.
class RowSpace {
public:
    RowSpace() = default;
    RowSpace(const Matrix& spanning) : n_(spanning.cols()), field_(spanning.field()) {
        std::vector<Vec> rows = spanning.row_list();
        pivots_ = rref_rows(rows, n_);
        rows.resize(pivots_.size());
        basis_ = Matrix::from_rows(rows, n_, field_);
    }
    RowSpace(const std::vector<Vec>& vs, std::size_t n, Field f) : n_(n), field_(f) {
        std::vector<Vec> rows = vs;
        pivots_ = rref_rows(rows, n_);
        rows.resize(pivots_.size());
        basis_ = Matrix::from_rows(rows, n_, field_);
    }
    std::size_t dim() const { return pivots_.size(); }
    std::size_t ambient() const { return n_; }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    Vec coords_unchecked(const Vec& v) const {
        Vec c;
        c.reserve(pivots_.size());
        for (auto p : pivots_) c.push_back(v[p]);
        return c;
    }
    std::optional<Vec> coords(const Vec& v) const {
        Vec c = coords_unchecked(v);
        if (c * basis_ != v) return std::nullopt;
        return c;
    }
    bool contains(const Vec& v) const {
        if (dim() == 0) return is_zero_vec(v);
        return coords(v).has_value();
    }
    bool contains(const RowSpace& o) const {
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }
    Vec vector(const Vec& coords) const {
        if (dim() == 0) return zero_vec(n_, field_);
        return coords * basis_;
    }

private:
    std::size_t n_ = 0;
    Field field_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

// Row bases: sum and intersection of row spaces.
inline Matrix row_space_sum(const Matrix& a, const Matrix& b) { return row_basis(Matrix::vstack(a, b)); }

inline Matrix row_space_intersection(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0 || b.rows() == 0) return Matrix(0, a.cols(), a.field());
    return intersect_subspaces(a.transpose(), b.transpose()).transpose();
}

// Complement of a row subspace inside k^n spanned by standard unit vectors (rows).
inline Matrix complement_units(const Matrix& sub_basis, std::size_t n, Field f) {
    RowSpace s(sub_basis.rows() ? sub_basis : Matrix(0, n, f));
    std::vector<bool> piv(n, false);
    for (auto p : s.pivots()) piv[p] = true;
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < n; ++j)
        if (!piv[j]) rows.push_back(unit_vec(n, j, f));
    return Matrix::from_rows(rows, n, f);
}

inline Matrix inverse(const Matrix& m) {
    require(m.rows() == m.cols(), ErrorKind::ShapeError, "inverse of non-square " + m.shape());
    std::size_t n = m.rows();
    auto [r, piv] = rref(Matrix::hstack(m, Matrix::identity(n, m.field())));
    require(piv.size() >= n && (n == 0 || piv[n - 1] == n - 1), ErrorKind::DivisionByZero, "singular matrix");
    return r.block(0, n, n, n);
}

} // namespace sphertwist
