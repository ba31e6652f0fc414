// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/linalg.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <string>

namespace agkey::linalg {

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), data_(rows * cols)
{
}

Matrix Matrix::identity(const Field& field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Field::one();
    return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionMismatch("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                    " entries, expected " + std::to_string(cols));
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Vector Matrix::col_vector(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

void Matrix::append_row(std::span<const Element> values)
{
    if (values.size() != cols_)
        throw DimensionMismatch("append_row: wrong length");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::transpose() const
{
    Matrix t(*field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const
{
    Matrix m(*field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy(row(idx[i]).begin(), row(idx[i]).end(), m.row(i).begin());
    return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const
{
    Matrix m(*field_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < idx.size(); ++i)
            m(r, i) = (*this)(r, idx[i]);
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    Matrix m(*field_, nr, nc);
    const std::size_t rmax = r0 < rows_ ? std::min(nr, rows_ - r0) : 0;
    const std::size_t cmax = c0 < cols_ ? std::min(nc, cols_ - c0) : 0;
    for (std::size_t r = 0; r < rmax; ++r)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), cmax, m.row(r).begin());
    return m;
}

Vector Matrix::apply(std::span<const Element> x) const
{
    if (x.size() != cols_)
        throw DimensionMismatch("apply: vector length " + std::to_string(x.size()) + " vs " +
                                std::to_string(cols_) + " columns");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Element acc{};
        auto rr = row(r);
        for (std::size_t c = 0; c < cols_; ++c)
            acc = field_->add(acc, field_->mul(rr[c], x[c]));
        out[r] = acc;
    }
    return out;
}

Vector Matrix::apply_left(std::span<const Element> x) const
{
    if (x.size() != rows_)
        throw DimensionMismatch("apply_left: vector length " + std::to_string(x.size()) + " vs " +
                                std::to_string(rows_) + " rows");
    Vector out(cols_);
    if (cols_ == 0)
        return out;
    for (std::size_t r = 0; r < rows_; ++r)
        field_->axpy(out, x[r], row(r));
    return out;
}

bool Matrix::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](Element e) { return e.is_zero(); });
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Echelon rref(Matrix m)
{
    const Field& f = m.field();
    Echelon out;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t pr = lead;
        while (pr < m.rows() && m(pr, col).is_zero())
            ++pr;
        if (pr == m.rows())
            continue;
        if (pr != lead)
            std::swap_ranges(m.row(pr).begin(), m.row(pr).end(), m.row(lead).begin());
        const Element s = f.inv(m(lead, col));
        for (auto& e : m.row(lead))
            e = f.mul(e, s);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, col).is_zero())
                continue;
            f.axpy(m.row(r), f.neg(m(r, col)), m.row(lead));
        }
        out.pivots.push_back(col);
        ++lead;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m)
{
    if (m.empty())
        return 0;
    return rref(m).rank();
}

Subspace::Subspace(const Field& field, std::size_t ambient)
    : field_(&field), ambient_(ambient), basis_(field, 0, ambient)
{
}

Subspace Subspace::span(const Matrix& rows)
{
    Subspace s(rows.field(), rows.cols());
    if (rows.rows() == 0)
        return s;
    Echelon e = rref(rows);
    std::vector<std::size_t> keep(e.rank());
    for (std::size_t i = 0; i < keep.size(); ++i)
        keep[i] = i;
    s.basis_ = e.reduced.select_rows(keep);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::full(const Field& field, std::size_t ambient)
{
    Subspace s(field, ambient);
    s.basis_ = Matrix::identity(field, ambient);
    s.pivots_.resize(ambient);
    for (std::size_t i = 0; i < ambient; ++i)
        s.pivots_[i] = i;
    return s;
}

std::optional<Vector> Subspace::coordinates(std::span<const Element> v) const
{
    if (v.size() != ambient_)
        throw DimensionMismatch("subspace ambient dimension mismatch");
    Vector rest(v.begin(), v.end());
    Vector coords(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        const Element c = rest[pivots_[i]];
        coords[i] = c;
        if (!c.is_zero())
            field_->axpy(rest, field_->neg(c), basis_.row(i));
    }
    if (!std::all_of(rest.begin(), rest.end(), [](Element e) { return e.is_zero(); }))
        return std::nullopt;
    return coords;
}

bool Subspace::contains(std::span<const Element> v) const
{
    return coordinates(v).has_value();
}

bool Subspace::contains(const Subspace& other) const
{
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i)))
            return false;
    return true;
}

bool operator==(const Subspace& a, const Subspace& b)
{
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel(const Matrix& m)
{
    const Field& f = m.field();
    Subspace out(f, m.cols());
    if (m.cols() == 0)
        return out;
    if (m.rows() == 0)
        return Subspace::full(f, m.cols());
    const Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots)
        is_pivot[p] = true;
    Matrix basis(f, 0, m.cols());
    Vector v(m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::fill(v.begin(), v.end(), Element{});
        v[free] = Field::one();
        for (std::size_t i = 0; i < e.rank(); ++i)
            v[e.pivots[i]] = f.neg(e.reduced(i, free));
        basis.append_row(v);
    }
    return Subspace::span(basis);
}

Subspace left_kernel(const Matrix& m)
{
    return kernel(m.transpose());
}

std::optional<Vector> solve_particular(const Matrix& m, std::span<const Element> b)
{
    if (b.size() != m.rows())
        throw DimensionMismatch("solve_particular: rhs length mismatch");
    const Field& f = m.field();
    Matrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::copy(m.row(r).begin(), m.row(r).end(), aug.row(r).begin());
        aug(r, m.cols()) = b[r];
    }
    const Echelon e = rref(std::move(aug));
    Vector x(m.cols());
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (e.pivots[i] == m.cols())
            return std::nullopt;
        x[e.pivots[i]] = e.reduced(i, m.cols());
    }
    return x;
}

Matrix inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const Field& f = m.field();
    Matrix aug(f, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(m.row(r).begin(), m.row(r).end(), aug.row(r).begin());
        aug(r, n + r) = Field::one();
    }
    const Echelon e = rref(std::move(aug));
    if (e.rank() < n || e.pivots[n - 1] != n - 1)
        throw SingularMatrix("matrix is not invertible");
    Matrix inv(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        std::copy_n(e.reduced.row(r).begin() + static_cast<std::ptrdiff_t>(n), n, inv.row(r).begin());
    return inv;
}

Subspace intersect(const Subspace& s, const Subspace& t)
{
    if (s.ambient() != t.ambient())
        throw DimensionMismatch("intersect: ambient dimensions differ");
    const Field& f = s.field();
    if (s.dim() == 0 || t.dim() == 0)
        return Subspace(f, s.ambient());
    Matrix stacked(f, 0, s.ambient());
    for (std::size_t i = 0; i < s.dim(); ++i)
        stacked.append_row(s.basis().row(i));
    for (std::size_t i = 0; i < t.dim(); ++i)
        stacked.append_row(t.basis().row(i));
    // a*S + b*T = 0  =>  a*S lies in both.
    const Subspace rel = left_kernel(stacked);
    Matrix common(f, 0, s.ambient());
    for (std::size_t k = 0; k < rel.dim(); ++k) {
        const Vector r = rel.vector(k);
        Vector a(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(s.dim()));
        common.append_row(s.basis().apply_left(a));
    }
    return Subspace::span(common);
}

Subspace sum(const Subspace& s, const Subspace& t)
{
    if (s.ambient() != t.ambient())
        throw DimensionMismatch("sum: ambient dimensions differ");
    Matrix stacked(s.field(), 0, s.ambient());
    for (std::size_t i = 0; i < s.dim(); ++i)
        stacked.append_row(s.basis().row(i));
    for (std::size_t i = 0; i < t.dim(); ++i)
        stacked.append_row(t.basis().row(i));
    return Subspace::span(stacked);
}

Subspace complement_in(const Subspace& s, const Subspace& t)
{
    if (s.ambient() != t.ambient())
        throw DimensionMismatch("complement_in: ambient dimensions differ");
    if (!t.contains(s))
        throw NotSubspace("complement_in: S is not contained in T");
    std::vector<bool> taken(s.ambient(), false);
    for (std::size_t p : s.pivots())
        taken[p] = true;
    Matrix rows(t.field(), 0, t.ambient());
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (!taken[t.pivots()[i]])
            rows.append_row(t.basis().row(i));
    return Subspace::span(rows);
}

} // namespace agkey::linalg
