// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Dense exact linear algebra over a finite field.
//
// Pivoting is deterministic (first nonzero entry, left to right), so the
// reduced row echelon form is canonical: equal row spaces give identical
// reduced matrices, and every basis handed out below is reproducible.

#pragma once

#include "agkey/gf.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace agkey::linalg {

using gf::Element;
using gf::Field;
using Vector = std::vector<Element>;

class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& field, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& field, std::size_t n);
    // Every row must have `cols` entries.
    static Matrix from_rows(const Field& field, const std::vector<Vector>& rows, std::size_t cols);

    const Field& field() const noexcept { return *field_; }
    const Field* field_ptr() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Element& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Element operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Element> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Element> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
    Vector col_vector(std::size_t c) const;

    void append_row(std::span<const Element> values);

    Matrix transpose() const;
    Matrix select_rows(std::span<const std::size_t> idx) const;
    Matrix select_cols(std::span<const std::size_t> idx) const;
    // Rows [r0, r0+nr), columns [c0, c0+nc); out-of-range entries read as 0.
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    // M x
    Vector apply(std::span<const Element> x) const;
    // x^T M
    Vector apply_left(std::span<const Element> x) const;

    bool is_zero() const noexcept;
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    const Field* field_ = nullptr;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Element> data_;
};

struct Echelon {
    Matrix reduced;                  // same shape as the input
    std::vector<std::size_t> pivots; // pivot column of row i, i < rank
    std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

// Row space of a matrix, kept in canonical reduced form.
class Subspace {
public:
    Subspace() = default;
    Subspace(const Field& field, std::size_t ambient);

    static Subspace span(const Matrix& rows);
    static Subspace full(const Field& field, std::size_t ambient);

    const Field& field() const noexcept { return *field_; }
    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vector vector(std::size_t i) const { return basis_.row_vector(i); }

    bool contains(std::span<const Element> v) const;
    bool contains(const Subspace& other) const;
    // Coordinates of v in terms of basis(); nullopt when v is outside.
    std::optional<Vector> coordinates(std::span<const Element> v) const;

    friend bool operator==(const Subspace& a, const Subspace& b);

private:
    const Field* field_ = nullptr;
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

// {x : M x = 0}
Subspace kernel(const Matrix& m);
// {x : x^T M = 0}
Subspace left_kernel(const Matrix& m);

// Some x with M x = b, zero in every non-pivot coordinate; nullopt when b is
// not in the column space.
std::optional<Vector> solve_particular(const Matrix& m, std::span<const Element> b);

// Throws DimensionMismatch for non-square input, SingularMatrix otherwise.
Matrix inverse(const Matrix& m);

Subspace intersect(const Subspace& s, const Subspace& t);
Subspace sum(const Subspace& s, const Subspace& t);
// Complement of S inside T spanned by the reduced basis rows of T whose
// pivot is not a pivot of S. Throws NotSubspace when S is not inside T.
Subspace complement_in(const Subspace& s, const Subspace& t);

enum class MatmulStrategy { Naive, Strassen, Auto };

inline constexpr std::size_t kDefaultStrassenCrossover = 64;

// Serial triple loop kept as the reference for the parallel kernels.
Matrix matmul_reference(const Matrix& a, const Matrix& b);
// Row-parallel (OpenMP) naive product.
Matrix matmul_naive(const Matrix& a, const Matrix& b);
// Pads to a power-of-two square and recurses above `crossover`.
Matrix matmul_strassen(const Matrix& a, const Matrix& b,
                       std::size_t crossover = kDefaultStrassenCrossover);
// Auto picks Strassen when every dimension reaches twice the crossover.
// crossover = 0 means the process-wide setting below.
Matrix matmul(const Matrix& a, const Matrix& b, MatmulStrategy strategy = MatmulStrategy::Auto,
              std::size_t crossover = 0);

// Process-wide crossover used by matmul; starts at kDefaultStrassenCrossover.
std::size_t strassen_crossover() noexcept;
void set_strassen_crossover(std::size_t n) noexcept;

} // namespace agkey::linalg
