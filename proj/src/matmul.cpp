// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/errors.hpp"
#include "agkey/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <string>

namespace agkey::linalg {

namespace {

std::atomic<std::size_t> g_crossover{kDefaultStrassenCrossover};

void check_dims(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

Matrix add(const Matrix& a, const Matrix& b)
{
    const Field& f = a.field();
    Matrix c(f, a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto ar = a.row(r), br = b.row(r);
        auto cr = c.row(r);
        for (std::size_t j = 0; j < a.cols(); ++j)
            cr[j] = f.add(ar[j], br[j]);
    }
    return c;
}

Matrix sub(const Matrix& a, const Matrix& b)
{
    const Field& f = a.field();
    Matrix c(f, a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto ar = a.row(r), br = b.row(r);
        auto cr = c.row(r);
        for (std::size_t j = 0; j < a.cols(); ++j)
            cr[j] = f.sub(ar[j], br[j]);
    }
    return c;
}

// Serial row-axpy product used below the crossover.
Matrix naive_serial(const Matrix& a, const Matrix& b)
{
    const Field& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            f.axpy(c.row(i), a(i, k), b.row(k));
    return c;
}

Matrix strassen_square(const Matrix& a, const Matrix& b, std::size_t crossover, bool top)
{
    const std::size_t n = a.rows();
    if (n <= crossover || n % 2 != 0)
        return top ? matmul_naive(a, b) : naive_serial(a, b);
    const std::size_t h = n / 2;
    const Matrix a11 = a.block(0, 0, h, h), a12 = a.block(0, h, h, h);
    const Matrix a21 = a.block(h, 0, h, h), a22 = a.block(h, h, h, h);
    const Matrix b11 = b.block(0, 0, h, h), b12 = b.block(0, h, h, h);
    const Matrix b21 = b.block(h, 0, h, h), b22 = b.block(h, h, h, h);

    Matrix m[7];
    // The seven products are independent; only the top level fans out.
#pragma omp parallel for schedule(dynamic) if (top)
    for (int k = 0; k < 7; ++k) {
        switch (k) {
        case 0: m[0] = strassen_square(add(a11, a22), add(b11, b22), crossover, false); break;
        case 1: m[1] = strassen_square(add(a21, a22), b11, crossover, false); break;
        case 2: m[2] = strassen_square(a11, sub(b12, b22), crossover, false); break;
        case 3: m[3] = strassen_square(a22, sub(b21, b11), crossover, false); break;
        case 4: m[4] = strassen_square(add(a11, a12), b22, crossover, false); break;
        case 5: m[5] = strassen_square(sub(a21, a11), add(b11, b12), crossover, false); break;
        case 6: m[6] = strassen_square(sub(a12, a22), add(b21, b22), crossover, false); break;
        }
    }

    const Matrix c11 = add(sub(add(m[0], m[3]), m[4]), m[6]);
    const Matrix c12 = add(m[2], m[4]);
    const Matrix c21 = add(m[1], m[3]);
    const Matrix c22 = add(add(sub(m[0], m[1]), m[2]), m[5]);

    Matrix c(a.field(), n, n);
    for (std::size_t r = 0; r < h; ++r) {
        std::copy(c11.row(r).begin(), c11.row(r).end(), c.row(r).begin());
        std::copy(c12.row(r).begin(), c12.row(r).end(), c.row(r).begin() + static_cast<std::ptrdiff_t>(h));
        std::copy(c21.row(r).begin(), c21.row(r).end(), c.row(h + r).begin());
        std::copy(c22.row(r).begin(), c22.row(r).end(), c.row(h + r).begin() + static_cast<std::ptrdiff_t>(h));
    }
    return c;
}

} // namespace

Matrix matmul_reference(const Matrix& a, const Matrix& b)
{
    check_dims(a, b);
    const Field& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Element acc{};
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc = f.add(acc, f.mul(a(i, k), b(k, j)));
            c(i, j) = acc;
        }
    return c;
}

Matrix matmul_naive(const Matrix& a, const Matrix& b)
{
    check_dims(a, b);
    const Field& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    const auto rows = static_cast<long long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        for (std::size_t k = 0; k < a.cols(); ++k)
            f.axpy(c.row(ii), a(ii, k), b.row(k));
    }
    return c;
}

Matrix matmul_strassen(const Matrix& a, const Matrix& b, std::size_t crossover)
{
    check_dims(a, b);
    if (crossover < 1)
        crossover = 1;
    const std::size_t n = next_pow2(std::max({a.rows(), a.cols(), b.cols(), std::size_t{1}}));
    const Matrix pa = a.block(0, 0, n, n);
    const Matrix pb = b.block(0, 0, n, n);
    const Matrix pc = strassen_square(pa, pb, crossover, true);
    return pc.block(0, 0, a.rows(), b.cols());
}

std::size_t strassen_crossover() noexcept
{
    return g_crossover.load(std::memory_order_relaxed);
}

void set_strassen_crossover(std::size_t n) noexcept
{
    g_crossover.store(std::max<std::size_t>(n, 1), std::memory_order_relaxed);
}

Matrix matmul(const Matrix& a, const Matrix& b, MatmulStrategy strategy, std::size_t crossover)
{
    if (crossover == 0)
        crossover = strassen_crossover();
    switch (strategy) {
    case MatmulStrategy::Naive:
        return matmul_naive(a, b);
    case MatmulStrategy::Strassen:
        return matmul_strassen(a, b, crossover);
    case MatmulStrategy::Auto:
        break;
    }
    const std::size_t lo = std::min({a.rows(), a.cols(), b.cols()});
    if (lo >= 2 * crossover)
        return matmul_strassen(a, b, crossover);
    return matmul_naive(a, b);
}

} // namespace agkey::linalg
