#pragma once

#include "qdiv/linalg.hpp"

#include <doctest.h>

#include <complex>
#include <initializer_list>

namespace testing {

using qdiv::Complex;
using qdiv::Index;
using qdiv::Matrix;

inline Matrix diag(std::initializer_list<double> v) {
    Matrix m = Matrix::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) {
        m(i, i) = x;
        ++i;
    }
    return m;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline void check_close(const Matrix& got, const Matrix& want, double tol) {
    REQUIRE(got.rows() == want.rows());
    REQUIRE(got.cols() == want.cols());
    CHECK(max_abs(got - want) < tol);
}

// The pair used for most closed-form examples.
inline Matrix half_half() { return diag({0.5, 0.5}); }
inline Matrix quarter() { return diag({0.25, 0.75}); }

// Fixed complex pair shared with the mpmath generator.
inline Matrix oracle_a() {
    Matrix m(2, 2);
    m << 0.6, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.4;
    return m;
}
inline Matrix oracle_b() {
    Matrix m(2, 2);
    m << 0.3, -0.1, -0.1, 0.7;
    return m;
}
inline Matrix oracle_a3() {
    Matrix m(3, 3);
    m << 0.5, 0.1, Complex(0, 0.05), 0.1, 0.3, 0.02, Complex(0, -0.05), 0.02, 0.2;
    return m;
}
// Rank two: 0.7 v v^* + 0.3 e3 e3^* with v = (1, 1, 0)/sqrt(2).
inline Matrix oracle_b3() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.35;
    m(2, 2) = 0.3;
    return m;
}

} // namespace testing
