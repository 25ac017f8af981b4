#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ansatzlab/errors.hpp"

namespace ansatzlab {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Dense square complex matrix, row-major. Small dimensions only (<= 2^12).
struct CMatrix {
    int dim = 0;
    std::vector<cxd> a;

    CMatrix() = default;
    explicit CMatrix(int d) : dim(d), a(static_cast<size_t>(d) * d, cxd(0.0, 0.0)) {}

    cxd& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const cxd& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

    static CMatrix identity(int d) {
        CMatrix m(d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline CMatrix mul(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) fail(ErrorKind::DimensionMismatch, "matrix product");
    const int d = x.dim;
    CMatrix z(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const cxd xik = x.at(i, k);
            if (xik == cxd(0.0, 0.0)) continue;
            const cxd* yrow = &y.a[static_cast<size_t>(k) * d];
            cxd* zrow = &z.a[static_cast<size_t>(i) * d];
            for (int j = 0; j < d; ++j) zrow[j] += xik * yrow[j];
        }
    }
    return z;
}

inline CMatrix adjoint(const CMatrix& x) {
    CMatrix z(x.dim);
    for (int i = 0; i < x.dim; ++i)
        for (int j = 0; j < x.dim; ++j) z.at(j, i) = std::conj(x.at(i, j));
    return z;
}

inline double frobenius_norm(const CMatrix& x) {
    double s = 0.0;
    for (const cxd& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

inline double frobenius_distance(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) fail(ErrorKind::DimensionMismatch, "frobenius_distance");
    double s = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) s += std::norm(x.a[i] - y.a[i]);
    return std::sqrt(s);
}

/// ||U'U - I||_F, the unitarity defect.
inline double unitarity_defect(const CMatrix& u) {
    return frobenius_distance(mul(adjoint(u), u), CMatrix::identity(u.dim));
}

/// min over phi of ||U - e^{i phi} V||_F, in closed form via |tr(U'V)|.
inline double phase_distance(const CMatrix& u, const CMatrix& v) {
    if (u.dim != v.dim) fail(ErrorKind::DimensionMismatch, "phase_distance");
    cxd tr(0.0, 0.0);
    for (int i = 0; i < u.dim; ++i)
        for (int k = 0; k < u.dim; ++k) tr += std::conj(u.at(k, i)) * v.at(k, i);
    const double val = 2.0 * u.dim - 2.0 * std::abs(tr);
    return std::sqrt(std::max(0.0, val));
}

// -- 2x2 rotation blocks ------------------------------------------------------

struct Mat2 {
    cxd m00, m01, m10, m11;
};

inline Mat2 rx_mat(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {cxd(c, 0), cxd(0, -s), cxd(0, -s), cxd(c, 0)};
}

inline Mat2 ry_mat(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {cxd(c, 0), cxd(-s, 0), cxd(s, 0), cxd(c, 0)};
}

inline Mat2 rz_mat(double theta) {
    return {std::polar(1.0, -theta / 2.0), cxd(0, 0), cxd(0, 0), std::polar(1.0, theta / 2.0)};
}

inline Mat2 x_mat() { return {cxd(0, 0), cxd(1, 0), cxd(1, 0), cxd(0, 0)}; }

inline Mat2 mul2(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

/// ZXZ Euler angles: finds (alpha, beta, gamma, phase) with
/// e^{i phase} RZ(gamma) RX(beta) RZ(alpha) = U and beta in [0, pi].
struct EulerZxz {
    double alpha, beta, gamma, phase;
};

inline EulerZxz euler_zxz(const Mat2& u) {
    // unitarity check: U'U = I within 1e-9
    const cxd g00 = std::conj(u.m00) * u.m00 + std::conj(u.m10) * u.m10;
    const cxd g01 = std::conj(u.m00) * u.m01 + std::conj(u.m10) * u.m11;
    const cxd g11 = std::conj(u.m01) * u.m01 + std::conj(u.m11) * u.m11;
    const double defect = std::sqrt(std::norm(g00 - 1.0) + 2.0 * std::norm(g01) + std::norm(g11 - 1.0));
    if (defect > 1e-8) fail(ErrorKind::NotUnitary, "euler_zxz input");

    const cxd det = u.m00 * u.m11 - u.m01 * u.m10;
    const double phase = 0.5 * std::arg(det);
    const cxd ip = std::polar(1.0, -phase);
    const cxd v00 = ip * u.m00, v01 = ip * u.m01;

    const double beta = 2.0 * std::atan2(std::abs(v01), std::abs(v00));
    double alpha = 0.0, gamma = 0.0;
    const bool have_c = std::abs(v00) > 1e-12;
    const bool have_s = std::abs(v01) > 1e-12;
    if (have_c && have_s) {
        const double sum = -2.0 * std::arg(v00);        // alpha + gamma
        const double diff = 2.0 * std::arg(v01) + kPi;  // alpha - gamma
        alpha = 0.5 * (sum + diff);
        gamma = 0.5 * (sum - diff);
    } else if (have_c) {
        alpha = -2.0 * std::arg(v00);  // pure RZ, put it all in alpha
    } else {
        alpha = 2.0 * std::arg(v01) + kPi;  // beta = pi
    }
    return {alpha, beta, gamma, phase};
}

inline Mat2 euler_zxz_reconstruct(const EulerZxz& e) {
    Mat2 m = mul2(rz_mat(e.gamma), mul2(rx_mat(e.beta), rz_mat(e.alpha)));
    const cxd p = std::polar(1.0, e.phase);
    return {p * m.m00, p * m.m01, p * m.m10, p * m.m11};
}

inline double mat2_distance(const Mat2& a, const Mat2& b) {
    return std::sqrt(std::norm(a.m00 - b.m00) + std::norm(a.m01 - b.m01) + std::norm(a.m10 - b.m10) +
                     std::norm(a.m11 - b.m11));
}

}  // namespace ansatzlab
