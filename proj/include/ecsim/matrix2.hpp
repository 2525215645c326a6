#pragma once

// Fixed-size 2x2 complex matrix algebra. Everything the evolution equations
// need lives here: adjoint, determinant, trace, and the adjugate (which makes
// Det(M†M)·M†⁻¹ polynomial and therefore finite at singular M).

#include <array>
#include <cmath>
#include <complex>

namespace ecsim {

using cplx = std::complex<double>;

struct Mat2 {
    // row-major: e[0]=m00, e[1]=m01, e[2]=m10, e[3]=m11
    std::array<cplx, 4> e{};

    constexpr cplx& operator()(int r, int c) { return e[2 * r + c]; }
    constexpr const cplx& operator()(int r, int c) const { return e[2 * r + c]; }

    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 identity() { return {{cplx{1.0}, cplx{}, cplx{}, cplx{1.0}}}; }
    static constexpr Mat2 diag(cplx a, cplx d) { return {{a, cplx{}, cplx{}, d}}; }
    // sigma = diag(1, -1)
    static constexpr Mat2 sigma_z() { return diag(cplx{1.0}, cplx{-1.0}); }

    constexpr cplx trace() const { return e[0] + e[3]; }
    constexpr cplx det() const { return e[0] * e[3] - e[1] * e[2]; }

    Mat2 conjugate() const { return {{std::conj(e[0]), std::conj(e[1]), std::conj(e[2]), std::conj(e[3])}}; }
    constexpr Mat2 transpose() const { return {{e[0], e[2], e[1], e[3]}}; }
    Mat2 adjoint() const { return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}}; }

    // adj(M) with M·adj(M) = det(M)·I
    constexpr Mat2 adjugate() const { return {{e[3], -e[1], -e[2], e[0]}}; }

    double frobenius_norm() const {
        return std::sqrt(std::norm(e[0]) + std::norm(e[1]) + std::norm(e[2]) + std::norm(e[3]));
    }

    bool is_finite() const {
        for (const auto& v : e) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    }
};

constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}

constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
}

constexpr Mat2 operator-(const Mat2& a) {
    return {{-a.e[0], -a.e[1], -a.e[2], -a.e[3]}};
}

constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
             a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
}

constexpr Mat2 operator*(cplx s, const Mat2& a) {
    return {{s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]}};
}

constexpr Mat2 operator*(const Mat2& a, cplx s) { return s * a; }
constexpr Mat2 operator*(double s, const Mat2& a) { return cplx{s} * a; }
constexpr Mat2 operator*(const Mat2& a, double s) { return cplx{s} * a; }

inline double frobenius_distance(const Mat2& a, const Mat2& b) { return (a - b).frobenius_norm(); }

// Eigenvalues of a Hermitian matrix, ascending. Uses the trace/determinant
// quadratic; the discriminant form avoids cancellation for near-equal pairs.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
    const double a = m.e[0].real();
    const double d = m.e[3].real();
    const double half_tr = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(m.e[1]));
    return {half_tr - r, half_tr + r};
}

}  // namespace ecsim
