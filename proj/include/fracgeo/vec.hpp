#ifndef FRACGEO_VEC_HPP
#define FRACGEO_VEC_HPP

#include <array>
#include <cmath>

#include "fracgeo/common.hpp"

namespace fracgeo {

// Fixed-capacity vector/matrix for n <= 3.  Unused components stay zero so
// generic code can loop to 3 without branching on the dimension.
using Vec = std::array<double, 3>;
using Mat = std::array<std::array<double, 3>, 3>;

inline Vec vec(double x, double y = 0.0, double z = 0.0) { return {x, y, z}; }

inline Vec add(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec scale(double c, const Vec& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline Vec negate(const Vec& a) { return {-a[0], -a[1], -a[2]}; }

inline double dot(const Vec& a, const Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Mat identity_mat() {
    return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

inline Mat diag_mat(double a, double b = 1.0, double c = 1.0) {
    return {{{a, 0, 0}, {0, b, 0}, {0, 0, c}}};
}

inline Vec mat_apply(const Mat& m, const Vec& x) {
    Vec y{};
    for (int i = 0; i < 3; ++i)
        y[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
    return y;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    Mat c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return c;
}

inline Mat transpose(const Mat& a) {
    Mat t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
    return t;
}

// Determinant of the leading n x n block.
inline double det(const Mat& m, int n) {
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Inverse of the leading n x n block; the trailing diagonal is set to 1 so the
// result acts as the identity on unused coordinates.
inline Mat inverse(const Mat& m, int n) {
    double d = det(m, n);
    if (d == 0.0) throw param_error("inverse: singular matrix");
    Mat inv = identity_mat();
    if (n == 1) {
        inv[0][0] = 1.0 / m[0][0];
    } else if (n == 2) {
        inv[0][0] = m[1][1] / d;
        inv[0][1] = -m[0][1] / d;
        inv[1][0] = -m[1][0] / d;
        inv[1][1] = m[0][0] / d;
    } else {
        inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
        inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
        inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
        inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
        inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
        inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
        inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
        inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
        inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    }
    return inv;
}

} // namespace fracgeo

#endif
