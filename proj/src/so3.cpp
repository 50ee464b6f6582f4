#include "abraham/so3.hpp"

#include <cmath>

#include "abraham/errors.hpp"

namespace abraham {

Mat3 hat(const Vec3& w) {
    Mat3 m;
    m(0, 1) = -w.z;
    m(0, 2) = w.y;
    m(1, 0) = w.z;
    m(1, 2) = -w.x;
    m(2, 0) = -w.y;
    m(2, 1) = w.x;
    return m;
}

Vec3 vee(const Mat3& W) {
    const double scale = std::max(1.0, W.max_abs());
    double sym = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sym = std::max(sym, std::abs(W(i, j) + W(j, i)) * 0.5);
    if (sym > 1e-10 * scale)
        throw NonSkewInput("vee: symmetric part " + std::to_string(sym) + " exceeds tolerance");
    // Antisymmetrize before reading off, so near-skew inputs map cleanly.
    return {0.5 * (W(2, 1) - W(1, 2)), 0.5 * (W(0, 2) - W(2, 0)), 0.5 * (W(1, 0) - W(0, 1))};
}

Mat3 matrix_commutator(const Mat3& A, const Mat3& B) { return A * B - B * A; }

Rotation orthonormalized(const Mat3& m) {
    // Modified Gram-Schmidt on rows.
    Vec3 r0{m(0, 0), m(0, 1), m(0, 2)};
    Vec3 r1{m(1, 0), m(1, 1), m(1, 2)};
    r0 = r0 / norm(r0);
    r1 = r1 - dot(r1, r0) * r0;
    r1 = r1 / norm(r1);
    Vec3 r2 = cross(r0, r1);
    Mat3 out;
    for (int j = 0; j < 3; ++j) {
        out(0, j) = r0[j];
        out(1, j) = r1[j];
        out(2, j) = r2[j];
    }
    return Rotation{out};
}

Rotation exp_map(const Vec3& w, double dt) {
    const Vec3 a = w * dt;
    const double theta2 = norm2(a);
    const Mat3 K = hat(a);
    double c1, c2;  // sin(t)/t, (1-cos(t))/t^2
    if (theta2 < 1e-16) {
        c1 = 1.0 - theta2 / 6.0;
        c2 = 0.5 - theta2 / 24.0;
    } else {
        const double theta = std::sqrt(theta2);
        c1 = std::sin(theta) / theta;
        c2 = (1.0 - std::cos(theta)) / theta2;
    }
    const Mat3 m = Mat3::identity() + c1 * K + c2 * (K * K);
    return orthonormalized(m);
}

StructureConstants structure_constants() {
    StructureConstants sc;
    // [v1,v2] = -v3 etc., antisymmetric in the lower pair.
    sc.coeff(3, 1, 2) = -1.0;
    sc.coeff(3, 2, 1) = 1.0;
    sc.coeff(2, 3, 1) = -1.0;
    sc.coeff(2, 1, 3) = 1.0;
    sc.coeff(1, 2, 3) = -1.0;
    sc.coeff(1, 3, 2) = 1.0;
    return sc;
}

StructureConstants structure_constants_sign_flipped() {
    StructureConstants sc = structure_constants();
    for (double& v : sc.c) v = -v;
    return sc;
}

Vec3 angular_velocity_from_frame(const Mat3& R_dot, const Rotation& R) {
    return vee(R_dot * R.m.transposed());
}

Mat3 so3_left_jacobian(const Vec3& a) {
    const double theta2 = norm2(a);
    const Mat3 K = hat(a);
    double c2, c3;  // (1-cos t)/t^2, (t-sin t)/t^3
    if (theta2 < 1e-16) {
        c2 = 0.5 - theta2 / 24.0;
        c3 = 1.0 / 6.0 - theta2 / 120.0;
    } else {
        const double theta = std::sqrt(theta2);
        c2 = (1.0 - std::cos(theta)) / theta2;
        c3 = (theta - std::sin(theta)) / (theta2 * theta);
    }
    return Mat3::identity() + c2 * K + c3 * (K * K);
}

}  // namespace abraham
