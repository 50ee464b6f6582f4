#pragma once

#include <array>

#include "abraham/vec3.hpp"

namespace abraham {

/// Proper rotation matrix. Construct through make_rotation() or exp_map() so the
/// orthogonality and determinant invariants are enforced.
struct Rotation {
    Mat3 m = Mat3::identity();

    Vec3 operator*(const Vec3& v) const { return m * v; }
    Rotation operator*(const Rotation& o) const { return Rotation{m * o.m}; }
    Rotation inverse() const { return Rotation{m.transposed()}; }
};

/// Structure constants c^k_ij of the right-invariant frame on SO(3).
///
/// Index convention follows the Poincare momentum balance
///   d/dt dL/dw_k = sum_{ij} c^j_{ik} w_i dL/dw_j,
/// i.e. coeff(k, i, j) is c^k_ij with all indices 1-based.
struct StructureConstants {
    std::array<double, 27> c{};

    double& coeff(int k, int i, int j) { return c[9 * (k - 1) + 3 * (i - 1) + (j - 1)]; }
    double coeff(int k, int i, int j) const { return c[9 * (k - 1) + 3 * (i - 1) + (j - 1)]; }

    /// sum_{ij} c^j_{ik} w_i m_j for a fixed lower index k (1-based).
    double contract(int k, const Vec3& w, const Vec3& m) const {
        double s = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) s += coeff(j, i, k) * w[i - 1] * m[j - 1];
        return s;
    }

    Vec3 contract(const Vec3& w, const Vec3& m) const {
        return {contract(1, w, m), contract(2, w, m), contract(3, w, m)};
    }
};

/// hat(w): the skew matrix with hat(w) v = w ^ v.
Mat3 hat(const Vec3& w);

/// Inverse of hat. Throws NonSkewInput if the symmetric part of W exceeds
/// tolerance 1e-10 (scaled by max(1, |W|_inf)); the symmetric part is discarded.
Vec3 vee(const Mat3& W);

/// Rodrigues exponential of dt*w; always returns an exact rotation
/// (re-orthonormalized against rounding drift).
Rotation exp_map(const Vec3& w, double dt);

Mat3 matrix_commutator(const Mat3& A, const Mat3& B);

/// Commutator table of the right-invariant fields v_k:
/// [v1,v2] = -v3, [v3,v1] = -v2, [v2,v3] = -v1.
/// Note the sign flip against the matrix commutators of the algebra basis;
/// right-invariant field commutators carry the opposite sign.
StructureConstants structure_constants();

/// Sign-flipped table (the matrix-commutator convention). Used only as a
/// deliberate tripwire in verification runs; feeding it to the Poincare
/// residual must blow the residual up to O(1).
StructureConstants structure_constants_sign_flipped();

/// w = vee(Rdot R^T). Throws NonSkewInput when Rdot R^T is not skew.
Vec3 angular_velocity_from_frame(const Mat3& R_dot, const Rotation& R);

/// Gram-Schmidt re-orthonormalization; keeps det = +1.
Rotation orthonormalized(const Mat3& m);

inline Rotation make_rotation(const Mat3& m) { return orthonormalized(m); }

/// Left Jacobian of the exponential map: d/dt exp(hat(a(t))) = hat(Jl(a) adot) exp(hat(a)).
Mat3 so3_left_jacobian(const Vec3& a);

}  // namespace abraham
