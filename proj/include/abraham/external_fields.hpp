#pragma once

#include <string>
#include <vector>

#include "abraham/vec3.hpp"

namespace abraham {

enum class ExternalKind { zero, uniform_b, axial, translation_invariant, custom_static };

/// Analytic external potentials and their derived fields. All presets are
/// static; E_ext = -grad A0_ext and B_ext = curl A_ext are evaluated in closed
/// form at the requested point, never from a stored grid.
///
/// Presets:
///   zero                  A0 = 0, A = 0.
///   uniform_b             symmetric gauge, A = (1/2)(b e_z) ^ x; B = b e_z.
///   axial                 A0 = p0 (x^2 + y^2), A = p1 (-y, x, 0); axially
///                         symmetric about z.
///   translation_invariant A0 = p0 * x_axis^2, depends on the chosen axis
///                         coordinate only (invariant along the other two).
///   custom_static         A0 = p0 x^2 + p1 y^2 + p2 z^2, A = 0.
class ExternalField {
public:
    ExternalField() = default;
    ExternalField(ExternalKind kind, std::vector<double> params, int axis = 2);

    static ExternalField zero() { return ExternalField(); }
    static ExternalField uniform_b(double b) { return ExternalField(ExternalKind::uniform_b, {b}); }

    ExternalKind kind() const { return kind_; }
    int axis() const { return axis_; }
    const std::vector<double>& params() const { return params_; }
    bool is_zero() const { return kind_ == ExternalKind::zero; }

    /// (A0, A) at point x. Static presets ignore t.
    std::pair<double, Vec3> potentials(const Vec3& x, double t = 0.0) const;
    /// (E_ext, B_ext) at point x, analytic derivatives of the potentials.
    std::pair<Vec3, Vec3> fields(const Vec3& x, double t = 0.0) const;

    /// Gradient matrix (dA_j/dx_i) of the external vector potential,
    /// grad_A(x)(i, j) = d A_j / d x_i. Used by the Poincare verifier.
    Mat3 vector_potential_gradient(const Vec3& x) const;

    static ExternalKind kind_from_string(const std::string& s);

private:
    ExternalKind kind_ = ExternalKind::zero;
    std::vector<double> params_;
    int axis_ = 2;  // 0=x, 1=y, 2=z

    double param(std::size_t i) const { return i < params_.size() ? params_[i] : 0.0; }
};

}  // namespace abraham
