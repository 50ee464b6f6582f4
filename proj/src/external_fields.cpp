#include "abraham/external_fields.hpp"

#include "abraham/errors.hpp"

namespace abraham {

ExternalField::ExternalField(ExternalKind kind, std::vector<double> params, int axis)
    : kind_(kind), params_(std::move(params)), axis_(axis) {
    if (axis_ < 0 || axis_ > 2) throw ConfigError("external.axis must be x, y or z");
}

std::pair<double, Vec3> ExternalField::potentials(const Vec3& x, double) const {
    switch (kind_) {
        case ExternalKind::zero:
            return {0.0, Vec3{}};
        case ExternalKind::uniform_b: {
            const Vec3 b{0.0, 0.0, param(0)};
            return {0.0, 0.5 * cross(b, x)};
        }
        case ExternalKind::axial: {
            const double r2 = x.x * x.x + x.y * x.y;
            return {param(0) * r2, param(1) * Vec3{-x.y, x.x, 0.0}};
        }
        case ExternalKind::translation_invariant: {
            const double c = x[axis_];
            return {param(0) * c * c, Vec3{}};
        }
        case ExternalKind::custom_static:
            return {param(0) * x.x * x.x + param(1) * x.y * x.y + param(2) * x.z * x.z, Vec3{}};
    }
    return {0.0, Vec3{}};
}

std::pair<Vec3, Vec3> ExternalField::fields(const Vec3& x, double) const {
    switch (kind_) {
        case ExternalKind::zero:
            return {Vec3{}, Vec3{}};
        case ExternalKind::uniform_b:
            // curl((1/2) b ^ x) = b for constant b; the potential is static.
            return {Vec3{}, Vec3{0.0, 0.0, param(0)}};
        case ExternalKind::axial:
            return {-2.0 * param(0) * Vec3{x.x, x.y, 0.0}, Vec3{0.0, 0.0, 2.0 * param(1)}};
        case ExternalKind::translation_invariant: {
            Vec3 e{};
            e[axis_] = -2.0 * param(0) * x[axis_];
            return {e, Vec3{}};
        }
        case ExternalKind::custom_static:
            return {Vec3{-2.0 * param(0) * x.x, -2.0 * param(1) * x.y, -2.0 * param(2) * x.z},
                    Vec3{}};
    }
    return {Vec3{}, Vec3{}};
}

Mat3 ExternalField::vector_potential_gradient(const Vec3&) const {
    Mat3 grad;  // all presets have affine A, the gradient is constant
    switch (kind_) {
        case ExternalKind::uniform_b: {
            // A = (1/2)(-b y, b x, 0)
            const double b = param(0);
            grad(0, 1) = 0.5 * b;   // dA_y/dx
            grad(1, 0) = -0.5 * b;  // dA_x/dy
            break;
        }
        case ExternalKind::axial: {
            const double a = param(1);
            grad(0, 1) = a;
            grad(1, 0) = -a;
            break;
        }
        default:
            break;
    }
    return grad;
}

ExternalKind ExternalField::kind_from_string(const std::string& s) {
    if (s == "zero") return ExternalKind::zero;
    if (s == "uniform_b") return ExternalKind::uniform_b;
    if (s == "axial") return ExternalKind::axial;
    if (s == "translation_invariant") return ExternalKind::translation_invariant;
    if (s == "custom_static") return ExternalKind::custom_static;
    throw ConfigError("unknown external.kind '" + s + "'");
}

}  // namespace abraham
