#pragma once

#include "abraham/charge_profile.hpp"
#include "abraham/external_fields.hpp"
#include "abraham/grid.hpp"
#include "abraham/so3.hpp"
#include "abraham/vec3.hpp"

namespace abraham {

/// Particle position, velocity, rotation and angular velocity "in space".
struct BodyState {
    Vec3 q;
    Vec3 v;
    Rotation R;
    Vec3 w;
};

struct BodyDerivative {
    Vec3 q_dot;
    Vec3 v_dot;
    Vec3 w_dot;
    Mat3 R_dot;
};

/// Grid quadrature of the Lorentz force and torque densities,
///   F = int [E_tot + (v + w ^ d) ^ B_tot] rho(d) dx,
///   T = int d ^ [E_tot + (v + w ^ d) ^ B_tot] rho(d) dx,   d = x - q.
/// self_field gates the grid (E, B) contribution; external fields are always
/// included and evaluated analytically at q + d.
struct ForceTorque {
    Vec3 force;
    Vec3 torque;
};
ForceTorque lorentz_force_torque(const FieldState& f, const ExternalField& ext,
                                 const ChargeProfile& p, const GridSpec& g, const BodyState& b,
                                 double t, bool self_field = true);

Vec3 lorentz_force(const FieldState& f, const ExternalField& ext, const ChargeProfile& p,
                   const GridSpec& g, const BodyState& b, double t, bool self_field = true);

Vec3 lorentz_torque(const FieldState& f, const ExternalField& ext, const ChargeProfile& p,
                    const GridSpec& g, const BodyState& b, double t, bool self_field = true);

/// q_dot = v, v_dot = F (m = 1), w_dot = T / I, R_dot = hat(w) R.
BodyDerivative body_rhs(const FieldState& f, const ExternalField& ext, const ChargeProfile& p,
                        const GridSpec& g, const BodyState& b, double inertia, double t,
                        bool self_field = true, double force_scale = 1.0);

}  // namespace abraham
