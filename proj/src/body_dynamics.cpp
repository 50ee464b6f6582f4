#include "abraham/body_dynamics.hpp"

#include "abraham/errors.hpp"

namespace abraham {

ForceTorque lorentz_force_torque(const FieldState& f, const ExternalField& ext,
                                 const ChargeProfile& p, const GridSpec& g, const BodyState& b,
                                 double t, bool self_field) {
    if (10.0 * p.sigma() > g.L)
        throw ProfileTooWide("profile width 10*sigma exceeds box length L");
    const bool have_ext = !ext.is_zero();
    Vec3 force{}, torque{};
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t i = g.index(ix, iy, iz);
                const Vec3 d = g.min_image(g.node(ix, iy, iz) - b.q);
                const double rho = p.density(d);
                if (rho == 0.0) continue;
                Vec3 E{}, B{};
                if (self_field) {
                    E = f.E.at(i);
                    B = f.B.at(i);
                }
                if (have_ext) {
                    const auto [Ee, Be] = ext.fields(b.q + d, t);
                    E += Ee;
                    B += Be;
                }
                const Vec3 density = (E + cross(b.v + cross(b.w, d), B)) * rho;
                force += density;
                torque += cross(d, density);
            }
    const double vol = g.cell_volume();
    return {force * vol, torque * vol};
}

Vec3 lorentz_force(const FieldState& f, const ExternalField& ext, const ChargeProfile& p,
                   const GridSpec& g, const BodyState& b, double t, bool self_field) {
    return lorentz_force_torque(f, ext, p, g, b, t, self_field).force;
}

Vec3 lorentz_torque(const FieldState& f, const ExternalField& ext, const ChargeProfile& p,
                    const GridSpec& g, const BodyState& b, double t, bool self_field) {
    return lorentz_force_torque(f, ext, p, g, b, t, self_field).torque;
}

BodyDerivative body_rhs(const FieldState& f, const ExternalField& ext, const ChargeProfile& p,
                        const GridSpec& g, const BodyState& b, double inertia, double t,
                        bool self_field, double force_scale) {
    const ForceTorque ft = lorentz_force_torque(f, ext, p, g, b, t, self_field);
    BodyDerivative out;
    out.q_dot = b.v;
    out.v_dot = ft.force * force_scale;
    out.w_dot = ft.torque * (force_scale / inertia);
    out.R_dot = hat(b.w) * b.R.m;
    return out;
}

}  // namespace abraham
