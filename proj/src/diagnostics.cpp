#include "abraham/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "abraham/field_engine.hpp"

namespace abraham {
namespace {

// Quadrature of f(d, x) rho(d) over the grid, d = min image of x - q.
template <typename F>
Vec3 charge_weighted_sum(const ChargeProfile& p, const GridSpec& g, const Vec3& q, F&& f) {
    Vec3 acc{};
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const Vec3 d = g.min_image(g.node(ix, iy, iz) - q);
                const double rho = p.density(d);
                if (rho == 0.0) continue;
                acc += f(d) * rho;
            }
    return acc * g.cell_volume();
}

}  // namespace

double energy(const FieldState& f, const BodyState& b, const ExternalField& ext,
              const ChargeProfile& p, const GridSpec& g, double inertia, double t) {
    double field = 0.0;
    for (std::size_t i = 0; i < f.E.x.size(); ++i)
        field += norm2(f.E.at(i)) + norm2(f.B.at(i));
    double e = 0.5 * field * g.cell_volume() + 0.5 * norm2(b.v) + 0.5 * inertia * norm2(b.w);
    if (!ext.is_zero()) {
        double pot = 0.0;
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const Vec3 d = g.min_image(g.node(ix, iy, iz) - b.q);
                    const double rho = p.density(d);
                    if (rho == 0.0) continue;
                    pot += ext.potentials(b.q + d, t).first * rho;
                }
        e += pot * g.cell_volume();
    }
    return e;
}

Vec3 momentum(const FieldState& f, const BodyState& b, const ExternalField& ext,
              const ChargeProfile& p, const GridSpec& g, double t) {
    Vec3 field{};
    for (std::size_t i = 0; i < f.E.x.size(); ++i) field += cross(f.E.at(i), f.B.at(i));
    Vec3 mom = b.v + field * g.cell_volume();
    if (!ext.is_zero())
        mom += charge_weighted_sum(p, g, b.q,
                                   [&](const Vec3& d) { return ext.potentials(b.q + d, t).second; });
    return mom;
}

Vec3 angular_momentum(const FieldState& f, const BodyState& b, const ExternalField& ext,
                      const ChargeProfile& p, const GridSpec& g, double inertia, double t) {
    // Moment arm about the box center. The seam plane gets coordinate 0 (the
    // average of its two images +-L/2); the plain sawtooth weight breaks the
    // odd symmetry of the coordinate set and pollutes the transverse
    // components at the seam.
    auto mcoord = [&](int i) { return i == 0 ? 0.0 : g.coord(i); };
    Vec3 field{};
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t i = g.index(ix, iy, iz);
                const Vec3 x{mcoord(ix), mcoord(iy), mcoord(iz)};
                field += cross(x, cross(f.E.at(i), f.B.at(i)));
            }
    Vec3 m = cross(b.q, b.v) + inertia * b.w + field * g.cell_volume();
    // Neutralizing-background correction mean(rho) int x ^ A dx, with A the
    // Coulomb-gauge potential of B. Its rate -mean int x ^ E cancels the
    // residual torque the mean-removed Gauss pairing leaves behind; without it
    // the box leaks M_z at rate mean(rho) * I w * t.
    const VectorField A = Spectral::get(g).vector_potential(f.B);
    const double mean_rho = grid_mean(sample_on_grid(p, g, b.q));
    Vec3 bg{};
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const Vec3 x{mcoord(ix), mcoord(iy), mcoord(iz)};
                bg += cross(x, A.at(g.index(ix, iy, iz)));
            }
    m += (mean_rho * g.cell_volume()) * bg;
    if (!ext.is_zero())
        m += charge_weighted_sum(p, g, b.q, [&](const Vec3& d) {
            return cross(b.q + d, ext.potentials(b.q + d, t).second);
        });
    return m;
}

DiagnosticsRow diagnostics_row(const FieldState& f, const BodyState& b, const ExternalField& ext,
                               const ChargeProfile& p, const GridSpec& g, double inertia,
                               double t) {
    DiagnosticsRow row;
    row.t = t;
    row.energy = energy(f, b, ext, p, g, inertia, t);
    row.momentum = momentum(f, b, ext, p, g, t);
    row.angular_momentum = angular_momentum(f, b, ext, p, g, inertia, t);
    row.gauss_residual = gauss_residual(f, sample_on_grid(p, g, b.q), g);
    row.div_b = div_b_residual(f, g);
    row.body = b;
    return row;
}

DriftReport drift_report(const std::vector<DiagnosticsRow>& rows) {
    DriftReport rep;
    if (rows.empty()) return rep;
    const DiagnosticsRow& r0 = rows.front();
    auto scale = [](double q0) { return std::max(std::abs(q0), 1.0); };
    for (const DiagnosticsRow& r : rows) {
        rep.energy = std::max(rep.energy, std::abs(r.energy - r0.energy) / scale(r0.energy));
        for (int i = 0; i < 3; ++i) {
            rep.momentum[i] =
                std::max(rep.momentum[i],
                         std::abs(r.momentum[i] - r0.momentum[i]) / scale(r0.momentum[i]));
            rep.angular_momentum[i] = std::max(
                rep.angular_momentum[i], std::abs(r.angular_momentum[i] - r0.angular_momentum[i]) /
                                             scale(r0.angular_momentum[i]));
        }
        rep.max_gauss_residual = std::max(rep.max_gauss_residual, r.gauss_residual);
        rep.max_div_b = std::max(rep.max_div_b, r.div_b);
    }
    return rep;
}

std::string DriftReport::summary_table() const {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific;
    os << "charge      drift\n";
    os << "energy      " << energy << "\n";
    os << "P_x         " << momentum.x << "\n";
    os << "P_y         " << momentum.y << "\n";
    os << "P_z         " << momentum.z << "\n";
    os << "M_x         " << angular_momentum.x << "\n";
    os << "M_y         " << angular_momentum.y << "\n";
    os << "M_z         " << angular_momentum.z << "\n";
    os << "gauss(max)  " << max_gauss_residual << "\n";
    os << "divB(max)   " << max_div_b << "\n";
    return os.str();
}

double fit_order(const std::vector<double>& dts, const std::vector<double>& errs) {
    // least squares on log-log
    const std::size_t n = dts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(dts[i]);
        const double y = std::log(std::max(errs[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace abraham
