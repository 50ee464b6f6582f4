#include "abraham/charge_profile.hpp"

#include <cmath>
#include <functional>

#include "abraham/errors.hpp"
#include "abraham/grid.hpp"

namespace abraham {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Adaptive Simpson with an absolute/relative mixed tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw QuadratureNotConverged("radial quadrature: max refinement depth reached");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

ChargeProfile::ChargeProfile(ProfileKind kind, double sigma) : kind_(kind), sigma_(sigma) {
    if (!(sigma > 0.0)) throw ConfigError("charge.sigma must be positive");
    if (kind_ == ProfileKind::bump) {
        const double Rb = 5.0 * sigma_;
        auto unnorm = [Rb](double r) {
            const double u = r / Rb;
            if (u >= 1.0) return 0.0;
            return std::exp(-1.0 / (1.0 - u * u)) * r * r;
        };
        const double mass = 4.0 * kPi * integrate(unnorm, 0.0, Rb, 1e-14);
        bump_norm_ = 1.0 / mass;
    }
}

double ChargeProfile::density_radial(double r) const {
    if (kind_ == ProfileKind::gaussian) {
        const double s2 = sigma_ * sigma_;
        return std::pow(2.0 * kPi * s2, -1.5) * std::exp(-0.5 * r * r / s2);
    }
    const double Rb = 5.0 * sigma_;
    const double u = r / Rb;
    if (u >= 1.0) return 0.0;
    return bump_norm_ * std::exp(-1.0 / (1.0 - u * u));
}

double ChargeProfile::density_radial_deriv(double r) const {
    if (kind_ == ProfileKind::gaussian) {
        const double s2 = sigma_ * sigma_;
        return -r / s2 * density_radial(r);
    }
    const double Rb = 5.0 * sigma_;
    const double u = r / Rb;
    if (u >= 1.0) return 0.0;
    const double w = 1.0 - u * u;
    // d/dr exp(-1/w) = exp(-1/w) * (-2u/Rb) / w^2
    return density_radial(r) * (-2.0 * u / Rb) / (w * w);
}

double ChargeProfile::density(const Vec3& x) const { return density_radial(norm(x)); }

double ChargeProfile::support_radius() const {
    if (kind_ == ProfileKind::bump) return 5.0 * sigma_;
    return 8.6 * sigma_;  // exp(-0.5 * 8.6^2) < 1e-16
}

double ChargeProfile::moment_of_inertia() const {
    auto integrand = [this](double r) { return r * r * r * r * density_radial(r); };
    const double radial = integrate(integrand, 0.0, support_radius(), 1e-13);
    return (2.0 / 3.0) * 4.0 * kPi * radial;
}

ProfileKind ChargeProfile::kind_from_string(const std::string& s) {
    if (s == "gaussian") return ProfileKind::gaussian;
    if (s == "bump") return ProfileKind::bump;
    throw ConfigError("unknown charge.kind '" + s + "'");
}

ScalarField sample_on_grid(const ChargeProfile& p, const GridSpec& g, const Vec3& q) {
    if (10.0 * p.sigma() > g.L)
        throw ProfileTooWide("profile width 10*sigma exceeds box length L");
    ScalarField out(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const Vec3 d = g.min_image(g.node(ix, iy, iz) - q);
                out[g.index(ix, iy, iz)] = p.density(d);
            }
    return out;
}

}  // namespace abraham
