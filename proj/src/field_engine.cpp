#include "abraham/field_engine.hpp"

#include <cmath>

#include "abraham/errors.hpp"

namespace abraham {

VectorField curl(const VectorField& f, const GridSpec& g) { return Spectral::get(g).curl(f); }

ScalarField divergence(const VectorField& f, const GridSpec& g) {
    return Spectral::get(g).divergence(f);
}

ScalarField poisson_solve(const ScalarField& rhs, const GridSpec& g) {
    return Spectral::get(g).poisson_solve(rhs);
}

VectorField deposit_current(const ChargeProfile& p, const GridSpec& g, const Vec3& q,
                            const Vec3& v, const Vec3& w) {
    if (10.0 * p.sigma() > g.L)
        throw ProfileTooWide("profile width 10*sigma exceeds box length L");
    VectorField j(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const Vec3 d = g.min_image(g.node(ix, iy, iz) - q);
                const double rho = p.density(d);
                if (rho == 0.0) continue;
                j.set(g.index(ix, iy, iz), (v + cross(w, d)) * rho);
            }
    return j;
}

FieldDerivative maxwell_rhs(const FieldState& f, const VectorField& j, const GridSpec& g) {
    FieldDerivative out;
    out.E_dot = curl(f.B, g);
    // The neutralizing background carries the return current: the k=0 mode of
    // j is removed so the uniform E mode stays zero and the box exchanges no
    // momentum with the background.
    const Vec3 j_mean{grid_mean(j.x), grid_mean(j.y), grid_mean(j.z)};
    for (std::size_t i = 0; i < out.E_dot.x.size(); ++i)
        out.E_dot.set(i, out.E_dot.at(i) - (j.at(i) - j_mean));
    out.B_dot = curl(f.E, g);
    out.B_dot *= -1.0;
    return out;
}

FieldState coulomb_init(const ChargeProfile& p, const GridSpec& g, const Vec3& q) {
    ScalarField rho = sample_on_grid(p, g, q);
    const double mean = grid_mean(rho);
    for (double& v : rho.values) v -= mean;
    const ScalarField phi = poisson_solve(rho, g);
    FieldState f(g);
    f.E = Spectral::get(g).gradient(phi);
    f.E *= -1.0;
    return f;
}

double gauss_residual(const FieldState& f, const ScalarField& rho_grid, const GridSpec& g) {
    ScalarField res = divergence(f.E, g);
    const double mean = grid_mean(rho_grid);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= rho_grid[i] - mean;
    const double denom = l2_norm(rho_grid, g);
    if (denom == 0.0) return l2_norm(res, g);
    return l2_norm(res, g) / denom;
}

double div_b_residual(const FieldState& f, const GridSpec& g) {
    return max_abs(divergence(f.B, g));
}

}  // namespace abraham
