#include <doctest.h>

#include <cmath>
#include <random>

#include "abraham/errors.hpp"
#include "abraham/field_engine.hpp"

using namespace abraham;

namespace {

constexpr double kPi = 3.14159265358979323846;

VectorField random_field(const GridSpec& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f.set(i, {u(rng), u(rng), u(rng)});
    return f;
}

}  // namespace

TEST_CASE("curl of a single z-mode") {
    const GridSpec g{16, 16.0};
    const double k = 2.0 * kPi / g.L;
    VectorField f(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz)
                f.z[g.index(ix, iy, iz)] = std::sin(k * g.coord(ix));
    const VectorField c = curl(f, g);
    double err = 0.0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t i = g.index(ix, iy, iz);
                err = std::max(err, std::abs(c.x[i]));
                err = std::max(err, std::abs(c.y[i] + k * std::cos(k * g.coord(ix))));
                err = std::max(err, std::abs(c.z[i]));
            }
    CHECK(err < 1e-12);
}

TEST_CASE("poisson solve on a single mode") {
    const GridSpec g{16, 16.0};
    const double k = 2.0 * kPi / g.L;
    ScalarField rhs(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz)
                rhs[g.index(ix, iy, iz)] = std::cos(k * g.coord(ix));
    const ScalarField phi = poisson_solve(rhs, g);
    double err = 0.0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz)
                err = std::max(err, std::abs(phi[g.index(ix, iy, iz)] -
                                             std::cos(k * g.coord(ix)) / (k * k)));
    CHECK(err < 1e-12);
}

TEST_CASE("poisson round trip and mean rejection") {
    // the gaussian is spectrally resolved at h = 0.5; at h = 1 its Nyquist
    // content (~1e-3) dominates the round-trip error
    const GridSpec g{32, 16.0};
    ScalarField rhs = sample_on_grid(ChargeProfile(ProfileKind::gaussian, 1.0), g, {0.4, 0, -0.9});
    CHECK_THROWS_AS(poisson_solve(rhs, g), NonZeroMean);
    const double mean = grid_mean(rhs);
    for (double& v : rhs.values) v -= mean;
    const ScalarField phi = poisson_solve(rhs, g);
    CHECK(std::abs(grid_mean(phi)) < 1e-14);
    // -div grad phi = rhs
    ScalarField back = divergence(Spectral::get(g).gradient(phi), g);
    back *= -1.0;
    back -= rhs;
    CHECK(l2_norm(back, g) < 1e-8);
}

TEST_CASE("vector identities hold to rounding") {
    const GridSpec g{16, 16.0};
    const VectorField f = random_field(g, 3);
    CHECK(max_abs(divergence(curl(f, g), g)) < 1e-12);
    const ScalarField s = f.x;
    CHECK(max_abs(curl(Spectral::get(g).gradient(s), g)) < 1e-12);
}

TEST_CASE("deposit_current quadrature") {
    const GridSpec g{32, 16.0};
    const ChargeProfile p(ProfileKind::gaussian, 1.0);
    const Vec3 q{0.5, -0.25, 1.0};

    // v = w = 0 gives no current
    CHECK(max_abs(deposit_current(p, g, q, {0, 0, 0}, {0, 0, 0})) == 0.0);

    // int j dx = v (unit charge; the spin part has zero first moment)
    const Vec3 v{0.3, -0.1, 0.2};
    const VectorField j = deposit_current(p, g, q, v, {0.4, 1.0, -0.6});
    const Vec3 total{grid_integral(j.x, g), grid_integral(j.y, g), grid_integral(j.z, g)};
    CHECK(norm(total - v) < 1e-8);

    const VectorField jw = deposit_current(p, g, q, {0, 0, 0}, {0, 0, 2.0});
    const Vec3 tw{grid_integral(jw.x, g), grid_integral(jw.y, g), grid_integral(jw.z, g)};
    CHECK(norm(tw) < 1e-8);

    CHECK_THROWS_AS(deposit_current(ChargeProfile(ProfileKind::gaussian, 2.0), g, q, v, v),
                    ProfileTooWide);
}

TEST_CASE("maxwell_rhs basics") {
    const GridSpec g{16, 16.0};
    const FieldState zero(g);

    // zero fields, zero current: zero derivative
    const FieldDerivative d0 = maxwell_rhs(zero, VectorField(g), g);
    CHECK(max_abs(d0.E_dot) == 0.0);
    CHECK(max_abs(d0.B_dot) == 0.0);

    // div B_dot = -div curl E = 0, and the mean current mode never drives E
    FieldState f(g);
    f.E = random_field(g, 5);
    f.B = curl(random_field(g, 6), g);
    VectorField j = deposit_current(ChargeProfile(ProfileKind::gaussian, 1.0), g, {0, 0, 0},
                                    {0.5, 0, 0}, {0, 0, 1.0});
    const FieldDerivative d = maxwell_rhs(f, j, g);
    CHECK(max_abs(divergence(d.B_dot, g)) < 1e-12);
    CHECK(std::abs(grid_mean(d.E_dot.x)) < 1e-14);
    CHECK(std::abs(grid_mean(d.E_dot.y)) < 1e-14);
    CHECK(std::abs(grid_mean(d.E_dot.z)) < 1e-14);

    // away from k = 0 the current enters with a minus sign
    FieldDerivative dn = maxwell_rhs(FieldState(g), j, g);
    const Vec3 j_mean{grid_mean(j.x), grid_mean(j.y), grid_mean(j.z)};
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        err = std::max(err, norm(dn.E_dot.at(i) + (j.at(i) - j_mean)));
    CHECK(err < 1e-14);
}

TEST_CASE("coulomb_init satisfies the constraints") {
    const GridSpec g{32, 16.0};
    const ChargeProfile p(ProfileKind::gaussian, 1.0);
    const Vec3 q{0.6, -1.2, 0.0};
    const FieldState f = coulomb_init(p, g, q);
    const ScalarField rho = sample_on_grid(p, g, q);
    CHECK(gauss_residual(f, rho, g) < 1e-8);
    CHECK(div_b_residual(f, g) == 0.0);

    // doubling E breaks Gauss by O(1)
    FieldState bad = f;
    bad.E *= 2.0;
    CHECK(gauss_residual(bad, rho, g) > 0.5);
}
