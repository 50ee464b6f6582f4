#include <doctest.h>

#include <cmath>

#include "abraham/errors.hpp"
#include "abraham/field_engine.hpp"
#include "abraham/variational.hpp"

using namespace abraham;

namespace {

SimConfig small_config() {
    // n = 32 resolves the gaussian; n = 16 leaves a ~1e-2 aliasing floor
    SimConfig cfg;
    cfg.grid = GridSpec{32, 16.0};
    cfg.dt = 0.25;
    cfg.t_end = 2.0;
    return cfg;
}

Trajectory decoupled_run(const Vec3& v0, const Vec3& w0, const ExternalField& ext) {
    SimConfig cfg = small_config();
    cfg.self_field = false;
    cfg.v0 = v0;
    cfg.w0 = w0;
    cfg.external = ext;
    return run(cfg);
}

}  // namespace

TEST_CASE("potential reconstruction round trip") {
    const SimConfig cfg = small_config();
    SimConfig c = cfg;
    c.v0 = {0.1, 0.0, 0.0};
    c.w0 = {0.0, 0.0, 1.0};
    const Trajectory traj = run(c);
    const ChargeProfile p = c.make_profile();

    const TrajectorySample& s = traj.samples.back();
    const ScalarField rho = sample_on_grid(p, c.grid, s.body.q);
    const PotentialState ps = reconstruct_potentials(s.fields, rho, c.grid);
    CHECK(ps.div_a_norm < 1e-10);
    CHECK(ps.rebuild_error_b < 1e-10);

    // E = -grad A0 - A_dot reassembles the stored field
    const VectorField grad_a0 = Spectral::get(c.grid).gradient(ps.A0);
    double err = 0.0;
    for (std::size_t i = 0; i < c.grid.size(); ++i)
        err = std::max(err, norm(s.fields.E.at(i) + grad_a0.at(i) + ps.A_dot.at(i)));
    CHECK(err < 1e-10);

    // a field with div B != 0 is rejected
    FieldState bad = s.fields;
    bad.B.x = rho;
    CHECK_THROWS_AS(reconstruct_potentials(bad, rho, c.grid), NonSolenoidalB);
}

TEST_CASE("lagrangian of the static coulomb state") {
    const GridSpec g{32, 16.0};
    const ChargeProfile p(ProfileKind::gaussian, 1.0);
    const FieldState f = coulomb_init(p, g, {0, 0, 0});
    const ScalarField rho = sample_on_grid(p, g, {0, 0, 0});
    const PotentialState ps = reconstruct_potentials(f, rho, g);
    const BodyState b{{0, 0, 0}, {0, 0, 0}, Rotation{}, {0, 0, 0}};

    // at rest: L = (1/2) int E^2 - int A0 rho = -(1/2) int |grad phi|^2
    double e2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) e2 += norm2(f.E.at(i));
    e2 *= 0.5 * g.cell_volume();
    const double lag =
        lagrangian(ps, b, ExternalField::zero(), p, g, p.moment_of_inertia(), 0.0);
    CHECK(lag == doctest::Approx(-e2).epsilon(1e-10));
}

TEST_CASE("poincare momentum of the free top is I w") {
    const Trajectory traj = decoupled_run({0, 0, 0}, {0, 0, 3.0}, ExternalField::zero());
    const VariationalVerifier vv(traj);
    CHECK(norm(vv.poincare_momentum(0) - Vec3{0, 0, 6.0}) < 1e-10);
    CHECK(norm(vv.poincare_momentum(vv.num_samples() - 1) - Vec3{0, 0, 6.0}) < 1e-10);

    // free top: residual at rounding level for every axis
    const StructureConstants sc = structure_constants();
    for (int axis = 0; axis < 3; ++axis)
        for (double r : vv.poincare_residual(axis, sc)) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("poincare momentum picks up the external moment") {
    const Trajectory traj = decoupled_run({0, 0, 0}, {0, 0, 0}, ExternalField::uniform_b(0.5));
    const VariationalVerifier vv(traj);
    // int d ^ ((1/2) b e_z ^ d) rho = (I/2) b e_z
    CHECK(norm(vv.poincare_momentum(0) - Vec3{0, 0, 0.5}) < 1e-6);
}

TEST_CASE("action is stationary on a solution trajectory") {
    SimConfig cfg = small_config();
    cfg.dt = 0.125;  // away from the stability bound so the solution error is small
    cfg.v0 = {0.0, 0.0, 0.2};
    cfg.w0 = {0.0, 0.0, 1.0};
    cfg.external = ExternalField::uniform_b(0.5);
    const Trajectory traj = run(cfg);
    const VariationalVerifier vv(traj);

    const double s0 = vv.action();
    for (PerturbationClass cls :
         {PerturbationClass::fields, PerturbationClass::translation, PerturbationClass::rotation}) {
        const Perturbation pert = vv.make_perturbation(cls, 99);
        // the eps = 0 evaluation reproduces the unperturbed action exactly
        CHECK(vv.action_perturbed(pert, 0.0) == doctest::Approx(s0).epsilon(1e-14));
        // the increment is quadratic in eps on a solution
        const double d1 = vv.action_perturbed(pert, 1e-3) - s0;
        const double d2 = vv.action_perturbed(pert, 5e-4) - s0;
        CHECK(std::abs(d1) / std::abs(d2) == doctest::Approx(4.0).epsilon(0.05));
        CHECK(std::abs(vv.first_variation(pert, 1e-3)) < 1e-6);
    }
}

TEST_CASE("sabotaged dynamics break stationarity") {
    SimConfig cfg = small_config();
    cfg.v0 = {0.0, 0.0, 0.2};
    cfg.w0 = {0.0, 0.0, 1.0};
    cfg.external = ExternalField::uniform_b(0.5);
    cfg.force_scale = 1.1;
    const Trajectory traj = run(cfg);
    const VariationalVerifier vv(traj);
    const Perturbation pert = vv.make_perturbation(PerturbationClass::translation, 99);
    // the first variation no longer vanishes and is eps-independent (linear term)
    const double fv1 = std::abs(vv.first_variation(pert, 1e-3));
    const double fv2 = std::abs(vv.first_variation(pert, 5e-4));
    CHECK(fv1 > 1e-7);
    CHECK(fv1 == doctest::Approx(fv2).epsilon(0.05));
}

TEST_CASE("torque equivalence gap vanishes on solutions") {
    SimConfig cfg = small_config();
    cfg.v0 = {0.0, 0.0, 0.2};
    cfg.w0 = {0.6, 0.0, 0.8};
    cfg.external = ExternalField::uniform_b(0.5);
    const Trajectory traj = run(cfg);
    const VariationalVerifier vv(traj);
    for (int axis = 0; axis < 3; ++axis)
        for (double g : vv.torque_equivalence_gap(axis)) CHECK(std::abs(g) < 1e-8);
}

TEST_CASE("euler-lagrange audit flags a scaled current") {
    SimConfig cfg = small_config();
    cfg.dt = 0.0625;
    cfg.t_end = 1.0;
    cfg.v0 = {0.0, 0.0, 0.2};
    cfg.w0 = {0.0, 0.0, 1.0};
    const Trajectory traj = run(cfg);
    const VariationalVerifier vv(traj);

    const auto el = vv.euler_lagrange_residuals();
    CHECK(el.gauss < 1e-6);
    CHECK(el.ampere < 1e-4);
    CHECK(el.force_max < 1e-6);

    const auto bad = vv.euler_lagrange_residuals(1.1);
    CHECK(bad.ampere > 100.0 * el.ampere);
}

TEST_CASE("short trajectories degrade gracefully") {
    SimConfig cfg = small_config();
    cfg.t_end = 0.25;
    const Trajectory traj = run(cfg);  // two samples: no interior stencil points
    const auto el = VariationalVerifier(traj).euler_lagrange_residuals();
    CHECK(el.force_residual.empty());
    CHECK(el.ampere == 0.0);
    CHECK(el.gauss < 1e-6);
}
