#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <unistd.h>

#include "abraham/errors.hpp"
#include "abraham/field_engine.hpp"
#include "abraham/simulation.hpp"

using namespace abraham;

namespace {

constexpr double kPi = 3.14159265358979323846;

SimConfig base_config() {
    SimConfig cfg;
    cfg.grid = GridSpec{16, 16.0};
    cfg.dt = 0.25;
    cfg.t_end = 1.0;
    return cfg;
}

bool states_equal(const SimState& a, const SimState& b) {
    if (a.t != b.t) return false;
    if (norm(a.body.q - b.body.q) != 0.0 || norm(a.body.v - b.body.v) != 0.0 ||
        norm(a.body.w - b.body.w) != 0.0)
        return false;
    if ((a.body.R.m - b.body.R.m).max_abs() != 0.0) return false;
    for (std::size_t i = 0; i < a.fields.E.x.size(); ++i) {
        if (a.fields.E.at(i).x != b.fields.E.at(i).x) return false;
        if (a.fields.B.at(i).y != b.fields.B.at(i).y) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("validate rejects inconsistent configurations") {
    auto bad = [](auto&& mutate) {
        SimConfig cfg = base_config();
        mutate(cfg);
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    };
    bad([](SimConfig& c) { c.grid.n = 12; });
    bad([](SimConfig& c) { c.grid.n = 8; });
    bad([](SimConfig& c) { c.grid.L = -1.0; });
    bad([](SimConfig& c) { c.sigma = 2.0; });          // 10 sigma > L
    bad([](SimConfig& c) { c.dt = 0.0; });
    bad([](SimConfig& c) { c.dt = 0.6; });             // above 0.5 h
    bad([](SimConfig& c) { c.t_end = 0.1; });          // below dt
    bad([](SimConfig& c) { c.t_end = 1.1; });          // not a multiple of dt
    bad([](SimConfig& c) { c.output_stride = 0; });
    bad([](SimConfig& c) { c.q0 = {9.0, 0, 0}; });     // outside the box
    CHECK_NOTHROW(base_config().validate());
}

TEST_CASE("static coulomb state exerts no self-force") {
    SimConfig cfg = base_config();
    cfg.grid.n = 32;
    const ChargeProfile p = cfg.make_profile();
    SimState s;
    s.fields = coulomb_init(p, cfg.grid, {0, 0, 0});
    s.body = BodyState{{0, 0, 0}, {0, 0, 0}, Rotation{}, {0, 0, 0}};
    const SimStateDerivative d = coupled_rhs(s, cfg, p, p.moment_of_inertia());
    CHECK(norm(d.body.v_dot) < 1e-8);
    CHECK(norm(d.body.w_dot) < 1e-8);

    // a spinning rest state feels no torque from its own radial field at t = 0
    s.body.w = {0, 0, 2.0};
    const SimStateDerivative ds = coupled_rhs(s, cfg, p, p.moment_of_inertia());
    CHECK(norm(ds.body.w_dot) < 1e-8);
}

TEST_CASE("decoupled ballistic motion is exact") {
    SimConfig cfg = base_config();
    cfg.self_field = false;
    cfg.q0 = {0.5, -0.25, 0.0};
    cfg.v0 = {0.2, 0.1, -0.05};
    cfg.t_end = 2.0;
    const Trajectory traj = run(cfg);
    const TrajectorySample& last = traj.samples.back();
    CHECK(last.t == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(norm(last.body.q - (cfg.q0 + 2.0 * cfg.v0)) < 1e-12);
    CHECK(norm(last.body.v - cfg.v0) < 1e-14);
}

TEST_CASE("cyclotron period matches b = 1") {
    SimConfig cfg = base_config();
    cfg.self_field = false;
    cfg.external = ExternalField::uniform_b(1.0);
    cfg.v0 = {0.2, 0.0, 0.0};
    cfg.dt = 2.0 * kPi / 64.0;
    cfg.t_end = 2.0 * kPi;
    const Trajectory traj = run(cfg);
    CHECK(norm(traj.samples.back().body.v - cfg.v0) < 1e-4);
}

TEST_CASE("rotation update is consistent with w") {
    SimConfig cfg = base_config();
    cfg.self_field = false;
    cfg.w0 = {0.0, 0.0, 1.5};
    cfg.t_end = 2.0;
    const Trajectory traj = run(cfg);
    // free top: R(t) = exp(hat(w) t), w constant
    const TrajectorySample& last = traj.samples.back();
    CHECK(norm(last.body.w - cfg.w0) < 1e-13);
    CHECK((last.body.R.m - exp_map(cfg.w0, 2.0).m).max_abs() < 1e-12);
}

TEST_CASE("t_end = 0 records a single sample") {
    SimConfig cfg = base_config();
    cfg.t_end = 0.0;
    const Trajectory traj = run(cfg);
    CHECK(traj.samples.size() == 1);
    CHECK(traj.diagnostics.size() == 1);
    CHECK(traj.samples[0].t == 0.0);
}

TEST_CASE("runs are deterministic") {
    SimConfig cfg = base_config();
    cfg.external = ExternalField::uniform_b(0.5);
    cfg.v0 = {0.0, 0.0, 0.2};
    cfg.w0 = {0.0, 0.0, 1.0};
    const Trajectory a = run(cfg);
    const Trajectory b = run(cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        SimState sa{a.samples[i].t, a.samples[i].fields, a.samples[i].body};
        SimState sb{b.samples[i].t, b.samples[i].fields, b.samples[i].body};
        CHECK(states_equal(sa, sb));
    }
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i)
        CHECK(a.diagnostics[i].energy == b.diagnostics[i].energy);
}

TEST_CASE("snapshot restart reproduces the run bit for bit") {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("abraham_restart_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);

    SimConfig cfg = base_config();
    cfg.external = ExternalField::uniform_b(0.5);
    cfg.v0 = {0.0, 0.0, 0.2};
    cfg.w0 = {0.0, 0.0, 1.0};
    cfg.t_end = 2.0;

    SimConfig half = cfg;
    half.t_end = 1.0;
    half.write_snapshots = true;
    half.output_prefix = (dir / "half").string();
    run(half);  // leaves a snapshot at step 4

    SimConfig resumed = cfg;
    resumed.resume_prefix = (dir / "half").string();
    resumed.resume_step = 4;
    const Trajectory tail = run(resumed);
    const Trajectory full = run(cfg);

    const TrajectorySample& a = full.samples.back();
    const TrajectorySample& b = tail.samples.back();
    SimState sa{a.t, a.fields, a.body};
    SimState sb{b.t, b.fields, b.body};
    CHECK(states_equal(sa, sb));

    std::filesystem::remove_all(dir);
}

TEST_CASE("diverging forces raise NumericalBlowup") {
    SimConfig cfg = base_config();
    cfg.self_field = false;
    cfg.external = ExternalField(ExternalKind::custom_static, {1.0, 1.0, 1.0});
    cfg.q0 = {1.0, 1.0, 1.0};
    cfg.force_scale = 1e14;
    CHECK_THROWS_AS(run(cfg), NumericalBlowup);
}

TEST_CASE("gauss residual stays small along a coupled run") {
    SimConfig cfg = base_config();
    cfg.grid.n = 32;  // the n = 16 grid does not resolve the gaussian
    cfg.v0 = {0.1, 0.0, 0.0};
    cfg.w0 = {0.0, 0.0, 1.0};
    cfg.t_end = 2.0;
    const Trajectory traj = run(cfg);
    for (const DiagnosticsRow& r : traj.diagnostics) {
        CHECK(r.gauss_residual < 1e-6);
        CHECK(r.div_b < 1e-10);
    }
}
