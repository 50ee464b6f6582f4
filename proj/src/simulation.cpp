#include "abraham/simulation.hpp"

#include <cmath>

#include "abraham/errors.hpp"
#include "abraham/snapshot_io.hpp"

namespace abraham {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void add_scaled(FieldState& f, const FieldDerivative& d, double a) {
    for (std::size_t i = 0; i < f.E.x.size(); ++i) {
        f.E.x[i] += a * d.E_dot.x[i];
        f.E.y[i] += a * d.E_dot.y[i];
        f.E.z[i] += a * d.E_dot.z[i];
        f.B.x[i] += a * d.B_dot.x[i];
        f.B.y[i] += a * d.B_dot.y[i];
        f.B.z[i] += a * d.B_dot.z[i];
    }
}

SimState stage_state(const SimState& s, const SimStateDerivative& d, double a) {
    SimState out = s;
    add_scaled(out.fields, d.fields, a);
    out.body.q += a * d.body.q_dot;
    out.body.v += a * d.body.v_dot;
    out.body.w += a * d.body.w_dot;
    out.t += a;
    return out;
}

void check_finite(const SimState& s) {
    const double limit = 1e12;
    const double body_norm =
        std::max({norm(s.body.q), norm(s.body.v), norm(s.body.w)});
    const double field_norm = std::max(max_abs(s.fields.E), max_abs(s.fields.B));
    if (!(body_norm < limit) || !(field_norm < limit))
        throw NumericalBlowup("state norm exceeded 1e12 at t=" + std::to_string(s.t));
}

}  // namespace

void SimConfig::validate() const {
    if (!is_power_of_two(grid.n) || grid.n < 16)
        throw ConfigError("grid.n must be a power of two >= 16");
    if (!(grid.L > 0.0)) throw ConfigError("grid.length must be positive");
    if (10.0 * sigma > grid.L) throw ConfigError("grid.length must be >= 10 * charge.sigma");
    if (!(dt > 0.0)) throw ConfigError("sim.dt must be positive");
    if (dt > 0.5 * grid.h() * (1.0 + 1e-12))
        throw ConfigError("sim.dt exceeds the stability bound 0.5 * h");
    if (t_end < 0.0) throw ConfigError("sim.t_end must be non-negative");
    if (t_end > 0.0 && t_end < dt) throw ConfigError("sim.t_end must be 0 or >= sim.dt");
    if (output_stride < 1) throw ConfigError("output.stride must be >= 1");
    if (!grid.contains(q0)) throw ConfigError("body.q0 lies outside the box");
    if (!std::isfinite(force_scale)) throw ConfigError("sim.force_scale must be finite");
    const double steps = t_end / dt;
    if (std::abs(steps - std::llround(steps)) > 1e-9)
        throw ConfigError("sim.t_end must be an integer multiple of sim.dt");
}

SimStateDerivative coupled_rhs(const SimState& s, const SimConfig& cfg, const ChargeProfile& p,
                               double inertia) {
    const VectorField j = deposit_current(p, cfg.grid, s.body.q, s.body.v, s.body.w);
    SimStateDerivative d;
    d.fields = maxwell_rhs(s.fields, j, cfg.grid);
    d.body = body_rhs(s.fields, cfg.external, p, cfg.grid, s.body, inertia, s.t, cfg.self_field,
                      cfg.force_scale);
    return d;
}

SimState step_rk4(const SimState& s, double dt, const SimConfig& cfg, const ChargeProfile& p,
                  double inertia) {
    const SimStateDerivative k1 = coupled_rhs(s, cfg, p, inertia);
    const SimState s2 = stage_state(s, k1, 0.5 * dt);
    const SimStateDerivative k2 = coupled_rhs(s2, cfg, p, inertia);
    const SimState s3 = stage_state(s, k2, 0.5 * dt);
    const SimStateDerivative k3 = coupled_rhs(s3, cfg, p, inertia);
    const SimState s4 = stage_state(s, k3, dt);
    const SimStateDerivative k4 = coupled_rhs(s4, cfg, p, inertia);

    SimState out = s;
    out.t = s.t + dt;
    const double c = dt / 6.0;
    add_scaled(out.fields, k1.fields, c);
    add_scaled(out.fields, k2.fields, 2.0 * c);
    add_scaled(out.fields, k3.fields, 2.0 * c);
    add_scaled(out.fields, k4.fields, c);
    out.body.q += c * (k1.body.q_dot + 2.0 * k2.body.q_dot + 2.0 * k3.body.q_dot + k4.body.q_dot);
    out.body.v += c * (k1.body.v_dot + 2.0 * k2.body.v_dot + 2.0 * k3.body.v_dot + k4.body.v_dot);
    out.body.w += c * (k1.body.w_dot + 2.0 * k2.body.w_dot + 2.0 * k3.body.w_dot + k4.body.w_dot);

    // RK4-weighted average of the stage angular velocities drives the rotation
    // update; exp_map keeps R exactly orthonormal.
    const Vec3 w_avg =
        (s.body.w + 2.0 * s2.body.w + 2.0 * s3.body.w + s4.body.w) * (1.0 / 6.0);
    out.body.R = make_rotation((exp_map(w_avg, dt) * s.body.R).m);

    check_finite(out);
    return out;
}

Trajectory run(const SimConfig& cfg, const StepCallback& on_step) {
    cfg.validate();
    const ChargeProfile p = cfg.make_profile();
    const double inertia = p.moment_of_inertia();

    SimState state;
    long step0 = 0;
    if (!cfg.resume_prefix.empty()) {
        state = read_snapshot(cfg.resume_prefix, cfg.resume_step, cfg.grid);
        step0 = cfg.resume_step;
    } else {
        state.t = 0.0;
        state.fields = coulomb_init(p, cfg.grid, cfg.q0);
        state.body = BodyState{cfg.q0, cfg.v0, Rotation{}, cfg.w0};
    }

    Trajectory traj;
    traj.config = cfg;
    traj.inertia = inertia;
    traj.sample_dt = cfg.dt * cfg.output_stride;

    auto record = [&](long step) {
        const DiagnosticsRow row = diagnostics_row(state.fields, state.body, cfg.external, p,
                                                   cfg.grid, inertia, state.t);
        traj.diagnostics.push_back(row);
        if (step % cfg.output_stride == 0)
            traj.samples.push_back(TrajectorySample{state.t, state.fields, state.body});
        if (on_step) on_step(state, row);
        return row;
    };

    auto flush = [&](long final_step) {
        if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, traj.diagnostics);
        if (!cfg.trajectory_path.empty()) write_trajectory(cfg.trajectory_path, traj);
        if (cfg.write_snapshots && !cfg.output_prefix.empty())
            write_snapshot(cfg.output_prefix, final_step, state, cfg.grid);
    };

    const long nsteps = std::llround((cfg.t_end - state.t) / cfg.dt);
    long step = step0;
    record(step);
    try {
        for (long k = 0; k < nsteps; ++k) {
            state = step_rk4(state, cfg.dt, cfg, p, inertia);
            ++step;
            record(step);
        }
    } catch (...) {
        flush(step);  // keep the partial trajectory inspectable
        throw;
    }
    flush(step);
    return traj;
}

}  // namespace abraham
