#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abraham/body_dynamics.hpp"
#include "abraham/charge_profile.hpp"
#include "abraham/diagnostics.hpp"
#include "abraham/external_fields.hpp"
#include "abraham/field_engine.hpp"
#include "abraham/grid.hpp"

namespace abraham {

struct SimConfig {
    GridSpec grid;
    ProfileKind charge_kind = ProfileKind::gaussian;
    double sigma = 1.0;
    ExternalField external;
    Vec3 q0, v0, w0;
    bool self_field = true;
    double dt = 0.125;
    double t_end = 5.0;
    double force_scale = 1.0;  // 1.0 for physics; != 1 only for sabotage controls
    int output_stride = 1;
    int threads = 0;
    std::string csv_path;
    std::string output_prefix;
    std::string trajectory_path;
    bool write_snapshots = false;
    std::string resume_prefix;
    long resume_step = -1;

    /// Throws ConfigError on an invalid combination (dt bound, box width, ...).
    void validate() const;
    ChargeProfile make_profile() const { return ChargeProfile(charge_kind, sigma); }
};

struct SimState {
    double t = 0.0;
    FieldState fields;
    BodyState body;
};

struct SimStateDerivative {
    FieldDerivative fields;
    BodyDerivative body;
};

struct TrajectorySample {
    double t = 0.0;
    FieldState fields;
    BodyState body;
};

/// Time-indexed record of a run: dense diagnostics rows (every step) plus full
/// field+body samples at the output stride.
struct Trajectory {
    SimConfig config;
    double inertia = 0.0;
    double sample_dt = 0.0;  // spacing of the stored samples
    std::vector<TrajectorySample> samples;
    std::vector<DiagnosticsRow> diagnostics;
};

SimStateDerivative coupled_rhs(const SimState& s, const SimConfig& cfg, const ChargeProfile& p,
                               double inertia);

/// One classical RK4 step over the full coupled state. The rotation matrix is
/// advanced by exp_map of the RK4-weighted average of the stage angular
/// velocities, then re-orthonormalized. Throws NumericalBlowup past 1e12.
SimState step_rk4(const SimState& s, double dt, const SimConfig& cfg, const ChargeProfile& p,
                  double inertia);

/// Per-step observer; return value ignored for now.
using StepCallback = std::function<void(const SimState&, const DiagnosticsRow&)>;

/// Initializes (coulomb_init or resume snapshot), advances to t_end, records
/// samples and per-step diagnostics. On a numerical failure the partial
/// trajectory is flushed to the configured outputs before the error
/// propagates.
Trajectory run(const SimConfig& cfg, const StepCallback& on_step = {});

}  // namespace abraham
