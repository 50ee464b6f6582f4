#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abraham/config.hpp"
#include "abraham/errors.hpp"
#include "abraham/simulation.hpp"
#include "abraham/snapshot_io.hpp"
#include "abraham/variational.hpp"

namespace {

using namespace abraham;

constexpr const char* kVersion = "1.0.0";

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides) {
    const SimConfig cfg = load_config(config_path, overrides);
    const Trajectory traj = run(cfg);
    const DriftReport rep = drift_report(traj.diagnostics);
    std::cout << rep.summary_table();
    std::cout << "steps " << traj.diagnostics.size() - 1 << ", samples " << traj.samples.size()
              << "\n";
    return 0;
}

int cmd_check_conservation(const std::string& config_path,
                           const std::vector<std::string>& overrides, int refine) {
    SimConfig cfg = load_config(config_path, overrides);
    std::vector<double> dts, energy_errs;
    DriftReport base_rep;
    for (int level = 0; level <= refine; ++level) {
        SimConfig c = cfg;
        c.dt = cfg.dt / std::pow(2.0, level);
        c.output_stride = cfg.output_stride << level;
        if (level > 0) {
            // refinement sweeps are in-memory only
            c.csv_path.clear();
            c.trajectory_path.clear();
            c.write_snapshots = false;
        }
        const Trajectory traj = run(c);
        const DriftReport rep = drift_report(traj.diagnostics);
        if (level == 0) base_rep = rep;
        dts.push_back(c.dt);
        energy_errs.push_back(std::max(rep.energy, 1e-16));
        std::printf("dt %-12.6g energy drift %-12.4e |P| drift %-12.4e |M| drift %-12.4e\n",
                    c.dt, rep.energy, norm(rep.momentum), norm(rep.angular_momentum));
    }
    std::cout << "charge " << ChargeProfile(cfg.charge_kind, cfg.sigma).total_charge() << "\n";
    std::cout << base_rep.summary_table();
    if (refine > 0) {
        const double order = fit_order(dts, energy_errs);
        std::printf("energy drift convergence order %.2f\n", order);
    }
    return 0;
}

const char* class_name(PerturbationClass c) {
    switch (c) {
        case PerturbationClass::fields: return "fields";
        case PerturbationClass::translation: return "translation";
        case PerturbationClass::rotation: return "rotation";
    }
    return "?";
}

int cmd_check_variational(const std::string& config_path,
                          const std::vector<std::string>& overrides,
                          const std::string& trajectory_path, double eps,
                          const std::string& cls_name, const std::string& residual_csv) {
    const SimConfig cfg = load_config(config_path, overrides);
    const Trajectory traj = read_trajectory(trajectory_path, cfg);
    if (traj.samples.size() < 5)
        throw ConfigError("trajectory has too few samples for the verification passes");
    const VariationalVerifier vv(traj);

    std::cout << "samples " << vv.num_samples() << ", action " << vv.action() << "\n";

    std::vector<PerturbationClass> classes;
    if (cls_name == "all" || cls_name == "fields") classes.push_back(PerturbationClass::fields);
    if (cls_name == "all" || cls_name == "translation")
        classes.push_back(PerturbationClass::translation);
    if (cls_name == "all" || cls_name == "rotation") classes.push_back(PerturbationClass::rotation);
    if (classes.empty()) throw ConfigError("unknown perturbation class '" + cls_name + "'");

    for (PerturbationClass c : classes) {
        const Perturbation pert = vv.make_perturbation(c, 12345);
        const double s0 = vv.action();
        // On solutions the action increment is second order in eps (the
        // stationarity statement); off solutions the linear term dominates and
        // the ratio collapses toward 2.
        const double d1 = vv.action_perturbed(pert, eps) - s0;
        const double d2 = vv.action_perturbed(pert, 0.5 * eps) - s0;
        const double fv = vv.first_variation(pert, eps);
        std::printf("class %-12s |dS(eps)|/|dS(eps/2)| = %.3f (expect 4), fv = %.3e\n",
                    class_name(c), std::abs(d1) / std::max(std::abs(d2), 1e-300), fv);
    }

    const StructureConstants sc = structure_constants();
    std::vector<std::vector<double>> residuals(3);
    for (int axis = 0; axis < 3; ++axis) {
        residuals[axis] = vv.poincare_residual(axis, sc);
        double mx = 0.0;
        for (double r : residuals[axis]) mx = std::max(mx, std::abs(r));
        const std::vector<double> gap = vv.torque_equivalence_gap(axis);
        double gmx = 0.0;
        for (double g : gap) gmx = std::max(gmx, std::abs(g));
        std::printf("poincare axis %d: max residual %.3e, max torque-equivalence gap %.3e\n",
                    axis, mx, gmx);
    }

    const auto el = vv.euler_lagrange_residuals();
    std::printf("euler-lagrange: gauss %.3e, ampere %.3e, force %.3e\n", el.gauss, el.ampere,
                el.force_max);

    if (!residual_csv.empty()) {
        std::ofstream os(residual_csv);
        if (!os) throw IoError("cannot open '" + residual_csv + "' for writing");
        os << "t,poincare_x,poincare_y,poincare_z,force_residual\n";
        for (std::size_t i = 0; i < residuals[0].size(); ++i) {
            const double t = traj.samples[i + 1].t;
            os << t << "," << residuals[0][i] << "," << residuals[1][i] << ","
               << residuals[2][i] << ","
               << (i < el.force_residual.size() ? el.force_residual[i] : 0.0) << "\n";
        }
    }
    return 0;
}

bool check(const char* name, bool ok) {
    std::printf("%-40s %s\n", name, ok ? "pass" : "FAIL");
    return ok;
}

int cmd_so3_selftest() {
    bool ok = true;
    const Vec3 w{0.3, -1.2, 0.7};

    ok &= check("hat/vee roundtrip", norm(vee(hat(w)) - w) < 1e-14);

    const Rotation R = exp_map(w, 0.37);
    const Mat3 gram = R.m * R.m.transposed();
    ok &= check("exp_map orthogonal", (gram - Mat3::identity()).max_abs() < 1e-13);
    ok &= check("exp_map det +1", std::abs(R.m.det() - 1.0) < 1e-13);

    const Vec3 tiny{1e-9, -2e-9, 0.5e-9};
    const Mat3 series = exp_map(tiny, 1.0).m - Mat3::identity() - hat(tiny);
    ok &= check("exp_map small-angle branch", series.max_abs() < 1e-15);

    const StructureConstants sc = structure_constants();
    const Vec3 m{0.5, 0.25, -1.0};
    ok &= check("contraction equals w ^ m", norm(sc.contract(w, m) - cross(w, m)) < 1e-14);

    const StructureConstants bad = structure_constants_sign_flipped();
    ok &= check("sign-flip tripwire", norm(bad.contract(w, m) + cross(w, m)) < 1e-14 &&
                                          norm(bad.contract(w, m) - cross(w, m)) > 0.1);

    // d/dt exp(hat(a t)) at t=0 must equal hat(Jl(a) adot) with Jl(0)=I
    const Vec3 a{0.2, 0.1, -0.4};
    const double h = 1e-6;
    const Mat3 fd = (exp_map(a, h).m - exp_map(a, -h).m) * (1.0 / (2.0 * h));
    const Mat3 an = hat(so3_left_jacobian(Vec3{}) * a);
    ok &= check("left jacobian at identity", (fd - an).max_abs() < 1e-8);

    bool threw = false;
    try {
        Mat3 notskew = Mat3::identity();
        vee(notskew);
    } catch (const NonSkewInput&) {
        threw = true;
    }
    ok &= check("vee rejects non-skew", threw);

    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotating extended-charge simulator and verification suite"};
    app.set_version_flag("--version",
                         std::string("abraham ") + kVersion + " (config schema " +
                             abraham::config_schema_hash() + ")");
    app.require_subcommand(1);

    std::string config_path, trajectory_path, cls = "all";
    std::string residual_csv;
    std::vector<std::string> overrides;
    int refine = 0;
    double eps = 1e-3;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "run configuration file");
        if (config_required) opt->required();
        sub->add_option("--set", overrides, "override config entries, key=value")
            ->take_all();
    };

    CLI::App* sim = app.add_subcommand("simulate", "advance the coupled system and write outputs");
    add_common(sim, true);

    CLI::App* cons =
        app.add_subcommand("check-conservation", "run and report conserved-charge drift");
    add_common(cons, true);
    cons->add_option("--refine", refine, "extra dt-halving refinement levels");

    CLI::App* var =
        app.add_subcommand("check-variational", "verify stationarity on a stored trajectory");
    add_common(var, true);
    var->add_option("--trajectory", trajectory_path, "trajectory file to verify")->required();
    var->add_option("--eps", eps, "perturbation amplitude");
    var->add_option("--class", cls, "fields|translation|rotation|all");
    var->add_option("--residual-csv", residual_csv, "write residual time series to this CSV");

    CLI::App* self = app.add_subcommand("so3-selftest", "rotation-algebra property checks");
    (void)self;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, overrides);
        if (cons->parsed()) return cmd_check_conservation(config_path, overrides, refine);
        if (var->parsed())
            return cmd_check_variational(config_path, overrides, trajectory_path, eps, cls,
                                         residual_csv);
        if (self->parsed()) return cmd_so3_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
