#include "abraham/variational.hpp"

#include <cmath>
#include <random>

#include "abraham/errors.hpp"
#include "abraham/field_engine.hpp"

namespace abraham {
namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

PotentialState reconstruct_potentials(const FieldState& f, const ScalarField& rho_grid,
                                      const GridSpec& g) {
    const Spectral& sp = Spectral::get(g);
    const double div_b = max_abs(sp.divergence(f.B));
    if (div_b > 1e-8)
        throw NonSolenoidalB("max |div B| = " + std::to_string(div_b) + " exceeds 1e-8");

    PotentialState ps;
    ps.A = sp.vector_potential(f.B);
    ScalarField rho = rho_grid;
    const double mean = grid_mean(rho);
    for (double& v : rho.values) v -= mean;
    ps.A0 = sp.poisson_solve(rho);

    const VectorField grad_a0 = sp.gradient(ps.A0);
    ps.A_dot = VectorField(g);
    for (std::size_t i = 0; i < ps.A_dot.x.size(); ++i)
        ps.A_dot.set(i, -f.E.at(i) - grad_a0.at(i));

    ps.div_a_norm = l2_norm(sp.divergence(ps.A), g);
    ps.div_adot_norm = l2_norm(sp.divergence(ps.A_dot), g);
    const VectorField b_rebuilt = sp.curl(ps.A);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < b_rebuilt.x.size(); ++i) {
        err += norm2(b_rebuilt.at(i) - f.B.at(i));
        ref += norm2(f.B.at(i));
    }
    ps.rebuild_error_b = (ref > 0.0) ? std::sqrt(err / ref) : std::sqrt(err);
    return ps;
}

double lagrangian(const PotentialState& ps, const BodyState& b, const ExternalField& ext,
                  const ChargeProfile& p, const GridSpec& g, double inertia, double t) {
    const Spectral& sp = Spectral::get(g);
    const VectorField grad_a0 = sp.gradient(ps.A0);
    const VectorField B = sp.curl(ps.A);

    double field_quad = 0.0;
    for (std::size_t i = 0; i < B.x.size(); ++i) {
        const Vec3 E = -grad_a0.at(i) - ps.A_dot.at(i);
        field_quad += norm2(E) - norm2(B.at(i));
    }
    double L = 0.5 * field_quad * g.cell_volume() + 0.5 * norm2(b.v) + 0.5 * inertia * norm2(b.w);

    double interaction = 0.0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t i = g.index(ix, iy, iz);
                const Vec3 d = g.min_image(g.node(ix, iy, iz) - b.q);
                const double rho = p.density(d);
                if (rho == 0.0) continue;
                const auto [a0e, ae] = ext.potentials(b.q + d, t);
                const double a0 = ps.A0[i] + a0e;
                const Vec3 a = ps.A.at(i) + ae;
                interaction += (-a0 + dot(b.v + cross(b.w, d), a)) * rho;
            }
    return L + interaction * g.cell_volume();
}

double Perturbation::envelope(double t) const {
    const double s = (t - t1) / (t2 - t1);
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return std::exp(-1.0 / (s * (1.0 - s)));
}

double Perturbation::envelope_dot(double t) const {
    const double s = (t - t1) / (t2 - t1);
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double u = s * (1.0 - s);
    return envelope(t) * (1.0 - 2.0 * s) / (u * u) / (t2 - t1);
}

VariationalVerifier::VariationalVerifier(const Trajectory& traj)
    : traj_(traj),
      profile_(traj.config.make_profile()),
      inertia_(traj.inertia > 0.0 ? traj.inertia : profile_.moment_of_inertia()),
      include_self_(traj.config.self_field) {
    const GridSpec& g = traj_.config.grid;
    const ExternalField& ext = traj_.config.external;
    potentials_.reserve(traj_.samples.size());
    terms_.reserve(traj_.samples.size());
    for (const TrajectorySample& s : traj_.samples) {
        const ScalarField rho = sample_on_grid(profile_, g, s.body.q);
        potentials_.push_back(reconstruct_potentials(s.fields, rho, g));
        const PotentialState& ps = potentials_.back();

        SampleTerms st;
        double quad = 0.0;
        for (std::size_t i = 0; i < s.fields.E.x.size(); ++i)
            quad += norm2(s.fields.E.at(i)) - norm2(s.fields.B.at(i));
        st.field_quad = 0.5 * quad * g.cell_volume();

        double a0_acc = 0.0;
        Vec3 a_acc{}, m_acc{};
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const std::size_t i = g.index(ix, iy, iz);
                    const Vec3 d = g.min_image(g.node(ix, iy, iz) - s.body.q);
                    const double rho_d = profile_.density(d);
                    if (rho_d == 0.0) continue;
                    const auto [a0e, ae] = ext.potentials(s.body.q + d, s.t);
                    double a0 = a0e;
                    Vec3 a = ae;
                    if (include_self_) {
                        a0 += ps.A0[i];
                        a += ps.A.at(i);
                    }
                    a0_acc += a0 * rho_d;
                    a_acc += a * rho_d;
                    m_acc += cross(d, a) * rho_d;
                }
        const double vol = g.cell_volume();
        st.a0_int = a0_acc * vol;
        st.a_int = a_acc * vol;
        st.m_field = m_acc * vol;
        terms_.push_back(st);
    }
}

double VariationalVerifier::sample_lagrangian(std::size_t i, const Perturbation* pert,
                                              double eps) const {
    const TrajectorySample& s = traj_.samples[i];
    const SampleTerms& st = terms_[i];
    const GridSpec& g = traj_.config.grid;
    const ExternalField& ext = traj_.config.external;

    if (pert == nullptr || eps == 0.0) {
        return st.field_quad + 0.5 * norm2(s.body.v) + 0.5 * inertia_ * norm2(s.body.w) -
               st.a0_int + dot(s.body.v, st.a_int) + dot(s.body.w, st.m_field);
    }

    const double env = pert->envelope(s.t);
    const double env_dot = pert->envelope_dot(s.t);

    switch (pert->cls) {
        case PerturbationClass::fields: {
            // E -> E - eps*gdot*F, B -> B + eps*g*curl F, A -> A + eps*g*F;
            // the action is quadratic in the potentials, so this expansion is
            // exact.
            double L = st.field_quad + 0.5 * norm2(s.body.v) +
                       0.5 * inertia_ * norm2(s.body.w) - st.a0_int +
                       dot(s.body.v, st.a_int) + dot(s.body.w, st.m_field);
            L += eps * (-env_dot * pert->e_dot_shape[i] - env * pert->b_dot_curl_shape[i] +
                        env * pert->current_dot_shape[i]);
            L += 0.5 * eps * eps *
                 (env_dot * env_dot * pert->shape_sq - env * env * pert->curl_shape_sq);
            return L;
        }
        case PerturbationClass::rotation: {
            const Vec3 eta = (eps * env) * pert->direction;
            const Vec3 eta_dot = (eps * env_dot) * pert->direction;
            const Vec3 w_pert =
                so3_left_jacobian(eta) * eta_dot + exp_map(pert->direction, eps * env) * s.body.w;
            return st.field_quad + 0.5 * norm2(s.body.v) + 0.5 * inertia_ * norm2(w_pert) -
                   st.a0_int + dot(s.body.v, st.a_int) + dot(w_pert, st.m_field);
        }
        case PerturbationClass::translation: {
            const Vec3 q_pert = s.body.q + (eps * env) * pert->direction;
            const Vec3 v_pert = s.body.v + (eps * env_dot) * pert->direction;
            const PotentialState& ps = potentials_[i];
            double interaction = 0.0;
            for (int ix = 0; ix < g.n; ++ix)
                for (int iy = 0; iy < g.n; ++iy)
                    for (int iz = 0; iz < g.n; ++iz) {
                        const std::size_t idx = g.index(ix, iy, iz);
                        const Vec3 d = g.min_image(g.node(ix, iy, iz) - q_pert);
                        const double rho_d = profile_.density(d);
                        if (rho_d == 0.0) continue;
                        const auto [a0e, ae] = ext.potentials(q_pert + d, s.t);
                        double a0 = a0e;
                        Vec3 a = ae;
                        if (include_self_) {
                            a0 += ps.A0[idx];
                            a += ps.A.at(idx);
                        }
                        interaction += (-a0 + dot(v_pert + cross(s.body.w, d), a)) * rho_d;
                    }
            return st.field_quad + 0.5 * norm2(v_pert) + 0.5 * inertia_ * norm2(s.body.w) +
                   interaction * g.cell_volume();
        }
    }
    return 0.0;
}

double VariationalVerifier::action_perturbed(const Perturbation& pert, double eps) const {
    const std::size_t n = traj_.samples.size();
    if (n < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s += w * sample_lagrangian(i, &pert, eps);
    }
    return s * traj_.sample_dt;
}

double VariationalVerifier::action() const {
    const std::size_t n = traj_.samples.size();
    if (n < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s += w * sample_lagrangian(i, nullptr, 0.0);
    }
    return s * traj_.sample_dt;
}

double VariationalVerifier::first_variation(const Perturbation& pert, double eps) const {
    return (action_perturbed(pert, eps) - action_perturbed(pert, -eps)) / (2.0 * eps);
}

Perturbation VariationalVerifier::make_perturbation(PerturbationClass cls,
                                                    std::uint32_t seed) const {
    const GridSpec& g = traj_.config.grid;
    Perturbation pert;
    pert.cls = cls;
    pert.t1 = traj_.samples.front().t;
    pert.t2 = traj_.samples.back().t;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    if (cls != PerturbationClass::fields) {
        Vec3 u{uni(rng), uni(rng), uni(rng)};
        if (norm(u) < 1e-6) u = {1.0, 0.0, 0.0};
        pert.direction = u / norm(u);
        return pert;
    }

    // Divergence-free band-limited shape: curl of a random low-mode field.
    VectorField gen(g);
    struct Mode {
        int mx, my, mz;
        double amp, phase;
        int comp;
    };
    std::vector<Mode> modes;
    std::uniform_int_distribution<int> mdist(-2, 2);
    for (int k = 0; k < 8; ++k)
        modes.push_back({mdist(rng), mdist(rng), mdist(rng), uni(rng),
                         uni(rng) * 3.14159265358979323846, k % 3});
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const Vec3 x = g.node(ix, iy, iz);
                const std::size_t i = g.index(ix, iy, iz);
                for (const Mode& m : modes) {
                    const double phase =
                        kTwoPi / g.L * (m.mx * x.x + m.my * x.y + m.mz * x.z) + m.phase;
                    gen.comp(m.comp)[i] += m.amp * std::sin(phase);
                }
            }
    pert.shape = Spectral::get(g).curl(gen);
    const double scale = max_abs(pert.shape);
    if (scale > 0.0) pert.shape *= 1.0 / scale;
    pert.shape_curl = Spectral::get(g).curl(pert.shape);

    const double vol = g.cell_volume();
    double f2 = 0.0, cf2 = 0.0;
    for (std::size_t i = 0; i < pert.shape.x.size(); ++i) {
        f2 += norm2(pert.shape.at(i));
        cf2 += norm2(pert.shape_curl.at(i));
    }
    pert.shape_sq = f2 * vol;
    pert.curl_shape_sq = cf2 * vol;

    pert.e_dot_shape.resize(traj_.samples.size());
    pert.b_dot_curl_shape.resize(traj_.samples.size());
    pert.current_dot_shape.resize(traj_.samples.size());
    for (std::size_t k = 0; k < traj_.samples.size(); ++k) {
        const TrajectorySample& s = traj_.samples[k];
        double ef = 0.0, bc = 0.0, jf = 0.0;
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const std::size_t i = g.index(ix, iy, iz);
                    ef += dot(s.fields.E.at(i), pert.shape.at(i));
                    bc += dot(s.fields.B.at(i), pert.shape_curl.at(i));
                    const Vec3 d = g.min_image(g.node(ix, iy, iz) - s.body.q);
                    const double rho = profile_.density(d);
                    if (rho != 0.0)
                        jf += dot(s.body.v + cross(s.body.w, d), pert.shape.at(i)) * rho;
                }
        pert.e_dot_shape[k] = ef * vol;
        pert.b_dot_curl_shape[k] = bc * vol;
        pert.current_dot_shape[k] = jf * vol;
    }
    return pert;
}

Vec3 VariationalVerifier::poincare_momentum(std::size_t sample) const {
    return inertia_ * traj_.samples[sample].body.w + terms_[sample].m_field;
}

std::vector<double> VariationalVerifier::poincare_residual(int axis, const StructureConstants& sc,
                                                           int stride) const {
    const std::size_t n = traj_.samples.size();
    std::vector<double> out;
    if (n < static_cast<std::size_t>(2 * stride + 1)) return out;
    const double dt2 = 2.0 * stride * traj_.sample_dt;
    for (std::size_t i = stride; i + stride < n; ++i) {
        const Vec3 m_prev = poincare_momentum(i - stride);
        const Vec3 m_next = poincare_momentum(i + stride);
        const Vec3 m_here = poincare_momentum(i);
        const double ddt = (m_next[axis] - m_prev[axis]) / dt2;
        out.push_back(ddt - sc.contract(axis + 1, traj_.samples[i].body.w, m_here));
    }
    return out;
}

Vec3 VariationalVerifier::field_momentum_rate(std::size_t i) const {
    const GridSpec& g = traj_.config.grid;
    const ExternalField& ext = traj_.config.external;
    const TrajectorySample& s = traj_.samples[i];
    const PotentialState& ps = potentials_[i];

    VectorField grad_ax, grad_ay, grad_az;
    if (include_self_) {
        const Spectral& sp = Spectral::get(g);
        grad_ax = sp.gradient(ps.A.x);
        grad_ay = sp.gradient(ps.A.y);
        grad_az = sp.gradient(ps.A.z);
    }
    const Vec3 v = s.body.v;
    Vec3 acc{};
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t idx = g.index(ix, iy, iz);
                const Vec3 d = g.min_image(g.node(ix, iy, iz) - s.body.q);
                const double rho = profile_.density(d);
                if (rho == 0.0) continue;
                Vec3 rate{};
                if (include_self_) {
                    rate = ps.A_dot.at(idx);
                    rate += {dot(v, grad_ax.at(idx)), dot(v, grad_ay.at(idx)),
                             dot(v, grad_az.at(idx))};
                }
                if (!ext.is_zero()) {
                    const Mat3 ge = ext.vector_potential_gradient(s.body.q + d);
                    rate += {v.x * ge(0, 0) + v.y * ge(1, 0) + v.z * ge(2, 0),
                             v.x * ge(0, 1) + v.y * ge(1, 1) + v.z * ge(2, 1),
                             v.x * ge(0, 2) + v.y * ge(1, 2) + v.z * ge(2, 2)};
                }
                acc += cross(d, rate) * rho;
            }
    return acc * g.cell_volume();
}

std::vector<double> VariationalVerifier::torque_equivalence_gap(int axis) const {
    const std::size_t n = traj_.samples.size();
    std::vector<double> out;
    if (n < 3) return out;
    const StructureConstants sc = structure_constants();
    const GridSpec& g = traj_.config.grid;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const TrajectorySample& s = traj_.samples[i];
        const Vec3 m_here = poincare_momentum(i);
        const Vec3 rate = field_momentum_rate(i);
        const Vec3 torque = lorentz_torque(s.fields, traj_.config.external, profile_, g, s.body,
                                           s.t, include_self_);
        // residual - (I wdot - T) with I wdot = D_t m - rate; the centered
        // difference D_t m cancels, leaving the pure integral identity.
        const double gap =
            rate[axis] - sc.contract(axis + 1, s.body.w, m_here) + torque[axis];
        out.push_back(gap);
    }
    return out;
}

VariationalVerifier::ELResiduals VariationalVerifier::euler_lagrange_residuals(
    double current_scale) const {
    ELResiduals res;
    const GridSpec& g = traj_.config.grid;
    const std::size_t n = traj_.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const TrajectorySample& s = traj_.samples[i];
        res.gauss = std::max(
            res.gauss,
            gauss_residual(s.fields, sample_on_grid(profile_, g, s.body.q), g));
    }
    if (n < 3) return res;
    // 4th-order centered stencil when the window allows it, else 2nd order.
    const bool fourth = n >= 5;
    const std::size_t lo = fourth ? 2 : 1;
    const double dt = traj_.sample_dt;
    for (std::size_t i = lo; i + lo < n; ++i) {
        const TrajectorySample& s = traj_.samples[i];

        VectorField resid = curl(s.fields.B, g);
        VectorField j = deposit_current(profile_, g, s.body.q, s.body.v, s.body.w);
        // the uniform background carries the return current
        const Vec3 j_mean{grid_mean(j.x), grid_mean(j.y), grid_mean(j.z)};
        auto d_dt = [&](auto&& value) {
            if (fourth)
                return (value(i - 2) - 8.0 * value(i - 1) + 8.0 * value(i + 1) - value(i + 2)) *
                       (1.0 / (12.0 * dt));
            return (value(i + 1) - value(i - 1)) * (1.0 / (2.0 * dt));
        };
        for (std::size_t k = 0; k < resid.x.size(); ++k) {
            const Vec3 dE = d_dt([&](std::size_t m) { return traj_.samples[m].fields.E.at(k); });
            resid.set(k, dE - resid.at(k) + current_scale * (j.at(k) - j_mean));
        }
        res.ampere = std::max(res.ampere, l2_norm(resid, g));

        const Vec3 dv = d_dt([&](std::size_t m) { return traj_.samples[m].body.v; });
        const Vec3 force = lorentz_force(s.fields, traj_.config.external, profile_, g, s.body,
                                         s.t, traj_.config.self_field);
        const double fr = norm(dv - force);
        res.force_residual.push_back(fr);
        res.force_max = std::max(res.force_max, fr);
    }
    return res;
}

}  // namespace abraham
