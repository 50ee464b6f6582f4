#pragma once

#include <string>
#include <vector>

#include "abraham/body_dynamics.hpp"
#include "abraham/charge_profile.hpp"
#include "abraham/external_fields.hpp"
#include "abraham/grid.hpp"

namespace abraham {

struct DiagnosticsRow {
    double t = 0.0;
    double energy = 0.0;
    Vec3 momentum;
    Vec3 angular_momentum;
    double gauss_residual = 0.0;
    double div_b = 0.0;
    BodyState body;
};

/// (1/2) int (|E|^2 + |B|^2) + (1/2) v^2 + (1/2) I w^2 + int A0_ext rho(x-q).
double energy(const FieldState& f, const BodyState& b, const ExternalField& ext,
              const ChargeProfile& p, const GridSpec& g, double inertia, double t = 0.0);

/// v + int E ^ B + int A_ext rho(x-q).
Vec3 momentum(const FieldState& f, const BodyState& b, const ExternalField& ext,
              const ChargeProfile& p, const GridSpec& g, double t = 0.0);

/// q ^ v + I w + int x ^ (E ^ B) + int x ^ A_ext rho(x-q), box coordinates
/// centered on the box midpoint (minimum image).
Vec3 angular_momentum(const FieldState& f, const BodyState& b, const ExternalField& ext,
                      const ChargeProfile& p, const GridSpec& g, double inertia, double t = 0.0);

DiagnosticsRow diagnostics_row(const FieldState& f, const BodyState& b, const ExternalField& ext,
                               const ChargeProfile& p, const GridSpec& g, double inertia,
                               double t);

/// Relative drift max_t |Q(t) - Q(0)| / max(|Q(0)|, 1) per conserved charge.
struct DriftReport {
    double energy = 0.0;
    Vec3 momentum;
    Vec3 angular_momentum;
    double max_gauss_residual = 0.0;
    double max_div_b = 0.0;

    std::string summary_table() const;
};
DriftReport drift_report(const std::vector<DiagnosticsRow>& rows);

/// Least-squares slope of log(err) vs log(dt); used for convergence-order fits.
double fit_order(const std::vector<double>& dts, const std::vector<double>& errs);

}  // namespace abraham
