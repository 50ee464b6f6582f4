#pragma once

#include "abraham/charge_profile.hpp"
#include "abraham/grid.hpp"
#include "abraham/spectral.hpp"

namespace abraham {

VectorField curl(const VectorField& f, const GridSpec& g);
ScalarField divergence(const VectorField& f, const GridSpec& g);
ScalarField poisson_solve(const ScalarField& rhs, const GridSpec& g);

/// j(x) = (v + w ^ (x - q)) rho(x - q), minimum-image displacement.
VectorField deposit_current(const ChargeProfile& p, const GridSpec& g, const Vec3& q,
                            const Vec3& v, const Vec3& w);

/// (E_dot, B_dot) = (curl B - j, -curl E).
struct FieldDerivative {
    VectorField E_dot;
    VectorField B_dot;
};
FieldDerivative maxwell_rhs(const FieldState& f, const VectorField& j, const GridSpec& g);

/// Coulomb field of the charge at rest: E = -grad poisson(rho - mean), B = 0.
FieldState coulomb_init(const ChargeProfile& p, const GridSpec& g, const Vec3& q);

/// ||div E - (rho - mean rho)||_2 / ||rho||_2. The uniform background follows
/// the jellium convention: a periodic box carries no net charge.
double gauss_residual(const FieldState& f, const ScalarField& rho_grid, const GridSpec& g);

/// max |div B| over the grid.
double div_b_residual(const FieldState& f, const GridSpec& g);

}  // namespace abraham
