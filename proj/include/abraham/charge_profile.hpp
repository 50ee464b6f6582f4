#pragma once

#include <string>

#include "abraham/vec3.hpp"

namespace abraham {

struct GridSpec;
struct ScalarField;

enum class ProfileKind { gaussian, bump };

/// Radially symmetric coupling function rho with unit total charge.
/// The bump profile is compactly supported on |x| < 5*sigma.
class ChargeProfile {
public:
    ChargeProfile(ProfileKind kind, double sigma);

    ProfileKind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    double total_charge() const { return 1.0; }

    /// Pointwise density rho(x) = rho_r(|x|).
    double density(const Vec3& x) const;
    double density_radial(double r) const;
    /// d rho_r / dr, for analytic gradients in oracles.
    double density_radial_deriv(double r) const;

    /// I = (2/3) int x^2 rho dx by adaptive radial quadrature,
    /// (2/3) * 4*pi * int r^4 rho_r(r) dr. Throws QuadratureNotConverged.
    double moment_of_inertia() const;

    /// Radius beyond which the density is treated as zero (bump: exact support,
    /// gaussian: tail below 1e-16 of the peak).
    double support_radius() const;

    static ProfileKind kind_from_string(const std::string& s);

private:
    ProfileKind kind_;
    double sigma_;
    double bump_norm_ = 0.0;  // normalization constant for the bump profile
};

/// Samples rho(x - q) at the grid nodes with minimum-image displacement.
/// Throws ProfileTooWide when 10*sigma > L.
ScalarField sample_on_grid(const ChargeProfile& p, const GridSpec& g, const Vec3& q);

}  // namespace abraham
