#pragma once

#include <complex>
#include <vector>

#include "abraham/grid.hpp"

namespace abraham {

/// Fourier-space workspace for one grid size. Plans are created once per grid
/// and shared; all transforms are deterministic (FFTW_ESTIMATE planning).
///
/// Differentiation multiplies by i*k with the Nyquist wavenumber zeroed, so
/// div(curl f) = 0 and curl(grad f) = 0 hold to rounding on any real field.
class Spectral {
public:
    using cplx = std::complex<double>;

    explicit Spectral(const GridSpec& g);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const GridSpec& grid() const { return grid_; }

    std::vector<cplx> forward(const ScalarField& f) const;
    ScalarField inverse(const std::vector<cplx>& f) const;

    VectorField curl(const VectorField& f) const;
    ScalarField divergence(const VectorField& f) const;
    VectorField gradient(const ScalarField& f) const;

    /// Zero-mean phi with -Laplace(phi) = rhs. Throws NonZeroMean when the rhs
    /// mean exceeds 1e-10 * max(1, |rhs|_inf).
    ScalarField poisson_solve(const ScalarField& rhs) const;

    /// Coulomb-gauge vector potential: divergence-free A with curl A = b,
    /// assuming div b = 0 and b has zero mean. A_hat = (i k ^ b_hat) / |k|^2.
    VectorField vector_potential(const VectorField& b) const;

    /// Wavenumber along one axis for mode index m, Nyquist zeroed.
    double k_deriv(int m) const;
    /// Wavenumber with the Nyquist mode kept at -pi*n/L (used for |k|^2).
    double k_full(int m) const;

    /// Shared per-grid-size instance.
    static const Spectral& get(const GridSpec& g);

private:
    GridSpec grid_;
    std::size_t nc_;  // n*n*(n/2+1)
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    mutable std::vector<double> real_buf_;
    mutable std::vector<cplx> cplx_buf_;
};

}  // namespace abraham
