#include "abraham/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "abraham/errors.hpp"

namespace abraham {
namespace {
constexpr double kTwoPi = 6.28318530717958647692;
std::mutex g_plan_mutex;
}  // namespace

Spectral::Spectral(const GridSpec& g) : grid_(g) {
    const int n = g.n;
    nc_ = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    real_buf_.resize(g.size());
    cplx_buf_.resize(nc_);
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan_fwd_ = fftw_plan_dft_r2c_3d(n, n, n, real_buf_.data(),
                                     reinterpret_cast<fftw_complex*>(cplx_buf_.data()),
                                     FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_3d(n, n, n,
                                     reinterpret_cast<fftw_complex*>(cplx_buf_.data()),
                                     real_buf_.data(), FFTW_ESTIMATE);
}

Spectral::~Spectral() {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

const Spectral& Spectral::get(const GridSpec& g) {
    static std::map<std::pair<int, double>, std::unique_ptr<Spectral>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(g.n, g.L);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Spectral>(g)).first;
    return *it->second;
}

double Spectral::k_full(int m) const {
    const int n = grid_.n;
    const int folded = (m <= n / 2) ? m : m - n;
    return kTwoPi / grid_.L * folded;
}

double Spectral::k_deriv(int m) const {
    if (m == grid_.n / 2) return 0.0;
    return k_full(m);
}

std::vector<Spectral::cplx> Spectral::forward(const ScalarField& f) const {
    real_buf_ = f.values;
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), real_buf_.data(),
                         reinterpret_cast<fftw_complex*>(cplx_buf_.data()));
    return cplx_buf_;
}

ScalarField Spectral::inverse(const std::vector<cplx>& f) const {
    cplx_buf_ = f;
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                         reinterpret_cast<fftw_complex*>(cplx_buf_.data()), real_buf_.data());
    ScalarField out;
    out.values = real_buf_;
    const double scale = 1.0 / static_cast<double>(grid_.size());
    for (double& v : out.values) v *= scale;
    return out;
}

VectorField Spectral::curl(const VectorField& f) const {
    const int n = grid_.n;
    const int nz = n / 2 + 1;
    const auto fx = forward(f.x);
    const auto fy = forward(f.y);
    const auto fz = forward(f.z);
    std::vector<cplx> cx(nc_), cy(nc_), cz(nc_);
    const cplx I(0.0, 1.0);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = k_deriv(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = k_deriv(iy);
            for (int iz = 0; iz < nz; ++iz, ++idx) {
                const double kz = k_deriv(iz);
                cx[idx] = I * (ky * fz[idx] - kz * fy[idx]);
                cy[idx] = I * (kz * fx[idx] - kx * fz[idx]);
                cz[idx] = I * (kx * fy[idx] - ky * fx[idx]);
            }
        }
    }
    VectorField out;
    out.x = inverse(cx);
    out.y = inverse(cy);
    out.z = inverse(cz);
    return out;
}

ScalarField Spectral::divergence(const VectorField& f) const {
    const int n = grid_.n;
    const int nz = n / 2 + 1;
    const auto fx = forward(f.x);
    const auto fy = forward(f.y);
    const auto fz = forward(f.z);
    std::vector<cplx> d(nc_);
    const cplx I(0.0, 1.0);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = k_deriv(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = k_deriv(iy);
            for (int iz = 0; iz < nz; ++iz, ++idx) {
                const double kz = k_deriv(iz);
                d[idx] = I * (kx * fx[idx] + ky * fy[idx] + kz * fz[idx]);
            }
        }
    }
    return inverse(d);
}

VectorField Spectral::gradient(const ScalarField& f) const {
    const int n = grid_.n;
    const int nz = n / 2 + 1;
    const auto fh = forward(f);
    std::vector<cplx> gx(nc_), gy(nc_), gz(nc_);
    const cplx I(0.0, 1.0);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = k_deriv(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = k_deriv(iy);
            for (int iz = 0; iz < nz; ++iz, ++idx) {
                const double kz = k_deriv(iz);
                gx[idx] = I * kx * fh[idx];
                gy[idx] = I * ky * fh[idx];
                gz[idx] = I * kz * fh[idx];
            }
        }
    }
    VectorField out;
    out.x = inverse(gx);
    out.y = inverse(gy);
    out.z = inverse(gz);
    return out;
}

ScalarField Spectral::poisson_solve(const ScalarField& rhs) const {
    const double mean = grid_mean(rhs);
    if (std::abs(mean) > 1e-10 * std::max(1.0, max_abs(rhs)))
        throw NonZeroMean("poisson_solve: rhs mean " + std::to_string(mean) +
                          " violates periodic solvability");
    const int n = grid_.n;
    const int nz = n / 2 + 1;
    auto fh = forward(rhs);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = k_full(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = k_full(iy);
            for (int iz = 0; iz < nz; ++iz, ++idx) {
                const double kz = k_full(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                fh[idx] = (k2 > 0.0) ? fh[idx] / k2 : cplx(0.0, 0.0);
            }
        }
    }
    return inverse(fh);
}

VectorField Spectral::vector_potential(const VectorField& b) const {
    const int n = grid_.n;
    const int nz = n / 2 + 1;
    const auto bx = forward(b.x);
    const auto by = forward(b.y);
    const auto bz = forward(b.z);
    std::vector<cplx> ax(nc_), ay(nc_), az(nc_);
    const cplx I(0.0, 1.0);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = k_deriv(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = k_deriv(iy);
            for (int iz = 0; iz < nz; ++iz, ++idx) {
                const double kz = k_deriv(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 > 0.0) {
                    ax[idx] = I * (ky * bz[idx] - kz * by[idx]) / k2;
                    ay[idx] = I * (kz * bx[idx] - kx * bz[idx]) / k2;
                    az[idx] = I * (kx * by[idx] - ky * bx[idx]) / k2;
                } else {
                    ax[idx] = ay[idx] = az[idx] = cplx(0.0, 0.0);
                }
            }
        }
    }
    VectorField out;
    out.x = inverse(ax);
    out.y = inverse(ay);
    out.z = inverse(az);
    return out;
}

}  // namespace abraham
