#pragma once

#include <cstddef>
#include <vector>

#include "abraham/vec3.hpp"

namespace abraham {

/// Periodic cube [-L/2, L/2)^3 discretized with n nodes per axis.
/// Node (ix,iy,iz) sits at (ix*h - L/2, iy*h - L/2, iz*h - L/2); storage is
/// C-order with z fastest.
struct GridSpec {
    int n = 32;
    double L = 16.0;

    double h() const { return L / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double cell_volume() const { return h() * h() * h(); }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }

    double coord(int i) const { return i * h() - 0.5 * L; }
    Vec3 node(int ix, int iy, int iz) const { return {coord(ix), coord(iy), coord(iz)}; }

    /// Wrap a displacement component into [-L/2, L/2).
    double min_image(double d) const {
        d -= L * std::floor(d / L + 0.5);
        return d;
    }
    Vec3 min_image(const Vec3& d) const { return {min_image(d.x), min_image(d.y), min_image(d.z)}; }

    bool contains(const Vec3& q) const {
        return std::abs(q.x) <= 0.5 * L && std::abs(q.y) <= 0.5 * L && std::abs(q.z) <= 0.5 * L;
    }

    bool operator==(const GridSpec& o) const { return n == o.n && L == o.L; }
};

struct ScalarField {
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : values(g.size(), 0.0) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    ScalarField& operator+=(const ScalarField& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
        return *this;
    }
    ScalarField& operator*=(double s) {
        for (double& v : values) v *= s;
        return *this;
    }
};

struct VectorField {
    ScalarField x, y, z;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : x(g), y(g), z(g) {}

    ScalarField& comp(int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const ScalarField& comp(int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 at(std::size_t i) const { return {x[i], y[i], z[i]}; }
    void set(std::size_t i, const Vec3& v) {
        x[i] = v.x;
        y[i] = v.y;
        z[i] = v.z;
    }

    VectorField& operator+=(const VectorField& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    VectorField& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
};

struct FieldState {
    VectorField E;
    VectorField B;

    FieldState() = default;
    explicit FieldState(const GridSpec& g) : E(g), B(g) {}
};

double grid_sum(const ScalarField& f);
double grid_integral(const ScalarField& f, const GridSpec& g);
double grid_mean(const ScalarField& f);
/// L2 norm sqrt(sum f^2 h^3).
double l2_norm(const ScalarField& f, const GridSpec& g);
double l2_norm(const VectorField& f, const GridSpec& g);
double max_abs(const ScalarField& f);
double max_abs(const VectorField& f);

}  // namespace abraham
