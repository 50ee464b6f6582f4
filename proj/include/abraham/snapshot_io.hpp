#pragma once

#include <string>
#include <vector>

#include "abraham/simulation.hpp"

namespace abraham {

/// Field snapshot: one little-endian float64 file per component
/// (`<prefix>_{Ex,Ey,Ez,Bx,By,Bz}_<step>.bin`), each starting with a 32-byte
/// header "ABRFLD01" + u64 n + f64 L + 8 reserved bytes, data in C-order with
/// z fastest. The body state and time go to `<prefix>_body_<step>.txt`.
void write_snapshot(const std::string& prefix, long step, const SimState& s, const GridSpec& g);
SimState read_snapshot(const std::string& prefix, long step, const GridSpec& g);

void write_scalar_field(const std::string& path, const ScalarField& f, const GridSpec& g);
ScalarField read_scalar_field(const std::string& path, const GridSpec& g);

/// Diagnostics CSV, one row per step:
/// t,energy,px,py,pz,mx,my,mz,gauss_residual,qx,qy,qz,vx,vy,vz,wx,wy,wz
std::string csv_header();
std::string csv_row(const DiagnosticsRow& r);
void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

/// Single-file trajectory container (field+body samples at the output stride).
void write_trajectory(const std::string& path, const Trajectory& traj);
/// Loads samples; grid/profile metadata comes from cfg, which must match the
/// stored grid.
Trajectory read_trajectory(const std::string& path, const SimConfig& cfg);

}  // namespace abraham
