#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abraham/simulation.hpp"

namespace abraham {

/// Flat key=value run configuration. '#' starts a comment, blank lines are
/// skipped, later assignments win. Unknown keys raise ConfigError.
///
/// Keys:
///   grid.n grid.length
///   charge.kind charge.sigma
///   external.kind external.b external.axis external.params
///   body.q0 body.v0 body.omega0 body.self_field
///   sim.dt sim.t_end sim.force_scale sim.resume_prefix sim.resume_step
///   output.stride output.prefix output.csv output.trajectory output.snapshots
///   threads
SimConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});

/// Builds a SimConfig from explicit pairs (used by load_config and tests).
SimConfig config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

/// FNV-1a hash over the sorted recognized key names, hex-encoded. Changes
/// whenever the accepted schema changes; printed by the CLI version string.
std::string config_schema_hash();

}  // namespace abraham
