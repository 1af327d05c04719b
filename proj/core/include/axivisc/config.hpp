#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <stdexcept>
#include <string_view>

#include "axivisc/evolution.hpp"

namespace axivisc {

enum class InitialKind { gaussian_ring, yudovich_patch, ring_pair };

std::string_view to_string(InitialKind kind);
InitialKind initial_kind_from_string(std::string_view name);

/// Parameters of the initial q = omega / r.
struct InitialData {
  InitialKind kind = InitialKind::gaussian_ring;
  double amplitude = 1.0;
  double r0 = 0.5;
  double z0 = 0.0;
  double sigma = 0.15;         // Gaussian width
  double patch_radius = 0.2;   // yudovich_patch disc radius in (r, z)
  double separation = 0.6;     // ring_pair centre distance along z

  friend bool operator==(const InitialData&, const InitialData&) = default;
};

struct ExperimentConfig {
  SimConfig sim;
  InitialData initial;
  std::filesystem::path output_dir = "run";
  std::uint64_t seed = 12345;  // only used by randomized property tests
};

/// Thrown for malformed config text; the message names the line and key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` lines; '#' starts a comment; blank lines are ignored.
/// Omitted keys keep their defaults; unknown keys, duplicate keys and values
/// of the wrong type are errors. snapshot_times is a comma-separated list.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every key in a fixed order with reals printed to 17 significant digits,
/// so parse_config(emit_config(c)) reproduces c exactly.
std::string emit_config(const ExperimentConfig& config);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace axivisc
