#pragma once

// Run configuration for the evfield tool. See docs/config.md for the schema.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "evanescent/field.hpp"
#include "evanescent/lattice.hpp"
#include "evanescent/stap.hpp"

namespace evfield {

enum class Mode { rank, verify, simulate, stap, grid };

const char* to_string(Mode mode) noexcept;
Mode parse_mode(const std::string& name);

/// Thrown for anything the user can fix in the config or flags (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Slope pair plus modulating process, as written in the config.
struct ComponentConfig {
  evanescent::Index a = 0;
  evanescent::Index b = 1;
  std::optional<evanescent::Index> c;
  std::optional<evanescent::Index> d;
  std::optional<double> omega;
  evanescent::ProcessKind process = evanescent::ProcessKind::ar1;
  double variance = 1.0;
  double ar_coefficient = 0.5;
};

struct GridConfig {
  std::vector<evanescent::Index> rows{4, 8, 15, 16};
  std::vector<evanescent::Index> cols{4, 8, 15, 16};
  // Each entry is one component set; singletons by default.
  std::vector<std::vector<std::pair<evanescent::Index, evanescent::Index>>> sets;
  evanescent::ProcessKind process = evanescent::ProcessKind::ar1;
  static GridConfig defaults();
};

struct OutputPaths {
  std::optional<std::string> report;
  std::optional<std::string> gamma;
  std::optional<std::string> snapshots;
};

struct RunConfig {
  Mode mode = Mode::rank;
  evanescent::Index rows = 0;
  evanescent::Index cols = 0;
  std::vector<ComponentConfig> components;
  std::optional<evanescent::stap::Scenario> scenario;
  std::optional<evanescent::Index> projection_rank;
  std::optional<GridConfig> grid;
  std::optional<std::uint64_t> seed;
  evanescent::Index trials = 1;
  bool real_valued = false;
  std::optional<double> relative_tolerance;
  double certificate_tolerance = 1e-10;
  evanescent::Index certificate_cap = 4096;
  OutputPaths outputs;

  evanescent::LatticeRect rect() const;

  /// Components with seeds filled in; default omegas follow the golden angle.
  std::vector<evanescent::EvanescentComponent> build_components() const;

  /// Mode-specific checks; throws ConfigError.
  void validate() const;
};

/// Command-line overrides applied on top of the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> tolerance;
  std::optional<evanescent::Index> trials;
  bool real_valued = false;
  std::optional<std::string> export_gamma;
};

RunConfig parse_config(const nlohmann::json& doc, Mode mode);
RunConfig load_config(const std::string& path, Mode mode);
void apply_overrides(RunConfig& cfg, const Overrides& ov);

}  // namespace evfield
