#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddr {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value configuration with [run] and [ldm] sections; see the
// README for the grammar. parse(serialize(c)) == c.
struct RunConfig {
  // [run]
  std::string case_name = "square";
  int k = 0;
  std::string mesh = "cartesian";  // cartesian | perturbed | triangular
  int levels = 4;
  int n0 = 8;
  int refinement_ratio = 0;        // interface refinement ratio
  std::vector<double> ratios = {1e-6, 1e-3, 1e3, 1e6};  // sigma_int / sigma_ext
  double sigma_ext = 1.0;
  double eta = -1.0;               // negative = auto
  std::uint64_t seed = 42;
  std::string outdir = "out";
  // [ldm]
  double ldm_t_c = 1.0;
  double ldm_field = 1.0;
  double ldm_radius = 0.25;
  double ldm_t_f = 2.0;
  int ldm_steps0 = 200;

  bool operator==(const RunConfig&) const = default;

  std::vector<int> level_sizes() const;
  void validate() const;  // throws ConfigError
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& c);

RunConfig load_config_file(const std::string& path);

}  // namespace ddr
