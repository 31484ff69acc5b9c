#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsyb/distributions.hpp"
#include "tsyb/learner.hpp"
#include "tsyb/noise.hpp"
#include "tsyb/oracle.hpp"

namespace tsyb {

// Usage / validation failure: maps to exit code 2 at the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat-sectioned key=value experiment description. Section names double
// as random-stream ids, so all randomness derives from the one seed.
struct ExperimentConfig {
  std::uint64_t seed = 0;

  // [marginal]
  MarginalSampler::Family marginal_family = MarginalSampler::Family::gaussian;
  int d = 2;

  // [noise]
  std::string noise_family = "zero";  // zero | boundary_power | massart
  double alpha = 0.5;
  double a_const = 2.0;
  double c = 0.5;    // boundary_power coefficient
  double eta = 0.0;  // massart level

  // [target] : explicit unit normal, or drawn from the target stream
  std::optional<std::vector<double>> target_w;
  std::optional<std::uint64_t> target_seed;

  // [learner]
  double eps = 0.1;
  double delta = 0.05;
  int k = 3;
  int t_max = 2000;
  long n_per_iter = 20000;
  double lambda = -1.0;   // < 0: use eps * R / 32
  double q_bound = -1.0;  // <= 0: use theorem_q_bound(d, k)
  std::optional<double> g_bound;  // empty: adaptive
  double accept_z = 3.0;
  bool median_of_means = false;

  // [bounds]
  bool bounds_preset = true;  // log_concave_default
  double l_low = 0.0, r_rad = 0.0, b_tail = 1.0, beta_tail = 0.0;
  std::optional<double> u_up;

  // [output]
  std::string output_dir = ".";

  // The original text, recorded in sidecars.
  std::string source_text;

  MarginalSampler make_marginal() const;
  NoiseField make_noise() const;
  TsybakovParams make_tsybakov() const;
  BoundedParams make_bounds() const;
  Halfspace make_target() const;
  OracleConfig make_oracle() const;
  LearnerConfig make_learner() const;
};

// Parses and validates; unknown sections or keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
// Throws std::runtime_error (exit 1) when the file cannot be read and
// ConfigError (exit 2) when the content is invalid.
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Applies "section.key=value" to one scalar field; used by sweeps.
void apply_override(ExperimentConfig& cfg, const std::string& param,
                    const std::string& value);

}  // namespace tsyb
