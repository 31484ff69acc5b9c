#pragma once

#include <cstdint>
#include <vector>

#include "tsyb/geometry.hpp"

namespace tsyb {

struct MarginalSampler;  // distributions.hpp

// Noise-condition parameters: flipping probabilities satisfy
// Pr[eta(x) >= 1/2 - t] <= a_const * t^(alpha/(1-alpha)) for t in (0, 1/2].
struct TsybakovParams {
  double alpha;    // in (0, 1)
  double a_const;  // > 0

  TsybakovParams(double alpha_, double a_const_);
};

// alpha * ((1-alpha)/A)^((1-alpha)/alpha); links set probability to
// noise-weighted mass.
double c_alpha_a(const TsybakovParams& p);

// Flipping-probability field eta: R^d -> [0, 1/2], parameterized by the
// target halfspace.
//   boundary_power:   eta(x) = max(0, 1/2 - c * |<w*,x>|^((1-alpha)/alpha))
//   constant_massart: eta(x) = eta uniformly
//   zero:             noiseless
struct NoiseField {
  enum class Kind { boundary_power, constant_massart, zero };

  Kind kind = Kind::zero;
  double c = 0.0;      // boundary_power coefficient
  double alpha = 0.5;  // boundary_power exponent parameter
  double eta = 0.0;    // constant_massart level

  static NoiseField boundary_power(double c, double alpha);
  static NoiseField constant_massart(double eta);
  static NoiseField zero() { return NoiseField{}; }
};

double eta_at(const NoiseField& field, const Halfspace& wstar, const Vec& x);

struct TsybakovCheckRow {
  double t;
  double estimate;   // Monte-Carlo Pr[eta(x) >= 1/2 - t]
  double bound;      // A * t^(alpha/(1-alpha))
  double violation;  // estimate - bound; negative means slack
};

struct TsybakovReport {
  double max_violation;
  std::vector<TsybakovCheckRow> per_t;
};

// 20 log-spaced thresholds in [1e-3, 1/2].
std::vector<double> default_t_grid();

// Monte-Carlo check of the noise condition on a fixed t-grid.
// Requires n_samples >= 1e4 and every t in (0, 1/2].
TsybakovReport verify_tsybakov_condition(const NoiseField& field,
                                         const MarginalSampler& marginal,
                                         const Halfspace& wstar,
                                         const TsybakovParams& p,
                                         long n_samples,
                                         const std::vector<double>& t_grid,
                                         std::uint64_t seed);

// Tight admissible A for a given field and marginal: the maximum of
// estimate(t) / t^(alpha/(1-alpha)) over the grid.
double estimate_admissible_a(const NoiseField& field,
                             const MarginalSampler& marginal,
                             const Halfspace& wstar, double alpha,
                             long n_samples, const std::vector<double>& t_grid,
                             std::uint64_t seed);

}  // namespace tsyb
