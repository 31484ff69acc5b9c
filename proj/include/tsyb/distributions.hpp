#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tsyb/geometry.hpp"

namespace tsyb {

// Distributional bounds for every 2-D projection of the marginal:
// density >= l_low on the disk of radius r_rad, density <= u_up when
// present, and tails Pr[|x_V| >= t] <= b_tail * exp(-beta_tail * t).
struct BoundedParams {
  double l_low;
  double r_rad;
  std::optional<double> u_up;
  double b_tail;
  double beta_tail;

  BoundedParams(double l, double r, std::optional<double> u, double b,
                double beta);
};

// Constants for isotropic log-concave distributions:
// (2^-12, 1/9, e*2^17, tail_const, 1). The tail constant is left symbolic
// upstream; it maps to b_tail here and defaults to 1.
BoundedParams log_concave_default_bounds(double tail_const = 1.0);

// Family descriptor for isotropic marginals. Sampling is a pure function
// of (sampler, n, seed); distinct seeds give independent streams.
struct MarginalSampler {
  enum class Family { gaussian, uniform_ball, laplace_product };

  Family family = Family::gaussian;
  int d = 2;

  static MarginalSampler gaussian(int d);
  static MarginalSampler uniform_ball(int d);
  static MarginalSampler laplace_product(int d);
};

std::string family_name(MarginalSampler::Family f);

// n i.i.d. rows from the named isotropic law. The uniform ball is scaled
// to radius sqrt(d+2) and the Laplace product to unit per-coordinate
// variance, so isotropy is exact by construction.
Eigen::MatrixXd sample(const MarginalSampler& m, long n, std::uint64_t seed);

struct BoundsCheckRow {
  std::string check;   // "density_floor" or "tail"
  int direction;       // subspace index
  double at;           // grid location (disk point radius, or tail t)
  double estimate;
  double bound;
  double margin;       // signed slack; negative means violated
};

struct BoundsCheckReport {
  double worst_density_margin;
  double worst_tail_margin;
  bool all_ok;
  std::vector<BoundsCheckRow> rows;
};

// Empirical check of BoundedParams on n_dirs random 2-D projections.
// The density floor uses a box-kernel estimate with bandwidth
// 0.1 * r_rad on a grid covering the disk; tails are checked on a fixed
// grid of t in [2.5, 6] where the exponential bound is informative.
// Requires n >= 1e5.
BoundsCheckReport check_bounds(const MarginalSampler& m,
                               const BoundedParams& p, long n, int n_dirs,
                               std::uint64_t seed);

}  // namespace tsyb
