#include "tsyb/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsyb/distributions.hpp"

namespace tsyb {

TsybakovParams::TsybakovParams(double alpha_, double a_const_)
    : alpha(alpha_), a_const(a_const_) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("TsybakovParams: alpha must be in (0, 1)");
  if (!(a_const > 0.0))
    throw std::invalid_argument("TsybakovParams: A must be positive");
}

double c_alpha_a(const TsybakovParams& p) {
  return p.alpha * std::pow((1.0 - p.alpha) / p.a_const,
                            (1.0 - p.alpha) / p.alpha);
}

NoiseField NoiseField::boundary_power(double c, double alpha) {
  if (!(c > 0.0)) throw std::invalid_argument("boundary_power: c must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("boundary_power: alpha must be in (0, 1)");
  NoiseField f;
  f.kind = Kind::boundary_power;
  f.c = c;
  f.alpha = alpha;
  return f;
}

NoiseField NoiseField::constant_massart(double eta) {
  if (!(eta >= 0.0 && eta < 0.5))
    throw std::invalid_argument("constant_massart: eta must be in [0, 1/2)");
  NoiseField f;
  f.kind = Kind::constant_massart;
  f.eta = eta;
  return f;
}

double eta_at(const NoiseField& field, const Halfspace& wstar, const Vec& x) {
  switch (field.kind) {
    case NoiseField::Kind::zero:
      return 0.0;
    case NoiseField::Kind::constant_massart:
      return field.eta;
    case NoiseField::Kind::boundary_power: {
      const double margin = std::abs(wstar.normal().dot(x));
      const double expo = (1.0 - field.alpha) / field.alpha;
      return std::max(0.0, 0.5 - field.c * std::pow(margin, expo));
    }
  }
  return 0.0;
}

std::vector<double> default_t_grid() {
  std::vector<double> grid(20);
  const double lo = std::log(1e-3);
  const double hi = std::log(0.5);
  for (int i = 0; i < 20; ++i)
    grid[i] = std::exp(lo + (hi - lo) * i / 19.0);
  grid.back() = 0.5;
  return grid;
}

TsybakovReport verify_tsybakov_condition(const NoiseField& field,
                                         const MarginalSampler& marginal,
                                         const Halfspace& wstar,
                                         const TsybakovParams& p,
                                         long n_samples,
                                         const std::vector<double>& t_grid,
                                         std::uint64_t seed) {
  if (n_samples < 10000)
    throw std::invalid_argument("verify_tsybakov_condition: need >= 1e4 samples");
  for (double t : t_grid)
    if (!(t > 0.0 && t <= 0.5))
      throw std::invalid_argument("verify_tsybakov_condition: t must be in (0, 1/2]");
  if (marginal.d != wstar.dim())
    throw std::invalid_argument("verify_tsybakov_condition: dimension mismatch");

  const Eigen::MatrixXd xs = sample(marginal, n_samples, seed);
  std::vector<double> etas(static_cast<size_t>(n_samples));
  for (long i = 0; i < n_samples; ++i)
    etas[static_cast<size_t>(i)] = eta_at(field, wstar, xs.row(i).transpose());

  TsybakovReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  const double expo = p.alpha / (1.0 - p.alpha);
  for (double t : t_grid) {
    long count = 0;
    const double level = 0.5 - t;
    for (double e : etas)
      if (e >= level) ++count;
    TsybakovCheckRow row;
    row.t = t;
    row.estimate = static_cast<double>(count) / static_cast<double>(n_samples);
    row.bound = p.a_const * std::pow(t, expo);
    row.violation = row.estimate - row.bound;
    report.max_violation = std::max(report.max_violation, row.violation);
    report.per_t.push_back(row);
  }
  return report;
}

double estimate_admissible_a(const NoiseField& field,
                             const MarginalSampler& marginal,
                             const Halfspace& wstar, double alpha,
                             long n_samples, const std::vector<double>& t_grid,
                             std::uint64_t seed) {
  // A = 1 is a placeholder: ratios below do not depend on a_const.
  TsybakovParams probe(alpha, 1.0);
  const TsybakovReport rep = verify_tsybakov_condition(
      field, marginal, wstar, probe, n_samples, t_grid, seed);
  double a_max = 0.0;
  for (const auto& row : rep.per_t)
    a_max = std::max(a_max, row.estimate / row.bound);
  return a_max;
}

}  // namespace tsyb
