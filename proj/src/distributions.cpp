#include "tsyb/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsyb/rng.hpp"

namespace tsyb {

BoundedParams::BoundedParams(double l, double r, std::optional<double> u,
                             double b, double beta)
    : l_low(l), r_rad(r), u_up(u), b_tail(b), beta_tail(beta) {
  if (!(l_low > 0.0 && r_rad > 0.0 && b_tail > 0.0 && beta_tail > 0.0))
    throw std::invalid_argument("BoundedParams: all fields must be positive");
  if (u_up && !(*u_up > 0.0))
    throw std::invalid_argument("BoundedParams: U must be positive");
  if (u_up && *u_up < l_low)
    throw std::invalid_argument("BoundedParams: U must be >= L");
}

BoundedParams log_concave_default_bounds(double tail_const) {
  return BoundedParams(std::pow(2.0, -12.0), 1.0 / 9.0,
                       std::exp(1.0) * std::pow(2.0, 17.0), tail_const, 1.0);
}

namespace {
MarginalSampler make(MarginalSampler::Family f, int d) {
  if (d < 2) throw std::invalid_argument("MarginalSampler: d must be >= 2");
  MarginalSampler m;
  m.family = f;
  m.d = d;
  return m;
}
}  // namespace

MarginalSampler MarginalSampler::gaussian(int d) {
  return make(Family::gaussian, d);
}
MarginalSampler MarginalSampler::uniform_ball(int d) {
  return make(Family::uniform_ball, d);
}
MarginalSampler MarginalSampler::laplace_product(int d) {
  return make(Family::laplace_product, d);
}

std::string family_name(MarginalSampler::Family f) {
  switch (f) {
    case MarginalSampler::Family::gaussian: return "gaussian";
    case MarginalSampler::Family::uniform_ball: return "uniform_ball";
    case MarginalSampler::Family::laplace_product: return "laplace_product";
  }
  return "?";
}

Eigen::MatrixXd sample(const MarginalSampler& m, long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  Eigen::MatrixXd out(n, m.d);
  Rng rng(seed);
  switch (m.family) {
    case MarginalSampler::Family::gaussian:
      for (long i = 0; i < n; ++i)
        for (int j = 0; j < m.d; ++j) out(i, j) = rng.normal();
      break;
    case MarginalSampler::Family::uniform_ball: {
      // Radius sqrt(d+2) makes the covariance exactly the identity.
      const double radius = std::sqrt(static_cast<double>(m.d) + 2.0);
      for (long i = 0; i < n; ++i) {
        Vec z(m.d);
        do {
          for (int j = 0; j < m.d; ++j) z(j) = rng.normal();
        } while (z.norm() == 0.0);
        const double r =
            radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(m.d));
        out.row(i) = (r / z.norm()) * z.transpose();
      }
      break;
    }
    case MarginalSampler::Family::laplace_product: {
      // Scale 1/sqrt(2) gives unit variance per coordinate.
      const double scale = 1.0 / std::sqrt(2.0);
      for (long i = 0; i < n; ++i)
        for (int j = 0; j < m.d; ++j) out(i, j) = rng.laplace(scale);
      break;
    }
  }
  return out;
}

BoundsCheckReport check_bounds(const MarginalSampler& m,
                               const BoundedParams& p, long n, int n_dirs,
                               std::uint64_t seed) {
  if (n < 100000) throw std::invalid_argument("check_bounds: need n >= 1e5");
  if (n_dirs < 1) throw std::invalid_argument("check_bounds: need n_dirs >= 1");

  const Eigen::MatrixXd xs = sample(m, n, derive_seed(seed, "samples"));

  // Grid of density probe points covering the disk of radius r_rad,
  // spaced at the kernel bandwidth.
  const double h = 0.1 * p.r_rad;
  std::vector<Eigen::Vector2d> probes;
  for (double gx = -p.r_rad; gx <= p.r_rad + 1e-15; gx += h)
    for (double gy = -p.r_rad; gy <= p.r_rad + 1e-15; gy += h)
      if (gx * gx + gy * gy <= p.r_rad * p.r_rad)
        probes.emplace_back(gx, gy);

  std::vector<double> tail_grid;
  for (int i = 0; i < 12; ++i) tail_grid.push_back(2.5 + 3.5 * i / 11.0);

  BoundsCheckReport report;
  report.worst_density_margin = std::numeric_limits<double>::infinity();
  report.worst_tail_margin = std::numeric_limits<double>::infinity();

  Rng dir_rng(derive_seed(seed, "directions"));
  const double kernel_area = 3.14159265358979323846 * h * h;
  for (int dir = 0; dir < n_dirs; ++dir) {
    // Random orthonormal 2-frame via Gram-Schmidt on Gaussian vectors.
    Vec u(m.d), v(m.d);
    for (int j = 0; j < m.d; ++j) u(j) = dir_rng.normal();
    u /= u.norm();
    do {
      for (int j = 0; j < m.d; ++j) v(j) = dir_rng.normal();
      v -= v.dot(u) * u;
    } while (v.norm() < 1e-9);
    v /= v.norm();

    const Eigen::VectorXd s = xs * u;
    const Eigen::VectorXd t = xs * v;

    // Only points within r_rad + h can land in any density kernel.
    std::vector<Eigen::Vector2d> near;
    const double reach = p.r_rad + h;
    for (long i = 0; i < n; ++i)
      if (s(i) * s(i) + t(i) * t(i) <= reach * reach)
        near.emplace_back(s(i), t(i));

    for (const auto& z : probes) {
      long count = 0;
      for (const auto& q : near) {
        const double dx = q.x() - z.x();
        const double dy = q.y() - z.y();
        if (dx * dx + dy * dy <= h * h) ++count;
      }
      BoundsCheckRow row;
      row.check = "density_floor";
      row.direction = dir;
      row.at = z.norm();
      row.estimate = static_cast<double>(count) /
                     (static_cast<double>(n) * kernel_area);
      row.bound = p.l_low;
      row.margin = row.estimate - row.bound;
      report.worst_density_margin =
          std::min(report.worst_density_margin, row.margin);
      report.rows.push_back(row);
    }

    for (double tt : tail_grid) {
      long count = 0;
      for (long i = 0; i < n; ++i)
        if (s(i) * s(i) + t(i) * t(i) >= tt * tt) ++count;
      BoundsCheckRow row;
      row.check = "tail";
      row.direction = dir;
      row.at = tt;
      row.estimate = static_cast<double>(count) / static_cast<double>(n);
      row.bound = p.b_tail * std::exp(-p.beta_tail * tt);
      row.margin = row.bound - row.estimate;
      report.worst_tail_margin = std::min(report.worst_tail_margin, row.margin);
      report.rows.push_back(row);
    }
  }

  report.all_ok =
      report.worst_density_margin >= 0.0 && report.worst_tail_margin >= 0.0;
  return report;
}

}  // namespace tsyb
