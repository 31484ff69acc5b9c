#pragma once

#include <cstdint>
#include <filesystem>

#include <Eigen/Core>

#include "tsyb/distributions.hpp"
#include "tsyb/geometry.hpp"
#include "tsyb/noise.hpp"

namespace tsyb {

// Labeled examples, row-major: points(i, :) with labels(i) in {+1, -1}.
struct Dataset {
  Eigen::MatrixXd points;
  Eigen::VectorXi labels;

  long n() const { return points.rows(); }
  int d() const { return static_cast<int>(points.cols()); }
  Vec point(long i) const { return points.row(i).transpose(); }
};

// Example oracle: x from the marginal, label sign(<w*, x>) flipped
// independently with probability eta(x). The flip stream is derived
// separately from the marginal stream so the same point cloud can be
// re-noised.
struct OracleConfig {
  MarginalSampler marginal;
  Halfspace target;
  NoiseField noise;
  TsybakovParams tsybakov;
  std::uint64_t seed = 0;
  int shard_count = 1;

  OracleConfig(MarginalSampler m, Halfspace t, NoiseField f, TsybakovParams p,
               std::uint64_t s, int shards = 1);
};

// n labeled samples; a deterministic function of (seed, n, shard_count).
Dataset draw(const OracleConfig& o, long n);

// Fraction of samples with y != sign(<target, x>).
double empirical_noise_rate(const Dataset& data, const Halfspace& target);

// CSV persistence. Header "x1,...,xd,y" (the y column is omitted for
// unlabeled matrices); floats carry full round-trip precision.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);
void write_points_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& points);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace tsyb
