#include "tsyb/oracle.hpp"

#include <fstream>
#include <stdexcept>

#include "tsyb/csv.hpp"
#include "tsyb/rng.hpp"

namespace tsyb {

OracleConfig::OracleConfig(MarginalSampler m, Halfspace t, NoiseField f,
                           TsybakovParams p, std::uint64_t s, int shards)
    : marginal(m),
      target(std::move(t)),
      noise(f),
      tsybakov(p),
      seed(s),
      shard_count(shards) {
  if (marginal.d != target.dim())
    throw std::invalid_argument("OracleConfig: marginal/target dimension mismatch");
  if (shard_count < 1)
    throw std::invalid_argument("OracleConfig: shard_count must be >= 1");
}

Dataset draw(const OracleConfig& o, long n) {
  if (n < 1) throw std::invalid_argument("draw: n must be >= 1");
  Dataset data;
  data.points.resize(n, o.marginal.d);
  data.labels.resize(n);

  const int shards = o.shard_count;
  long offset = 0;
  for (int shard = 0; shard < shards; ++shard) {
    const long count = n / shards + (shard < n % shards ? 1 : 0);
    if (count == 0) continue;
    const Eigen::MatrixXd xs = sample(
        o.marginal, count,
        derive_seed(o.seed, "marginal", static_cast<std::uint64_t>(shard)));
    Rng flip(derive_seed(o.seed, "noise", static_cast<std::uint64_t>(shard)));
    for (long i = 0; i < count; ++i) {
      const Vec x = xs.row(i).transpose();
      int y = o.target.classify(x);
      if (flip.uniform01() < eta_at(o.noise, o.target, x)) y = -y;
      data.points.row(offset + i) = xs.row(i);
      data.labels(offset + i) = y;
    }
    offset += count;
  }
  return data;
}

double empirical_noise_rate(const Dataset& data, const Halfspace& target) {
  if (data.n() == 0) throw std::invalid_argument("empirical_noise_rate: empty dataset");
  long flips = 0;
  for (long i = 0; i < data.n(); ++i)
    if (data.labels(i) != target.classify(data.point(i))) ++flips;
  return static_cast<double>(flips) / static_cast<double>(data.n());
}

namespace {
void write_rows(std::ofstream& out, const Eigen::MatrixXd& points,
                const Eigen::VectorXi* labels) {
  const int d = static_cast<int>(points.cols());
  for (int j = 0; j < d; ++j) out << (j ? "," : "") << "x" << (j + 1);
  if (labels) out << ",y";
  out << "\n";
  for (long i = 0; i < points.rows(); ++i) {
    for (int j = 0; j < d; ++j)
      out << (j ? "," : "") << format_double(points(i, j));
    if (labels) out << "," << (*labels)(i);
    out << "\n";
  }
}
}  // namespace

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_rows(out, data.points, &data.labels);
}

void write_points_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_rows(out, points, nullptr);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw std::runtime_error("empty dataset file " + path.string());
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 3 || header.back() != "y")
    throw std::runtime_error("dataset header must be x1,...,xd,y");
  const int d = static_cast<int>(header.size()) - 1;
  const long n = static_cast<long>(lines.size()) - 1;
  if (n < 1) throw std::runtime_error("dataset has no rows");

  Dataset data;
  data.points.resize(n, d);
  data.labels.resize(n);
  for (long i = 0; i < n; ++i) {
    const auto cells = split_csv_line(lines[static_cast<size_t>(i) + 1]);
    if (static_cast<int>(cells.size()) != d + 1)
      throw std::runtime_error("bad dataset row " + std::to_string(i + 2));
    for (int j = 0; j < d; ++j)
      data.points(i, j) = std::strtod(cells[static_cast<size_t>(j)].c_str(), nullptr);
    const int y = std::atoi(cells.back().c_str());
    if (y != 1 && y != -1)
      throw std::runtime_error("label must be +1 or -1 at row " + std::to_string(i + 2));
    data.labels(i) = y;
  }
  return data;
}

}  // namespace tsyb
