#include "tsyb/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tsyb/csv.hpp"

namespace tsyb {

BandIndicator::BandIndicator(Halfspace w_, double theta_, double r_rad_)
    : w(std::move(w_)), theta(theta_), r_rad(r_rad_) {
  if (!(theta > 0.0 && theta <= 1.5707963267948966 + 1e-12))
    throw std::invalid_argument("BandIndicator: theta must be in (0, pi/2]");
  if (!(r_rad > 0.0))
    throw std::invalid_argument("BandIndicator: r_rad must be positive");
}

int band_value(const BandIndicator& b, const Vec& x) {
  const double dot = b.w.normal().dot(x);
  return (dot >= 0.0 && dot <= b.width()) ? 1 : 0;
}

namespace {

Eigen::MatrixXd accumulate_moments(const Dataset& samples, long lo, long hi,
                                   const Halfspace& w,
                                   const BandIndicator& band,
                                   const MonomialBasis& basis) {
  const int m = basis.size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
  for (long i = lo; i < hi; ++i) {
    const Vec x = samples.point(i);
    if (!band_value(band, x)) continue;
    const double weight = w.normal().dot(x) * samples.labels(i);
    const Eigen::VectorXd feats = basis.eval(x);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(feats, weight);
  }
  acc.triangularView<Eigen::StrictlyUpper>() =
      acc.triangularView<Eigen::StrictlyLower>().transpose();
  return acc;
}

}  // namespace

MomentMatrix estimate_moment_matrix(const Dataset& samples, const Halfspace& w,
                                    const BandIndicator& band,
                                    const BasisPtr& basis,
                                    bool median_of_means, int n_blocks) {
  if (samples.n() == 0)
    throw std::invalid_argument("estimate_moment_matrix: empty sample set");
  if (samples.d() != basis->dimension() || samples.d() != w.dim())
    throw std::invalid_argument("estimate_moment_matrix: dimension mismatch");

  const long n = samples.n();
  const int m = basis->size();
  MomentMatrix out{basis, Eigen::MatrixXd::Zero(m, m), n, band};

  if (!median_of_means || n_blocks <= 1 || n < n_blocks) {
    out.entries = accumulate_moments(samples, 0, n, w, band, *basis) /
                  static_cast<double>(n);
    return out;
  }

  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(static_cast<size_t>(n_blocks));
  long lo = 0;
  for (int b = 0; b < n_blocks; ++b) {
    const long count = n / n_blocks + (b < n % n_blocks ? 1 : 0);
    blocks.push_back(accumulate_moments(samples, lo, lo + count, w, band, *basis) /
                     static_cast<double>(count));
    lo += count;
  }
  std::vector<double> vals(blocks.size());
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= r; ++c) {
      for (size_t b = 0; b < blocks.size(); ++b) vals[b] = blocks[b](r, c);
      std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
      double med = vals[vals.size() / 2];
      if (vals.size() % 2 == 0) {
        const double upper = med;
        std::nth_element(vals.begin(), vals.begin() + vals.size() / 2 - 1,
                         vals.end());
        med = 0.5 * (vals[vals.size() / 2 - 1] + upper);
      }
      out.entries(r, c) = med;
      out.entries(c, r) = med;
    }
  return out;
}

double theorem_q_bound(int d, int k) {
  if (d < 1 || k < 1) throw std::invalid_argument("theorem_q_bound: d, k >= 1");
  const double log2q = 2.0 * k * std::log2(static_cast<double>(d)) + 8.0 * k +
                       2.0 * std::log2(static_cast<double>(k)) + 4.0;
  return std::pow(2.0, log2q);
}

std::optional<CertificateMatrix> solve_feasibility(const MomentMatrix& m,
                                                   double q_bound,
                                                   double threshold) {
  if (!(q_bound > 0.0))
    throw std::invalid_argument("solve_feasibility: Q must be positive");
  if (!(threshold < 0.0))
    throw std::invalid_argument("solve_feasibility: threshold must be negative");
  const double asym = (m.entries - m.entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw std::invalid_argument("solve_feasibility: moment matrix asymmetry " +
                                std::to_string(asym));
  if (!m.entries.allFinite())
    throw std::runtime_error("solve_feasibility: non-finite moment matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.entries);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error(
        "solve_feasibility: eigensolver failed (max |entry| " +
        std::to_string(m.entries.cwiseAbs().maxCoeff()) + ")");

  const Eigen::VectorXd lambda = eig.eigenvalues();
  double neg_sq = 0.0;
  for (int i = 0; i < lambda.size(); ++i)
    if (lambda(i) < 0.0) neg_sq += lambda(i) * lambda(i);
  const double neg_norm = std::sqrt(neg_sq);
  const double objective = -std::sqrt(q_bound) * neg_norm;
  if (!(objective <= threshold)) return std::nullopt;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(lambda.size(), lambda.size());
  const double scale = std::sqrt(q_bound) / neg_norm;
  for (int i = 0; i < lambda.size(); ++i)
    if (lambda(i) < 0.0)
      a.noalias() += (-lambda(i) * scale) * eig.eigenvectors().col(i) *
                     eig.eigenvectors().col(i).transpose();
  a = 0.5 * (a + a.transpose());
  return CertificateMatrix{m.basis, std::move(a), q_bound, objective};
}

double certificate_poly_value(const CertificateMatrix& c,
                              const BandIndicator& band, const Vec& x) {
  if (!band_value(band, x)) return 0.0;
  const Eigen::VectorXd feats = c.basis->eval(x);
  return feats.dot(c.a_mat * feats);
}

ValidationReport validate_certificate(const CertificateMatrix& c,
                                      const Dataset& holdout,
                                      const Halfspace& w,
                                      const BandIndicator& band) {
  if (holdout.n() == 0)
    throw std::invalid_argument("validate_certificate: empty holdout");
  const long n = holdout.n();
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    const Vec x = holdout.point(i);
    double term = 0.0;
    if (band_value(band, x)) {
      const Eigen::VectorXd feats = c.basis->eval(x);
      term = feats.dot(c.a_mat * feats) * w.normal().dot(x) * holdout.labels(i);
    }
    sum += term;
    sum_sq += term * term;
  }
  ValidationReport rep;
  rep.n = n;
  rep.objective_est = sum / static_cast<double>(n);
  if (n < 2) {
    rep.std_err = std::numeric_limits<double>::quiet_NaN();
    rep.std_err_defined = false;
  } else {
    const double var =
        std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n)) /
                          static_cast<double>(n - 1));
    rep.std_err = std::sqrt(var / static_cast<double>(n));
    rep.std_err_defined = true;
  }
  return rep;
}

void write_certificate_csv(const std::filesystem::path& path,
                           const CertificateMatrix& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "d,k,m\n"
      << c.basis->dimension() << "," << c.basis->degree() << ","
      << c.basis->size() << "\n";
  for (int r = 0; r < c.basis->size(); ++r) {
    for (int col = 0; col <= r; ++col)
      out << (col ? "," : "") << format_double(c.a_mat(r, col));
    out << "\n";
  }
  auto meta = path;
  meta += ".meta";
  write_kv(meta, {{"objective", format_double(c.objective)},
                  {"q_bound", format_double(c.q_bound)}});
}

CertificateMatrix read_certificate_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.size() < 3 || lines[0] != "d,k,m")
    throw std::runtime_error("bad certificate file " + path.string());
  const auto dims = split_csv_line(lines[1]);
  if (dims.size() != 3)
    throw std::runtime_error("bad certificate descriptor in " + path.string());
  const int d = std::atoi(dims[0].c_str());
  const int k = std::atoi(dims[1].c_str());
  const int m = std::atoi(dims[2].c_str());
  BasisPtr basis = make_basis(d, k);
  if (basis->size() != m)
    throw std::runtime_error("certificate basis size mismatch in " + path.string());
  if (static_cast<int>(lines.size()) != 2 + m)
    throw std::runtime_error("certificate row count mismatch in " + path.string());

  Eigen::MatrixXd a(m, m);
  for (int r = 0; r < m; ++r) {
    const auto cells = split_csv_line(lines[static_cast<size_t>(r) + 2]);
    if (static_cast<int>(cells.size()) != r + 1)
      throw std::runtime_error("bad certificate row in " + path.string());
    for (int col = 0; col <= r; ++col) {
      a(r, col) = std::strtod(cells[static_cast<size_t>(col)].c_str(), nullptr);
      a(col, r) = a(r, col);
    }
  }

  auto meta = path;
  meta += ".meta";
  double objective = std::numeric_limits<double>::quiet_NaN();
  double q_bound = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, value] : read_kv(meta)) {
    if (key == "objective") objective = std::strtod(value.c_str(), nullptr);
    if (key == "q_bound") q_bound = std::strtod(value.c_str(), nullptr);
  }
  return CertificateMatrix{basis, std::move(a), q_bound, objective};
}

}  // namespace tsyb
