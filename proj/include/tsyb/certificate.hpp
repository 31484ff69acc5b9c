#pragma once

#include <filesystem>
#include <optional>

#include <Eigen/Core>

#include "tsyb/geometry.hpp"
#include "tsyb/oracle.hpp"
#include "tsyb/polynomials.hpp"

namespace tsyb {

// Indicator of the slab {x : 0 <= <w,x> <= theta * r_rad / 4} around the
// candidate hyperplane. Both boundaries are closed.
struct BandIndicator {
  Halfspace w;
  double theta;
  double r_rad;

  BandIndicator(Halfspace w_, double theta_, double r_rad_);
  double width() const { return theta * r_rad / 4.0; }
};

int band_value(const BandIndicator& b, const Vec& x);

// Empirical average of m(x) m(x)^T Ind_B(x) y <w,x> over the samples.
struct MomentMatrix {
  BasisPtr basis;
  Eigen::MatrixXd entries;
  long n_used;
  BandIndicator band;
};

// Plain empirical mean; in the median-of-means mode the samples split
// into n_blocks blocks whose per-entry medians form the estimate.
MomentMatrix estimate_moment_matrix(const Dataset& samples, const Halfspace& w,
                                    const BandIndicator& band,
                                    const BasisPtr& basis,
                                    bool median_of_means = false,
                                    int n_blocks = 9);

// PSD matrix A with ||A||_F^2 <= q_bound whose quadratic form over the
// monomial features (times the band indicator) is the certificate.
struct CertificateMatrix {
  BasisPtr basis;
  Eigen::MatrixXd a_mat;
  double q_bound;
  double objective;  // achieved tr(A M~)
};

// Frobenius budget from the explicit-witness coefficient bound:
// d^{2k} * 2^{8k + 2 log2(k) + 4}. At desk scale this makes any negative
// eigenvalue of M~ trigger fit-stage feasibility, which is why held-out
// validation is mandatory downstream.
double theorem_q_bound(int d, int k);

// Exact minimizer of tr(A M~) over {A PSD, ||A||_F^2 <= Q} by spectral
// decomposition: A* = sqrt(Q) Mneg / ||Mneg||_F where Mneg collects the
// negated negative eigenpairs; the minimum is -sqrt(Q) ||Mneg||_F.
// Returns A* iff that value is <= threshold. Asymmetry beyond 1e-12 is
// an invariant violation, not silently symmetrized.
std::optional<CertificateMatrix> solve_feasibility(const MomentMatrix& m,
                                                   double q_bound,
                                                   double threshold);

// m(x)^T A m(x) * Ind_B(x); nonnegative since A is PSD.
double certificate_poly_value(const CertificateMatrix& c,
                              const BandIndicator& band, const Vec& x);

struct ValidationReport {
  double objective_est;
  double std_err;
  long n;
  bool std_err_defined;  // false for a single-sample holdout
};

// Held-out mean and standard error of m(x)^T A m(x) Ind_B(x) <w,x> y.
// The caller guarantees the holdout is disjoint from the fitting set.
ValidationReport validate_certificate(const CertificateMatrix& c,
                                      const Dataset& holdout,
                                      const Halfspace& w,
                                      const BandIndicator& band);

// Certificate CSV: basis descriptor header then dense lower-triangle
// rows; objective and Q go to a key=value sidecar.
void write_certificate_csv(const std::filesystem::path& path,
                           const CertificateMatrix& c);
CertificateMatrix read_certificate_csv(const std::filesystem::path& path);

}  // namespace tsyb
