#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsyb/certificate.hpp"
#include "tsyb/evaluation.hpp"
#include "tsyb/learner.hpp"
#include "tsyb/oracle.hpp"
#include "tsyb/rng.hpp"

namespace tsyb {

struct CheckRow {
  std::string name;
  double value;
  double bound;
  bool holds;
};

// Standard synthetic setup shared by the verification suites: isotropic
// Gaussian marginal, boundary-power noise (alpha = 0.7, c = 0.5) with its
// tight admissible A, log-concave bound constants, candidate w = e2 and
// target at the requested angle in the (e1, e2) plane.
struct Scenario {
  MarginalSampler marginal;
  Halfspace target;
  Halfspace candidate;
  NoiseField noise;
  TsybakovParams tsybakov;
  BoundedParams bounds;
  double theta;

  BandIndicator band() const;
  OracleConfig oracle(std::uint64_t seed) const;
};

Scenario reference_scenario(double theta = 0.3, int d = 2);

// Tight admissible A for boundary-power noise under a projected density
// bounded by 1/sqrt(2 pi): 2 phi(0) c^(-alpha/(1-alpha)).
double boundary_power_admissible_a(double c, double alpha);

// Least-squares slope of log ||M_N - M_ref||_F against log N. The
// reference moment matrix at n_ref accumulates in chunks to bound memory.
double moment_concentration_slope(const Scenario& sc, int k,
                                  const std::vector<long>& ns, long n_ref,
                                  std::uint64_t seed);

// Random noise profile guaranteed admissible for the returned params
// (levels are damped toward zero until the condition holds).
PiecewiseProfile random_admissible_profile(Rng& rng, TsybakovParams& out);

// Fit a certificate on half the data, validate on the other half, and
// decide: feasible iff the held-out objective clears both the
// theta*R/16 magnitude rule and the significance rule.
struct CertifyOutcome {
  bool fit_feasible;
  bool feasible;  // after held-out validation
  double fit_objective;
  double holdout_objective;
  double holdout_std_err;
  std::optional<CertificateMatrix> certificate;
};

CertifyOutcome certify_candidate(const Dataset& fit, const Dataset& holdout,
                                 const Halfspace& w, double theta,
                                 const BoundedParams& bounds, int k,
                                 double q_bound, double accept_z);

// Empirical mean and standard error of p(x)^2 Ind_B(x) <w,x> y for the
// explicit degree-k witness on the scenario.
struct WitnessEstimate {
  double mean;
  double std_err;
  long n;
};
WitnessEstimate oracle_certificate_objective(const Scenario& sc, int k, long n,
                                             std::uint64_t seed);

// Max optimality violation and max relative closed-form mismatch over
// random instances (spectral solution vs sampled feasible PSD points).
struct SdpGaps {
  double optimality_violation;  // max tr(A* M) - tr(A M) over samples
  double closed_form_rel_err;   // max | obj + sqrt(Q) ||Mneg||_F | / |obj|
};
SdpGaps sdp_optimality_gaps(int n_matrices, int max_m, int n_feasible_each,
                            std::uint64_t seed);

// Coefficient-norm composition checks over random instances.
struct NormCompositionGaps {
  double lift_ratio_max;      // ||lift||^2 / (d^{2k} ||p||^2), want <= 1
  double affine_ratio_max;    // ||r||^2 / ((2 max(1,a) max(1,b))^{2k} ||p||^2)
  double pointwise_err_max;   // |lift(p,w)(x) - p(<w,x>)|
};
NormCompositionGaps norm_composition_gaps(int trials, std::uint64_t seed);

// Piecewise region properties of the shifted Chebyshev witness square,
// checked on grid_n points per region for W = 8k/beta.
std::vector<CheckRow> region_property_rows(int k, double beta, double r_rad,
                                           int grid_n);

std::vector<std::string> verify_suite_names();
// Unknown suite name throws ConfigError.
std::vector<CheckRow> run_verify_suite(const std::string& name,
                                       std::uint64_t seed);

}  // namespace tsyb
