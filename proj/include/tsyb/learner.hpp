#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsyb/certificate.hpp"
#include "tsyb/distributions.hpp"
#include "tsyb/noise.hpp"
#include "tsyb/oracle.hpp"

namespace tsyb {

struct LearnerConfig {
  double eps;           // target angle, in (0, pi/2]
  double delta;         // failure probability (recorded; drives nothing at desk scale)
  int k;                // certificate degree
  int t_max;            // iteration cap
  long n_per_iter;      // fresh samples per draw
  double lambda;        // loss offset; < 0 selects the default eps*R/32
  std::optional<double> grad_bound;  // fixed G; nullopt = adaptive running max
  double q_bound;       // Frobenius budget; <= 0 selects theorem_q_bound(d, k)
  BoundedParams bounds;
  TsybakovParams tsybakov;
  std::uint64_t seed = 0;
  double accept_z = 3.0;        // held-out significance for accepting a certificate
  bool median_of_means = false;

  void validate() const;
  double lambda_or_default() const;
  // eps * R^2/256 * C_alpha^A * (R L / 2)^(1/alpha); diagnostic only.
  double eps_prime() const;
};

struct IterationRecord {
  int t;
  double w_norm;
  double angle_to_target;  // NaN when the target is unknown
  bool cert_found;
  double cert_objective;   // held-out estimate; NaN when no certificate
  double cert_std_err;
  double loss_value;       // l_hat_t at the pre-step iterate
  double grad_norm;
  double step_size;
  double l_at_w;           // separation diagnostics, NaN when unavailable
  double l_at_wstar;
  double sep_std_err;      // paired std err of l(w) - l(w*)
};

enum class RunStatus { certificate_failed_accept, iteration_cap, error };
std::string status_name(RunStatus s);

struct RunTrace {
  std::vector<IterationRecord> rows;
  RunStatus status = RunStatus::error;
};

struct LearnerState {
  int t = 0;
  Vec w;
  double g_max = 1.0;  // realized gradient-norm max (adaptive G, floored at 1)
  std::optional<CertificateMatrix> last_certificate;
};

LearnerState initial_state(const LearnerConfig& cfg, int d);

// Gradient of l_hat(w) = -(1/N) sum (p(x_i) + lambda) y_i <w, x_i>,
// which is constant in w: -(1/N) sum (p(x_i) + lambda) y_i x_i.
// Pass cert = nullptr for the p = 0 rounds.
Vec loss_gradient(const Dataset& samples, const CertificateMatrix* cert,
                  const BandIndicator* band, double lambda);

// One step w <- project(w - eta_t * gradient) onto the unit ball with
// eta_t = K/(G sqrt(t)), K = 2. Updates the running G when adaptive.
LearnerState opgd_step(const LearnerState& state, const Vec& gradient,
                       const LearnerConfig& cfg);

struct SeparationReport {
  double l_at_w;
  double l_at_wstar;
  double se_w;
  double se_wstar;
  double sep;          // l_at_w - l_at_wstar
  double sep_std_err;  // paired
};

SeparationReport separation_check(const Vec& w, const Halfspace& wstar,
                                  const CertificateMatrix& cert,
                                  const BandIndicator& band, double lambda,
                                  const Dataset& samples);

// The full learning loop. Per iteration: certify the current iterate
// (fit + held-out validation on fresh draws); stop and accept it if no
// certificate survives; otherwise take one projected gradient step on a
// fresh draw. Exhausting t_max returns the certified iterate whose
// held-out objective was least negative.
std::pair<Vec, RunTrace> run(const LearnerConfig& cfg,
                             const OracleConfig& oracle);

}  // namespace tsyb
