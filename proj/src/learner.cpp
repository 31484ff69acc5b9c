#include "tsyb/learner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsyb/rng.hpp"

namespace tsyb {

namespace {
constexpr double kDiameter = 2.0;  // unit ball
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

void LearnerConfig::validate() const {
  if (!(eps > 0.0 && eps <= 1.5707963267948966 + 1e-12))
    throw std::invalid_argument("LearnerConfig: eps must be in (0, pi/2]");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("LearnerConfig: delta must be in (0, 1)");
  if (k < 1) throw std::invalid_argument("LearnerConfig: k must be >= 1");
  if (t_max < 1) throw std::invalid_argument("LearnerConfig: t_max must be >= 1");
  if (n_per_iter < 1)
    throw std::invalid_argument("LearnerConfig: n_per_iter must be >= 1");
  if (grad_bound && !(*grad_bound > 0.0))
    throw std::invalid_argument("LearnerConfig: G must be positive");
  if (!(accept_z >= 0.0))
    throw std::invalid_argument("LearnerConfig: accept_z must be >= 0");
}

double LearnerConfig::lambda_or_default() const {
  return lambda >= 0.0 ? lambda : eps * bounds.r_rad / 32.0;
}

double LearnerConfig::eps_prime() const {
  const double r = bounds.r_rad;
  return eps * r * r / 256.0 * c_alpha_a(tsybakov) *
         std::pow(r * bounds.l_low / 2.0, 1.0 / tsybakov.alpha);
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::certificate_failed_accept: return "certificate_failed_accept";
    case RunStatus::iteration_cap: return "iteration_cap";
    case RunStatus::error: return "error";
  }
  return "?";
}

LearnerState initial_state(const LearnerConfig& cfg, int d) {
  cfg.validate();
  if (d < 2) throw std::invalid_argument("initial_state: d must be >= 2");
  LearnerState s;
  s.t = 0;
  s.w = Vec::Zero(d);
  s.w(0) = 1.0;
  s.g_max = cfg.grad_bound.value_or(1.0);
  return s;
}

Vec loss_gradient(const Dataset& samples, const CertificateMatrix* cert,
                  const BandIndicator* band, double lambda) {
  if (samples.n() == 0) throw std::invalid_argument("loss_gradient: empty samples");
  if (cert && !band)
    throw std::invalid_argument("loss_gradient: certificate without its band");
  Vec acc = Vec::Zero(samples.d());
  for (long i = 0; i < samples.n(); ++i) {
    const Vec x = samples.point(i);
    double weight = lambda;
    if (cert) weight += certificate_poly_value(*cert, *band, x);
    acc -= weight * samples.labels(i) * x;
  }
  return acc / static_cast<double>(samples.n());
}

LearnerState opgd_step(const LearnerState& state, const Vec& gradient,
                       const LearnerConfig& cfg) {
  if (!gradient.allFinite())
    throw std::invalid_argument("opgd_step: non-finite gradient");
  LearnerState next = state;
  next.t = state.t + 1;
  if (!cfg.grad_bound)
    next.g_max = std::max(std::max(state.g_max, 1.0), gradient.norm());
  const double g = cfg.grad_bound.value_or(next.g_max);
  const double eta = kDiameter / (g * std::sqrt(static_cast<double>(next.t)));
  Vec w = state.w - eta * gradient;
  const double norm = w.norm();
  if (norm > 1.0) w /= norm;
  next.w = std::move(w);
  return next;
}

SeparationReport separation_check(const Vec& w, const Halfspace& wstar,
                                  const CertificateMatrix& cert,
                                  const BandIndicator& band, double lambda,
                                  const Dataset& samples) {
  const long n = samples.n();
  if (n == 0) throw std::invalid_argument("separation_check: empty samples");
  double sw = 0, sw2 = 0, ss = 0, ss2 = 0, sd = 0, sd2 = 0;
  for (long i = 0; i < n; ++i) {
    const Vec x = samples.point(i);
    const double weight =
        certificate_poly_value(cert, band, x) + lambda;
    const double at_w = -weight * samples.labels(i) * w.dot(x);
    const double at_star =
        -weight * samples.labels(i) * wstar.normal().dot(x);
    sw += at_w;
    sw2 += at_w * at_w;
    ss += at_star;
    ss2 += at_star * at_star;
    const double diff = at_w - at_star;
    sd += diff;
    sd2 += diff * diff;
  }
  const auto stderr_of = [n](double s, double s2) {
    if (n < 2) return kNaN;
    const double var =
        std::max(0.0, (s2 - s * s / static_cast<double>(n)) /
                          static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  };
  SeparationReport rep;
  rep.l_at_w = sw / static_cast<double>(n);
  rep.l_at_wstar = ss / static_cast<double>(n);
  rep.se_w = stderr_of(sw, sw2);
  rep.se_wstar = stderr_of(ss, ss2);
  rep.sep = rep.l_at_w - rep.l_at_wstar;
  rep.sep_std_err = stderr_of(sd, sd2);
  return rep;
}

std::pair<Vec, RunTrace> run(const LearnerConfig& cfg,
                             const OracleConfig& oracle) {
  cfg.validate();
  const int d = oracle.marginal.d;
  const double r_rad = cfg.bounds.r_rad;
  const double lambda = cfg.lambda_or_default();
  const double q =
      cfg.q_bound > 0.0 ? cfg.q_bound : theorem_q_bound(d, cfg.k);
  const double fit_threshold = -3.0 * cfg.eps * r_rad / 16.0;
  const double accept_threshold = -cfg.eps * r_rad / 16.0;
  const BasisPtr basis = make_basis(d, cfg.k);

  LearnerState state = initial_state(cfg, d);
  RunTrace trace;
  double best_objective = -std::numeric_limits<double>::infinity();
  Vec best_w;

  auto fresh = [&](const char* role, int t) {
    OracleConfig o = oracle;
    o.seed = derive_seed(cfg.seed, role, static_cast<std::uint64_t>(t));
    return draw(o, cfg.n_per_iter);
  };

  for (int t = 1; t <= cfg.t_max; ++t) {
    const Vec w_prev = state.w;
    const double w_norm = w_prev.norm();

    IterationRecord rec;
    rec.t = t;
    rec.w_norm = w_norm;
    rec.angle_to_target =
        w_norm > 0.0 ? angle(w_prev, oracle.target.normal()) : kNaN;
    rec.cert_found = false;
    rec.cert_objective = kNaN;
    rec.cert_std_err = kNaN;
    rec.l_at_w = kNaN;
    rec.l_at_wstar = kNaN;
    rec.sep_std_err = kNaN;

    std::optional<CertificateMatrix> cert;
    std::optional<BandIndicator> band;
    if (w_norm > 0.0) {
      const Halfspace w_hs{w_prev};
      band.emplace(w_hs, cfg.eps, r_rad);
      const Dataset fit = fresh("fit", t);
      const MomentMatrix moments = estimate_moment_matrix(
          fit, w_hs, *band, basis, cfg.median_of_means);
      std::optional<CertificateMatrix> sol =
          solve_feasibility(moments, q, fit_threshold);
      bool accepted = false;
      if (sol) {
        const Dataset holdout = fresh("holdout", t);
        const ValidationReport val =
            validate_certificate(*sol, holdout, w_hs, *band);
        rec.cert_objective = val.objective_est;
        rec.cert_std_err = val.std_err;
        accepted = val.std_err_defined &&
                   val.objective_est <= accept_threshold &&
                   val.objective_est <= -cfg.accept_z * val.std_err;
      }
      if (!accepted) {
        rec.grad_norm = kNaN;
        rec.step_size = kNaN;
        rec.loss_value = kNaN;
        trace.rows.push_back(rec);
        trace.status = RunStatus::certificate_failed_accept;
        return {Vec(w_prev / w_norm), std::move(trace)};
      }
      cert = std::move(sol);
      rec.cert_found = true;
      if (rec.cert_objective > best_objective) {
        best_objective = rec.cert_objective;
        best_w = w_prev;
      }
      state.last_certificate = cert;
    }

    const Dataset loss_samples = fresh("loss", t);
    const Vec gradient =
        loss_gradient(loss_samples, cert ? &*cert : nullptr,
                      band ? &*band : nullptr, lambda);
    rec.loss_value = gradient.dot(w_prev);
    rec.grad_norm = gradient.norm();

    if (cert) {
      const SeparationReport sep = separation_check(
          w_prev, oracle.target, *cert, *band, lambda, loss_samples);
      rec.l_at_w = sep.l_at_w;
      rec.l_at_wstar = sep.l_at_wstar;
      rec.sep_std_err = sep.sep_std_err;
    }

    state = opgd_step(state, gradient, cfg);
    rec.step_size = kDiameter / ((cfg.grad_bound ? *cfg.grad_bound : state.g_max) *
                                 std::sqrt(static_cast<double>(t)));
    trace.rows.push_back(rec);
  }

  trace.status = RunStatus::iteration_cap;
  Vec result = best_w.size() > 0 ? best_w : state.w;
  const double norm = result.norm();
  if (norm > 0.0) result /= norm;
  else {
    result = Vec::Zero(d);
    result(0) = 1.0;
  }
  return {std::move(result), std::move(trace)};
}

}  // namespace tsyb
