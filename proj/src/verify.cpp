#include "tsyb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "tsyb/config.hpp"
#include "tsyb/polynomials.hpp"

namespace tsyb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BandIndicator Scenario::band() const {
  return BandIndicator(candidate, theta, bounds.r_rad);
}

OracleConfig Scenario::oracle(std::uint64_t seed) const {
  return OracleConfig(marginal, target, noise, tsybakov, seed);
}

double boundary_power_admissible_a(double c, double alpha) {
  const double expo = alpha / (1.0 - alpha);
  // Density-sup bound on the super-level mass, plus the t = 1/2
  // constraint Pr[eta >= 0] = 1 that binds for every field.
  return std::max(2.0 / std::sqrt(2.0 * kPi) * std::pow(c, -expo),
                  std::pow(2.0, expo));
}

Scenario reference_scenario(double theta, int d) {
  const double alpha = 0.7;
  const double c = 0.5;
  Vec w = Vec::Zero(d);
  w(1) = 1.0;
  Vec wstar = Vec::Zero(d);
  wstar(0) = -std::sin(theta);
  wstar(1) = std::cos(theta);
  Scenario sc{MarginalSampler::gaussian(d),
              Halfspace(wstar),
              Halfspace(w),
              NoiseField::boundary_power(c, alpha),
              TsybakovParams(alpha, boundary_power_admissible_a(c, alpha)),
              log_concave_default_bounds(),
              theta};
  return sc;
}

double moment_concentration_slope(const Scenario& sc, int k,
                                  const std::vector<long>& ns, long n_ref,
                                  std::uint64_t seed) {
  const BasisPtr basis = make_basis(sc.marginal.d, k);
  const BandIndicator band = sc.band();

  // Reference estimate accumulated in equal chunks (mean of equal-size
  // means equals the overall mean exactly).
  const long chunk = 1000000;
  const long n_chunks = std::max<long>(1, n_ref / chunk);
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(basis->size(), basis->size());
  for (long c = 0; c < n_chunks; ++c) {
    const Dataset data =
        draw(sc.oracle(derive_seed(seed, "ref", static_cast<std::uint64_t>(c))),
             chunk);
    ref += estimate_moment_matrix(data, sc.candidate, band, basis).entries;
  }
  ref /= static_cast<double>(n_chunks);

  // The error at sample size N is its root-mean-square over replicates.
  // Replicate counts scale as 1/N so every point sees enough in-band
  // draws to resolve the heavy-tailed monomial moments; a single
  // realization tracks the (much flatter) pre-asymptotic median instead.
  std::vector<double> log_n, log_err;
  for (size_t i = 0; i < ns.size(); ++i) {
    const long n = ns[i];
    const long reps = std::max<long>(100, 30000000 / n);
    double sum_sq = 0.0;
    for (long r = 0; r < reps; ++r) {
      const Dataset data = draw(
          sc.oracle(derive_seed(seed, "n",
                                static_cast<std::uint64_t>(n) * 1000000 +
                                    static_cast<std::uint64_t>(r))),
          n);
      const MomentMatrix m =
          estimate_moment_matrix(data, sc.candidate, band, basis);
      const double err = (m.entries - ref).norm();
      sum_sq += err * err;
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_err.push_back(std::log(std::sqrt(sum_sq / static_cast<double>(reps))));
  }

  const double n_pts = static_cast<double>(log_n.size());
  const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / n_pts;
  const double my = std::accumulate(log_err.begin(), log_err.end(), 0.0) / n_pts;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < log_n.size(); ++i) {
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
    sxy += (log_n[i] - mx) * (log_err[i] - my);
  }
  return sxy / sxx;
}

PiecewiseProfile random_admissible_profile(Rng& rng, TsybakovParams& out) {
  const double alpha = rng.uniform(0.15, 0.9);
  const double a_const =
      std::pow(2.0, alpha / (1.0 - alpha)) * (1.1 + 2.0 * rng.uniform01());
  out = TsybakovParams(alpha, a_const);

  const int n_pieces = 2 + static_cast<int>(rng.uniform01() * 7.0);
  PiecewiseProfile profile;
  double total = 0.0;
  for (int i = 0; i < n_pieces; ++i) {
    const double l = 0.05 + rng.uniform01();
    profile.lengths.push_back(l);
    total += l;
  }
  for (double& l : profile.lengths) l /= total;
  // Exact unit mass despite rounding.
  double partial = 0.0;
  for (size_t i = 0; i + 1 < profile.lengths.size(); ++i) partial += profile.lengths[i];
  profile.lengths.back() = 1.0 - partial;

  for (int i = 0; i < n_pieces; ++i)
    profile.values.push_back(rng.uniform(0.0, 0.4999));

  // Damping eta toward zero only shrinks the super-level masses, so this
  // terminates (A >= 1.1 * 2^(alpha/(1-alpha)) keeps t = 1/2 safe).
  for (int guard = 0; guard < 400 && !profile_admissible(profile, out); ++guard)
    for (double& v : profile.values) v *= 0.9;
  if (!profile_admissible(profile, out))
    for (double& v : profile.values) v = 0.0;
  return profile;
}

CertifyOutcome certify_candidate(const Dataset& fit, const Dataset& holdout,
                                 const Halfspace& w, double theta,
                                 const BoundedParams& bounds, int k,
                                 double q_bound, double accept_z) {
  const BasisPtr basis = make_basis(w.dim(), k);
  const BandIndicator band(w, theta, bounds.r_rad);
  const double q = q_bound > 0.0 ? q_bound : theorem_q_bound(w.dim(), k);
  const double fit_threshold = -3.0 * theta * bounds.r_rad / 16.0;
  const double accept_threshold = -theta * bounds.r_rad / 16.0;

  CertifyOutcome out;
  out.fit_feasible = false;
  out.feasible = false;
  out.fit_objective = 0.0;
  out.holdout_objective = std::numeric_limits<double>::quiet_NaN();
  out.holdout_std_err = std::numeric_limits<double>::quiet_NaN();

  const MomentMatrix moments = estimate_moment_matrix(fit, w, band, basis);
  std::optional<CertificateMatrix> sol =
      solve_feasibility(moments, q, fit_threshold);
  if (!sol) return out;
  out.fit_feasible = true;
  out.fit_objective = sol->objective;

  const ValidationReport val = validate_certificate(*sol, holdout, w, band);
  out.holdout_objective = val.objective_est;
  out.holdout_std_err = val.std_err;
  out.feasible = val.std_err_defined && val.objective_est <= accept_threshold &&
                 val.objective_est <= -accept_z * val.std_err;
  out.certificate = std::move(sol);
  return out;
}

WitnessEstimate oracle_certificate_objective(const Scenario& sc, int k, long n,
                                             std::uint64_t seed) {
  const MultivariatePoly witness =
      oracle_certificate(sc.target, sc.candidate, k, sc.bounds);
  const BandIndicator band = sc.band();
  const Dataset data = draw(sc.oracle(seed), n);

  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    const Vec x = data.point(i);
    double term = 0.0;
    if (band_value(band, x)) {
      const double p = witness.eval(x);
      term = p * p * sc.candidate.normal().dot(x) * data.labels(i);
    }
    sum += term;
    sum_sq += term * term;
  }
  WitnessEstimate est;
  est.n = n;
  est.mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n)) /
                        static_cast<double>(n - 1));
  est.std_err = std::sqrt(var / static_cast<double>(n));
  return est;
}

SdpGaps sdp_optimality_gaps(int n_matrices, int max_m, int n_feasible_each,
                            std::uint64_t seed) {
  Rng rng(seed);
  SdpGaps gaps{0.0, 0.0};
  const BandIndicator dummy_band(Halfspace(Vec::Unit(2, 0)), 0.1, 1.0);
  for (int trial = 0; trial < n_matrices; ++trial) {
    const int m = 2 + static_cast<int>(rng.uniform01() * (max_m - 1));
    Eigen::MatrixXd sym(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c <= r; ++c) {
        sym(r, c) = rng.normal();
        sym(c, r) = sym(r, c);
      }
    const double q = rng.uniform(0.25, 4.0);
    MomentMatrix moments{make_basis(1, m - 1), sym, 0, dummy_band};
    const auto sol = solve_feasibility(moments, q, -1e-12);

    // Closed-form value recomputed from the spectrum.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    double neg_sq = 0.0;
    for (int i = 0; i < m; ++i)
      if (eig.eigenvalues()(i) < 0.0)
        neg_sq += eig.eigenvalues()(i) * eig.eigenvalues()(i);
    const double formula = -std::sqrt(q) * std::sqrt(neg_sq);
    const double objective = sol ? sol->objective : 0.0;
    if (sol)
      gaps.closed_form_rel_err =
          std::max(gaps.closed_form_rel_err,
                   std::abs(objective - formula) /
                       std::max(1e-300, std::abs(formula)));

    for (int s = 0; s < n_feasible_each; ++s) {
      // Random feasible point: PSD Gram matrix scaled into the ball.
      Eigen::MatrixXd g(m, m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) g(r, c) = rng.normal();
      Eigen::MatrixXd a = g * g.transpose();
      const double target_sq = q * rng.uniform01();
      a *= std::sqrt(target_sq) / a.norm();
      const double sampled = a.cwiseProduct(sym).sum();
      gaps.optimality_violation =
          std::max(gaps.optimality_violation, objective - sampled);
    }
  }
  return gaps;
}

NormCompositionGaps norm_composition_gaps(int trials, std::uint64_t seed) {
  Rng rng(seed);
  NormCompositionGaps gaps{0.0, 0.0, 0.0};
  for (int trial = 0; trial < trials; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform01() * 3.0);
    const int k = 1 + static_cast<int>(rng.uniform01() * 5.0);
    std::vector<double> coeffs(static_cast<size_t>(k) + 1);
    for (double& c : coeffs) c = rng.normal();
    const UnivariatePoly p{coeffs};

    Vec w(d);
    for (int j = 0; j < d; ++j) w(j) = rng.normal();
    w *= rng.uniform01() / w.norm();  // ||w|| <= 1

    const BasisPtr basis = make_basis(d, k);
    const MultivariatePoly q = lift_along_direction(p, w, basis);
    const double bound_lift =
        std::pow(static_cast<double>(d), 2.0 * k) * p.l2_sq();
    gaps.lift_ratio_max =
        std::max(gaps.lift_ratio_max, poly_norms(q).first / bound_lift);

    for (int probe = 0; probe < 5; ++probe) {
      Vec x(d);
      for (int j = 0; j < d; ++j) x(j) = rng.normal() * 2.0;
      gaps.pointwise_err_max = std::max(
          gaps.pointwise_err_max, std::abs(q.eval(x) - p.eval(w.dot(x))));
    }

    const double a = rng.normal() * 2.0;
    const double b = rng.normal() * 2.0;
    const UnivariatePoly r = affine_compose(p, a, b);
    const double bound_affine =
        std::pow(2.0 * std::max(1.0, std::abs(a)) * std::max(1.0, std::abs(b)),
                 2.0 * k) *
        p.l2_sq();
    gaps.affine_ratio_max =
        std::max(gaps.affine_ratio_max, r.l2_sq() / bound_affine);
  }
  return gaps;
}

std::vector<CheckRow> region_property_rows(int k, double beta, double r_rad,
                                           int grid_n) {
  const double w_param = 8.0 * static_cast<double>(k) / beta;
  const auto g = [&](double t) {
    return 1.0 + 2.0 * (t - r_rad / 4.0) / (w_param + r_rad / 4.0);
  };
  // The witness function evaluated through the stable two-branch form;
  // coefficient evaluation at |t| ~ W cancels catastrophically and is
  // checked separately at moderate arguments.
  const auto witness = [&](double t) { return chebyshev_eval(k, g(t)); };
  const std::string tag = "_k" + std::to_string(k);
  std::vector<CheckRow> rows;

  // Region t <= -W: p^2 <= (2 g(t))^{2k}.
  double worst0 = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double t = -w_param - 3.0 * w_param * i / (grid_n - 1);
    const double v = witness(t);
    worst0 = std::max(worst0, v * v / std::pow(2.0 * g(t), 2.0 * k));
  }
  rows.push_back({"region_low" + tag, worst0, 1.0 + 1e-9, worst0 <= 1.0 + 1e-9});

  // Region -W <= t <= R/4: p^2 <= 1.
  double worst1 = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double t = -w_param + (r_rad / 4.0 + w_param) * i / (grid_n - 1);
    const double v = witness(t);
    worst1 = std::max(worst1, v * v);
  }
  rows.push_back({"region_band" + tag, worst1, 1.0 + 1e-9, worst1 <= 1.0 + 1e-9});

  // Region t >= R/2: p^2 >= ((1 + sqrt(R/(2W + R/2)))^{2k}) / 2.
  const double floor_val =
      0.5 * std::pow(1.0 + std::sqrt(r_rad / (2.0 * w_param + r_rad / 2.0)),
                     2.0 * k);
  double worst2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    const double t = r_rad / 2.0 + 10.0 * i / (grid_n - 1);
    const double v = witness(t);
    worst2 = std::min(worst2, v * v / floor_val);
  }
  rows.push_back({"region_high" + tag, worst2, 1.0, worst2 >= 1.0});
  return rows;
}

namespace {

std::vector<CheckRow> suite_chebyshev() {
  std::vector<CheckRow> rows;
  for (int k = 0; k <= 12; ++k) {
    const UnivariatePoly p = chebyshev_coeffs(k);
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = -2.0 + 4.0 * i / 2000.0;
      worst = std::max(worst, std::abs(p.eval(t) - chebyshev_eval(k, t)));
    }
    rows.push_back({"branch_consistency_k" + std::to_string(k), worst, 1e-7,
                    worst <= 1e-7});
  }
  for (int k = 1; k <= 15; ++k) {
    const double norm_sq = chebyshev_coeffs(k).l2_sq();
    const double bound =
        std::pow(2.0, 6.0 * k + 2.0 * std::log2(static_cast<double>(k)) + 4.0);
    rows.push_back({"norm_bound_k" + std::to_string(k), norm_sq, bound,
                    norm_sq <= bound});
  }
  for (int k = 0; k <= 15; ++k) {
    const double v = chebyshev_eval(k, 1.0);
    rows.push_back({"at_one_k" + std::to_string(k), v, 1.0,
                    std::abs(v - 1.0) <= 1e-12});
  }
  return rows;
}

std::vector<CheckRow> suite_regions() {
  std::vector<CheckRow> rows;
  for (int k : {2, 4, 8, 12}) {
    const auto part = region_property_rows(k, 1.0, 1.0 / 9.0, 1000);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<CheckRow> suite_moments(std::uint64_t seed) {
  const Scenario sc = reference_scenario();
  const double slope = moment_concentration_slope(
      sc, 3, {1000, 10000, 100000, 1000000}, 10000000, seed);
  std::vector<CheckRow> rows;
  rows.push_back({"concentration_slope", slope, -0.35,
                  slope >= -0.65 && slope <= -0.35});
  return rows;
}

std::vector<CheckRow> suite_sdp(std::uint64_t seed) {
  std::vector<CheckRow> rows;

  const BandIndicator dummy_band(Halfspace(Vec::Unit(2, 0)), 0.1, 1.0);

  // Known instance: diag(1, -2) with unit budget.
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(2, 2);
  m2(0, 0) = 1.0;
  m2(1, 1) = -2.0;
  MomentMatrix mm{make_basis(1, 1), m2, 0, dummy_band};
  const auto sol = solve_feasibility(mm, 1.0, -1e-9);
  const bool known_ok = sol && std::abs(sol->objective + 2.0) < 1e-12 &&
                        std::abs(sol->a_mat(0, 0)) < 1e-12 &&
                        std::abs(sol->a_mat(1, 1) - 1.0) < 1e-12;
  rows.push_back({"known_instance", sol ? sol->objective : 0.0, -2.0, known_ok});

  // PSD input is never feasible.
  Eigen::MatrixXd psd = Eigen::MatrixXd::Identity(3, 3);
  MomentMatrix mp{make_basis(1, 2), psd, 0, dummy_band};
  const bool psd_none = !solve_feasibility(mp, 1.0, -1e-9).has_value();
  rows.push_back({"psd_infeasible", psd_none ? 1.0 : 0.0, 1.0, psd_none});

  const SdpGaps gaps = sdp_optimality_gaps(200, 20, 1000, seed);
  rows.push_back({"optimality_violation", gaps.optimality_violation, 1e-9,
                  gaps.optimality_violation <= 1e-9});
  rows.push_back({"closed_form_rel_err", gaps.closed_form_rel_err, 1e-9,
                  gaps.closed_form_rel_err <= 1e-9});
  return rows;
}

std::vector<CheckRow> suite_noise(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const TsybakovParams half_one(0.5, 1.0);
  rows.push_back({"c_alpha_a_half_one", c_alpha_a(half_one), 0.25,
                  std::abs(c_alpha_a(half_one) - 0.25) < 1e-15});
  const TsybakovParams half_two(0.5, 2.0);
  rows.push_back({"c_alpha_a_half_two", c_alpha_a(half_two), 0.125,
                  std::abs(c_alpha_a(half_two) - 0.125) < 1e-15});

  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double a = 0.5; a <= 8.0; a += 0.5) {
    const double v = c_alpha_a(TsybakovParams(0.7, a));
    if (v >= prev) monotone = false;
    prev = v;
  }
  rows.push_back({"c_alpha_a_monotone_in_A", monotone ? 1.0 : 0.0, 1.0, monotone});

  const Scenario sc = reference_scenario();
  const auto grid = default_t_grid();

  // At t = 1/2 every field has Pr[eta >= 0] = 1, so A needs a margin
  // above 2^(alpha/(1-alpha)) for strictly negative slack.
  const TsybakovParams zero_params(0.7, 1.2 * std::pow(2.0, 7.0 / 3.0));
  const TsybakovReport zero_rep = verify_tsybakov_condition(
      NoiseField::zero(), sc.marginal, sc.target, zero_params, 20000, grid,
      derive_seed(seed, "zero"));
  rows.push_back({"zero_field_slack", zero_rep.max_violation, 0.0,
                  zero_rep.max_violation < 0.0});

  const NoiseField massart = NoiseField::constant_massart(0.2);
  const TsybakovParams massart_params(0.5, 3.4);
  const TsybakovReport massart_rep = verify_tsybakov_condition(
      massart, sc.marginal, sc.target, massart_params, 20000, grid,
      derive_seed(seed, "massart"));
  bool step_ok = true;
  for (const auto& row : massart_rep.per_t) {
    const double expected = row.t >= 0.3 ? 1.0 : 0.0;
    if (row.estimate != expected) step_ok = false;
  }
  rows.push_back({"massart_step_exact", step_ok ? 1.0 : 0.0, 1.0, step_ok});

  // With the tight A the slack is zero at t = 1/2 and the interior
  // estimates carry binomial noise, so the check is a per-point z-score.
  const long n_ref = 1000000;
  const TsybakovReport ref_rep = verify_tsybakov_condition(
      sc.noise, sc.marginal, sc.target, sc.tsybakov, n_ref, grid,
      derive_seed(seed, "reference"));
  double worst_z = -std::numeric_limits<double>::infinity();
  for (const auto& row : ref_rep.per_t) {
    const double se = std::sqrt(
        std::max(row.estimate * (1.0 - row.estimate), 0.0) / n_ref);
    if (se > 0.0)
      worst_z = std::max(worst_z, row.violation / se);
    else if (row.violation > 1e-12)
      worst_z = std::numeric_limits<double>::infinity();
  }
  rows.push_back({"boundary_power_reference_z", worst_z, 4.0, worst_z <= 4.0});

  // Ratio maximization needs grid points with resolvable mass; below
  // t ~ 0.02 the super-level probability drops under 1/n.
  std::vector<double> a_grid;
  for (double t : grid)
    if (t >= 0.02) a_grid.push_back(t);
  const double a_est = estimate_admissible_a(sc.noise, sc.marginal, sc.target,
                                             0.7, n_ref, a_grid,
                                             derive_seed(seed, "admissible"));
  const double a_analytic = boundary_power_admissible_a(0.5, 0.7);
  rows.push_back({"admissible_a_estimate", a_est, a_analytic,
                  a_est <= a_analytic * 1.02 && a_est >= a_analytic * 0.9});

  // Monotonicity of eta in the boundary margin.
  Rng rng(derive_seed(seed, "monotone"));
  bool eta_monotone = true;
  const Halfspace wstar(Vec::Unit(2, 0));
  double prev_eta = 0.5;
  for (int i = 0; i <= 100; ++i) {
    Vec x(2);
    x << i * 0.05, rng.normal();
    const double e = eta_at(sc.noise, wstar, x);
    if (e > prev_eta + 1e-12) eta_monotone = false;
    prev_eta = e;
  }
  rows.push_back({"eta_nonincreasing", eta_monotone ? 1.0 : 0.0, 1.0, eta_monotone});
  return rows;
}

std::vector<CheckRow> suite_bounds(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const long n = 1000000;
  const int d = 3;
  for (const auto family :
       {MarginalSampler::Family::gaussian, MarginalSampler::Family::uniform_ball,
        MarginalSampler::Family::laplace_product}) {
    MarginalSampler m;
    m.family = family;
    m.d = d;
    const Eigen::MatrixXd xs = sample(m, n, derive_seed(seed, family_name(family)));
    const Eigen::VectorXd mean = xs.colwise().mean();
    const double mean_bound = 5.0 * std::sqrt(static_cast<double>(d)) /
                              std::sqrt(static_cast<double>(n));
    rows.push_back({family_name(family) + "_mean", mean.norm(), mean_bound,
                    mean.norm() <= mean_bound});

    Eigen::MatrixXd cov = (xs.transpose() * xs) / static_cast<double>(n);
    cov -= mean * mean.transpose();
    const double dev =
        (cov - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    const double cov_bound =
        10.0 * static_cast<double>(d) / std::sqrt(static_cast<double>(n));
    rows.push_back({family_name(family) + "_cov", dev, cov_bound, dev <= cov_bound});
  }

  const Eigen::MatrixXd ball =
      sample(MarginalSampler::uniform_ball(2), 100000, derive_seed(seed, "ball"));
  const double max_norm = ball.rowwise().norm().maxCoeff();
  rows.push_back({"ball_support", max_norm, 2.0, max_norm <= 2.0 + 1e-12});

  const Eigen::MatrixXd rerun =
      sample(MarginalSampler::uniform_ball(2), 100000, derive_seed(seed, "ball"));
  const double rerun_diff = (ball - rerun).cwiseAbs().maxCoeff();
  rows.push_back({"sampler_determinism", rerun_diff, 0.0, rerun_diff == 0.0});

  const BoundsCheckReport rep =
      check_bounds(MarginalSampler::gaussian(4), log_concave_default_bounds(),
                   1000000, 3, derive_seed(seed, "check"));
  rows.push_back({"gaussian_density_margin", rep.worst_density_margin, 0.0,
                  rep.worst_density_margin >= 0.0});
  rows.push_back({"gaussian_tail_margin", rep.worst_tail_margin, 0.0,
                  rep.worst_tail_margin >= 0.0});

  // An impossible density floor must be flagged.
  const BoundsCheckReport bad = check_bounds(
      MarginalSampler::gaussian(2),
      BoundedParams(1.0, 1.0 / 9.0, std::nullopt, 1.0, 1.0), 100000, 1,
      derive_seed(seed, "impossible"));
  rows.push_back({"impossible_floor_detected", bad.worst_density_margin, 0.0,
                  bad.worst_density_margin < 0.0});
  return rows;
}

std::vector<CheckRow> suite_lemma32(std::uint64_t seed) {
  Rng rng(seed);
  double min_slack = std::numeric_limits<double>::infinity();
  double min_slack_worst = std::numeric_limits<double>::infinity();
  int checked = 0;
  for (int p = 0; p < 50; ++p) {
    TsybakovParams params(0.5, 2.0);
    const PiecewiseProfile profile = random_admissible_profile(rng, params);
    for (int s = 0; s < 10; ++s) {
      const double mass = rng.uniform01();
      const Lemma32Result res = check_lemma_3_2(profile, params, mass);
      min_slack = std::min(min_slack, res.lhs - res.rhs);
      const Lemma32Result worst =
          check_lemma_3_2_worst_set(profile, params, mass);
      min_slack_worst = std::min(min_slack_worst, worst.lhs - worst.rhs);
      ++checked;
    }
  }
  std::vector<CheckRow> rows;
  rows.push_back({"instances_checked", static_cast<double>(checked), 500.0,
                  checked == 500});
  rows.push_back({"min_slack", min_slack, -1e-12, min_slack >= -1e-12});
  rows.push_back({"min_slack_worst_set", min_slack_worst, -1e-12,
                  min_slack_worst >= -1e-12});

  // Degenerate mass and noiseless profile.
  TsybakovParams p_zero(0.5, 2.0);
  PiecewiseProfile zero{{1.0}, {0.0}};
  const Lemma32Result empty = check_lemma_3_2(zero, p_zero, 0.0);
  rows.push_back({"zero_mass", std::abs(empty.lhs) + std::abs(empty.rhs), 0.0,
                  empty.lhs == 0.0 && empty.rhs == 0.0 && empty.holds});
  const Lemma32Result noiseless = check_lemma_3_2(zero, p_zero, 0.7);
  rows.push_back({"noiseless_profile", noiseless.lhs - noiseless.rhs, 0.0,
                  noiseless.holds && std::abs(noiseless.lhs - 0.7) < 1e-15});
  return rows;
}

std::vector<CheckRow> suite_claim47(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const BoundedParams bounds = log_concave_default_bounds();
  const MarginalSampler m = MarginalSampler::gaussian(3);
  const Halfspace u(Vec::Unit(3, 0));

  const BoundCheck same = check_claim_4_7(m, bounds, u, u, 0.01, 100000,
                                          derive_seed(seed, "same"));
  rows.push_back({"identical_halfspaces", same.lhs, same.rhs, same.holds && same.lhs == 0.0});

  Vec tilted(3);
  tilted << std::cos(0.1), std::sin(0.1), 0.0;
  const BoundCheck vac = check_claim_4_7(m, bounds, u, Halfspace(tilted), 1.0,
                                         100000, derive_seed(seed, "vacuous"));
  rows.push_back({"vacuous_eps", vac.lhs, vac.rhs, vac.holds && vac.rhs >= 1.0});

  const BoundCheck ref = check_claim_4_7(m, bounds, u, Halfspace(tilted), 0.01,
                                         1000000, derive_seed(seed, "reference"));
  rows.push_back({"gaussian_reference", ref.lhs, ref.rhs, ref.holds});

  // Rotational symmetry: disagreement ~ angle / pi across angles.
  Rng rng(derive_seed(seed, "angles"));
  bool all_close = true;
  double worst_z = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double theta = 0.1 + 0.25 * i;
    Vec dir(3);
    for (int j = 0; j < 3; ++j) dir(j) = rng.normal();
    const Halfspace v(rotate_in_plane(u.normal(), dir, theta));
    const long n = 200000;
    const double dis = disagreement_rate(
        u, v, m, n, derive_seed(seed, "dis", static_cast<std::uint64_t>(i)));
    const double expected = theta / kPi;
    const double se = std::sqrt(expected * (1.0 - expected) / n);
    const double z = std::abs(dis - expected) / se;
    worst_z = std::max(worst_z, z);
    if (z > 3.0) all_close = false;
  }
  rows.push_back({"disagreement_angle_over_pi_worst_z", worst_z, 3.0, all_close});
  return rows;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"chebyshev", "regions", "moments", "sdp",
          "noise",     "bounds",  "lemma32", "claim47"};
}

std::vector<CheckRow> run_verify_suite(const std::string& name,
                                       std::uint64_t seed) {
  if (name == "chebyshev") return suite_chebyshev();
  if (name == "regions") return suite_regions();
  if (name == "moments") return suite_moments(seed);
  if (name == "sdp") return suite_sdp(seed);
  if (name == "noise") return suite_noise(seed);
  if (name == "bounds") return suite_bounds(seed);
  if (name == "lemma32") return suite_lemma32(seed);
  if (name == "claim47") return suite_claim47(seed);
  throw ConfigError("unknown verify suite '" + name + "'");
}

}  // namespace tsyb
