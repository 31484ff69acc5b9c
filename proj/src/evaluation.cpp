#include "tsyb/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tsyb/rng.hpp"

namespace tsyb {

namespace {

double rate_std_err(double rate, long n) {
  return std::sqrt(std::max(0.0, rate * (1.0 - rate)) / static_cast<double>(n));
}

void validate_profile(const PiecewiseProfile& profile) {
  if (profile.lengths.size() != profile.values.size() || profile.lengths.empty())
    throw std::invalid_argument("PiecewiseProfile: lengths/values mismatch");
  double total = 0.0;
  for (double l : profile.lengths) {
    if (!(l > 0.0)) throw std::invalid_argument("PiecewiseProfile: nonpositive length");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("PiecewiseProfile: lengths must sum to 1");
  for (double v : profile.values)
    if (!(v >= 0.0 && v <= 0.5))
      throw std::invalid_argument("PiecewiseProfile: eta outside [0, 1/2]");
}

// The condition Pr[eta >= 1/2 - t] <= A t^(alpha/(1-alpha)) for a
// piecewise-constant profile only changes value at t = 1/2 - eta_j, so
// checking the levels plus t = 1/2 is exhaustive.
void require_admissible(const PiecewiseProfile& profile,
                        const TsybakovParams& p) {
  const double expo = p.alpha / (1.0 - p.alpha);
  std::vector<double> ts;
  for (double v : profile.values) {
    const double t = 0.5 - v;
    if (t <= 0.0)
      throw std::invalid_argument(
          "profile violates the noise condition: a level equals 1/2");
    ts.push_back(t);
  }
  ts.push_back(0.5);
  for (double t : ts) {
    double mass = 0.0;
    for (size_t i = 0; i < profile.values.size(); ++i)
      if (profile.values[i] >= 0.5 - t) mass += profile.lengths[i];
    if (mass > p.a_const * std::pow(t, expo) + 1e-12)
      throw std::invalid_argument(
          "profile violates the noise condition at t=" + std::to_string(t));
  }
}

}  // namespace

bool profile_admissible(const PiecewiseProfile& profile,
                        const TsybakovParams& p) {
  validate_profile(profile);
  try {
    require_admissible(profile, p);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

namespace {

double integrate_signal(const PiecewiseProfile& profile, double mass) {
  // Integral of (1 - 2 eta) over [0, mass].
  double acc = 0.0;
  double pos = 0.0;
  for (size_t i = 0; i < profile.lengths.size() && pos < mass; ++i) {
    const double take = std::min(profile.lengths[i], mass - pos);
    acc += take * (1.0 - 2.0 * profile.values[i]);
    pos += take;
  }
  return acc;
}

}  // namespace

double disagreement_rate(const Halfspace& h1, const Halfspace& h2,
                         const MarginalSampler& m, long n, std::uint64_t seed) {
  if (n < 1000) throw std::invalid_argument("disagreement_rate: need n >= 1e3");
  if (h1.dim() != h2.dim() || h1.dim() != m.d)
    throw std::invalid_argument("disagreement_rate: dimension mismatch");
  const Eigen::MatrixXd xs = sample(m, n, seed);
  long count = 0;
  for (long i = 0; i < n; ++i)
    count += disagreement(h1, h2, xs.row(i).transpose());
  return static_cast<double>(count) / static_cast<double>(n);
}

std::vector<BoundCheck> check_fact_positivity(
    const Dataset& samples, const Halfspace& wstar,
    const std::vector<std::function<double(const Vec&)>>& fns) {
  const long n = samples.n();
  if (n == 0) throw std::invalid_argument("check_fact_positivity: empty samples");
  std::vector<BoundCheck> out;
  for (size_t f = 0; f < fns.size(); ++f) {
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < n; ++i) {
      const Vec x = samples.point(i);
      const double term =
          fns[f](x) * wstar.normal().dot(x) * samples.labels(i);
      sum += term;
      sum_sq += term * term;
    }
    BoundCheck check;
    check.name = "positivity_" + std::to_string(f);
    check.lhs = sum / static_cast<double>(n);
    check.rhs = 0.0;
    const double var =
        n > 1 ? std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n)) /
                                  static_cast<double>(n - 1))
              : 0.0;
    check.std_err = std::sqrt(var / static_cast<double>(n));
    check.holds = check.lhs >= -4.0 * check.std_err;
    out.push_back(std::move(check));
  }
  return out;
}

std::pair<BoundCheck, BoundCheck> check_error_sandwich(
    const Dataset& samples, const Halfspace& h, const Halfspace& wstar,
    const TsybakovParams& p) {
  const long n = samples.n();
  if (n == 0) throw std::invalid_argument("check_error_sandwich: empty samples");
  long err_h_count = 0, err_f_count = 0, dis_count = 0;
  for (long i = 0; i < n; ++i) {
    const Vec x = samples.point(i);
    const int hy = h.classify(x);
    const int fy = wstar.classify(x);
    if (hy != samples.labels(i)) ++err_h_count;
    if (fy != samples.labels(i)) ++err_f_count;
    if (hy != fy) ++dis_count;
  }
  const double err_h = static_cast<double>(err_h_count) / n;
  const double err_f = static_cast<double>(err_f_count) / n;
  const double dis = static_cast<double>(dis_count) / n;

  BoundCheck upper;
  upper.name = "error_sandwich_upper";
  upper.lhs = err_h;
  upper.rhs = err_f + dis;
  upper.std_err = rate_std_err(err_h, n);
  // Pointwise 1{h!=y} <= 1{f!=y} + 1{h!=f} makes this exact on shared samples.
  upper.holds = upper.lhs <= upper.rhs + 4.0 * upper.std_err;

  BoundCheck lower;
  lower.name = "error_sandwich_lower";
  lower.lhs = err_h;
  double powered = dis > 0.0 ? std::pow(dis, 1.0 / p.alpha) : 0.0;
  lower.clamped = dis > 0.0 && powered < 1e-300;
  if (lower.clamped) powered = 1e-300;
  lower.rhs = err_f + c_alpha_a(p) * powered;
  lower.std_err = rate_std_err(err_h, n);
  lower.holds = lower.lhs >= lower.rhs - 4.0 * lower.std_err;
  return {upper, lower};
}

Lemma32Result check_lemma_3_2(const PiecewiseProfile& profile,
                              const TsybakovParams& p, double set_mass) {
  validate_profile(profile);
  require_admissible(profile, p);
  if (!(set_mass >= 0.0 && set_mass <= 1.0))
    throw std::invalid_argument("check_lemma_3_2: set_mass must be in [0, 1]");
  Lemma32Result res;
  res.lhs = integrate_signal(profile, set_mass);
  res.rhs = set_mass > 0.0
                ? c_alpha_a(p) * std::pow(set_mass, 1.0 / p.alpha)
                : 0.0;
  res.holds = res.lhs >= res.rhs - 1e-12;
  return res;
}

Lemma32Result check_lemma_3_2_worst_set(const PiecewiseProfile& profile,
                                        const TsybakovParams& p,
                                        double set_mass) {
  validate_profile(profile);
  require_admissible(profile, p);
  // Fill S from the noisiest pieces downward.
  std::vector<size_t> order(profile.values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return profile.values[a] > profile.values[b];
  });
  double acc = 0.0, pos = 0.0;
  for (size_t idx : order) {
    if (pos >= set_mass) break;
    const double take = std::min(profile.lengths[idx], set_mass - pos);
    acc += take * (1.0 - 2.0 * profile.values[idx]);
    pos += take;
  }
  Lemma32Result res;
  res.lhs = acc;
  res.rhs = set_mass > 0.0
                ? c_alpha_a(p) * std::pow(set_mass, 1.0 / p.alpha)
                : 0.0;
  res.holds = res.lhs >= res.rhs - 1e-12;
  return res;
}

BoundCheck check_claim_4_7(const MarginalSampler& m, const BoundedParams& p,
                           const Halfspace& u, const Halfspace& v, double eps,
                           long n, std::uint64_t seed) {
  if (!p.u_up) throw std::invalid_argument("check_claim_4_7: U bound missing");
  if (!(eps > 0.0)) throw std::invalid_argument("check_claim_4_7: eps must be > 0");
  BoundCheck check;
  check.name = "claim_4_7";
  check.lhs = disagreement_rate(u, v, m, n, seed);
  const double log_term = std::log(p.b_tail / eps);
  check.rhs = *p.u_up * (log_term * log_term) /
                  (p.beta_tail * p.beta_tail) *
                  angle(u.normal(), v.normal()) +
              eps;
  check.std_err = rate_std_err(check.lhs, n);
  check.holds = check.lhs <= check.rhs + 4.0 * check.std_err;
  return check;
}

EvalReport evaluate_hypothesis(const Dataset& samples, const Halfspace& h,
                               const Halfspace& wstar,
                               const TsybakovParams& p) {
  const long n = samples.n();
  if (n == 0) throw std::invalid_argument("evaluate_hypothesis: empty samples");
  EvalReport report;
  report.angle_err = angle(h.normal(), wstar.normal());
  long dis = 0, mis = 0;
  for (long i = 0; i < n; ++i) {
    const Vec x = samples.point(i);
    if (h.classify(x) != wstar.classify(x)) ++dis;
    if (h.classify(x) != samples.labels(i)) ++mis;
  }
  report.disagreement = static_cast<double>(dis) / n;
  report.misclass = static_cast<double>(mis) / n;
  const auto [upper, lower] = check_error_sandwich(samples, h, wstar, p);
  report.bound_checks = {upper, lower};
  return report;
}

}  // namespace tsyb
