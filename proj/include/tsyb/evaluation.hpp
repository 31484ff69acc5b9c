#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tsyb/distributions.hpp"
#include "tsyb/geometry.hpp"
#include "tsyb/noise.hpp"
#include "tsyb/oracle.hpp"

namespace tsyb {

struct BoundCheck {
  std::string name;
  double lhs;
  double rhs;
  bool holds;
  double std_err;
  bool clamped = false;  // rhs underflowed and was floored at 1e-300
};

struct EvalReport {
  double angle_err;
  double disagreement;  // vs the target halfspace
  double misclass;      // vs the labels
  std::vector<BoundCheck> bound_checks;
};

// Monte-Carlo Pr[h1(x) != h2(x)]; rotationally symmetric marginals give
// angle / pi. Requires n >= 1e3.
double disagreement_rate(const Halfspace& h1, const Halfspace& h2,
                         const MarginalSampler& m, long n, std::uint64_t seed);

// Empirical E[F(x) <w*,x> y] with standard error for each nonnegative
// reweighting F; the optimality condition says these are all >= 0 in
// expectation. Pass flag: estimate >= -4 std errors.
std::vector<BoundCheck> check_fact_positivity(
    const Dataset& samples, const Halfspace& wstar,
    const std::vector<std::function<double(const Vec&)>>& fns);

// err(h) <= err(f) + dis(h,f)  and  err(h) >= err(f) + C_alpha^A dis^(1/alpha),
// all three rates estimated on the same samples. The upper bound is a
// pointwise union-bound identity at the sample level.
std::pair<BoundCheck, BoundCheck> check_error_sandwich(
    const Dataset& samples, const Halfspace& h, const Halfspace& wstar,
    const TsybakovParams& p);

// Piecewise-constant noise profile on [0, 1] under the uniform measure.
struct PiecewiseProfile {
  std::vector<double> lengths;  // positive, summing to 1
  std::vector<double> values;   // eta levels in [0, 1/2]
};

struct Lemma32Result {
  double lhs;  // integral of (1 - 2 eta) over S = [0, set_mass]
  double rhs;  // C_alpha^A * set_mass^(1/alpha)
  bool holds;
};

// True iff the profile satisfies the noise condition under the uniform
// measure; exhaustive over the profile's levels plus t = 1/2.
bool profile_admissible(const PiecewiseProfile& profile,
                        const TsybakovParams& p);

// Exact quadrature check of the noise-mass inequality; the profile must
// satisfy the noise condition under the uniform measure (verified
// exhaustively over the profile's levels, which is exact for piecewise-
// constant eta). Throws listing the violating t otherwise.
Lemma32Result check_lemma_3_2(const PiecewiseProfile& profile,
                              const TsybakovParams& p, double set_mass);

// Worst-case variant: S collects the noisiest pieces of total mass
// set_mass instead of the left interval. Still a theorem; used as a
// stronger property check.
Lemma32Result check_lemma_3_2_worst_set(const PiecewiseProfile& profile,
                                        const TsybakovParams& p,
                                        double set_mass);

// dis(h_u, h_v) <= U * (log^2(B/eps)/beta^2) * theta(v,u) + eps against a
// Monte-Carlo disagreement estimate. Requires p.u_up.
BoundCheck check_claim_4_7(const MarginalSampler& m, const BoundedParams& p,
                           const Halfspace& u, const Halfspace& v, double eps,
                           long n, std::uint64_t seed);

// Full report for a learned hypothesis against a known target.
EvalReport evaluate_hypothesis(const Dataset& samples, const Halfspace& h,
                               const Halfspace& wstar,
                               const TsybakovParams& p);

}  // namespace tsyb
