#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "tsyb/distributions.hpp"
#include "tsyb/geometry.hpp"

namespace tsyb {

// Exponent vector S of a monomial x^S.
struct MultiIndex {
  std::vector<int> exponents;

  int order() const;
  bool operator==(const MultiIndex& other) const = default;
};

// All monomials of total degree <= k in d variables, in graded
// lexicographic order: ascending total degree, and within a degree class
// descending lexicographic exponent vectors. Every moment matrix,
// certificate, and serialized polynomial shares this indexing.
class MonomialBasis {
 public:
  // Throws if the basis size C(d+k, k) exceeds 2e5 (moment matrices are
  // dense m x m); the message carries the computed size.
  MonomialBasis(int d, int k);

  int dimension() const { return d_; }
  int degree() const { return k_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& index(int i) const { return indices_[static_cast<size_t>(i)]; }
  // Position of an exponent vector, or -1 if outside the basis.
  int find(const std::vector<int>& exponents) const;

  // Monomial feature vector m(x): entry for S is prod_i x_i^{S_i}.
  Eigen::VectorXd eval(const Vec& x) const;

 private:
  int d_, k_;
  std::vector<MultiIndex> indices_;
  std::unordered_map<std::string, int> lookup_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;
BasisPtr make_basis(int d, int k);

// Binomial coefficient as a double (sizes only; exactness not required).
double binomial(int n, int k);

// p(t) = sum_i coeffs[i] t^i with nonzero trailing coefficient unless zero.
struct UnivariatePoly {
  std::vector<double> coeffs;

  explicit UnivariatePoly(std::vector<double> c = {});
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double t) const;
  double l2_sq() const;
  double l1() const;
};

// p(x) = sum_S coeffs[S] x^S over a shared basis.
struct MultivariatePoly {
  BasisPtr basis;
  Eigen::VectorXd coeffs;

  MultivariatePoly(BasisPtr b, Eigen::VectorXd c);
  double eval(const Vec& x) const;
};

// (sum_S C_S^2, sum_S |C_S|).
std::pair<double, double> poly_norms(const MultivariatePoly& p);

// Degree-k Chebyshev polynomial of the first kind, evaluated by the
// trigonometric branch on |t| <= 1 and the closed form
// ((t - sqrt(t^2-1))^k + (t + sqrt(t^2-1))^k) / 2 on |t| >= 1.
double chebyshev_eval(int k, double t);

// Coefficients of T_k by the recurrence T_{k+1} = 2 t T_k - T_{k-1}.
// Coefficient magnitude grows like 2^k; construction errors out past
// k = 25 where doubles stop being useful.
UnivariatePoly chebyshev_coeffs(int k);

// r(t) = p(a t + b).
UnivariatePoly affine_compose(const UnivariatePoly& p, double a, double b);

// Coefficients of t -> T_k(g(t)) for the band map
// g(t) = 1 + 2 (t - R/4) / (W + R/4), which sends R/4 to 1 and -W to -1.
UnivariatePoly band_shift(int k, double w_param, double r_rad);

// q(x) = p(<w, x>); requires deg(p) <= basis degree and ||w||_2 <= 1.
MultivariatePoly lift_along_direction(const UnivariatePoly& p, const Vec& w,
                                      const BasisPtr& basis);

// Coefficient-level square; the result lives in the degree-2k basis.
MultivariatePoly square_poly(const MultivariatePoly& p);

// Explicit certificate witness for a candidate w against the target w*:
// T_k(g(<v, x>)) with v = orthogonal_component(wstar, w) and W = 8k/beta.
// Its square, restricted to the band around w, boosts the disagreement
// region. Angles above pi/2 are accepted but only exercised here.
MultivariatePoly oracle_certificate(const Halfspace& wstar, const Halfspace& w,
                                    int k, const BoundedParams& params,
                                    std::optional<double> beta_override = {});

// CSV rows "exponents (semicolon-joined),coefficient".
void write_poly_csv(const std::filesystem::path& path,
                    const MultivariatePoly& p);
MultivariatePoly read_poly_csv(const std::filesystem::path& path);

}  // namespace tsyb
