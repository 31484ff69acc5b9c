#pragma once

#include <Eigen/Core>

namespace tsyb {

using Vec = Eigen::VectorXd;

// sign(t) = +1 for t >= 0, -1 otherwise. Ties at zero are always +1;
// deterministic tests depend on this.
inline int sign(double t) { return t >= 0.0 ? +1 : -1; }

// Angle between u and v in [0, pi]. The arccos argument is clamped to
// [-1, 1] so numerically parallel vectors do not produce NaN.
// Throws std::domain_error on a zero-norm input.
double angle(const Vec& u, const Vec& v);

// Origin-centered halfspace x -> sign(<normal, x>). The constructor
// normalizes its argument (OPGD iterates arrive with arbitrary norm)
// and rejects zero, non-finite, or d < 2 input.
class Halfspace {
 public:
  explicit Halfspace(const Vec& normal);

  const Vec& normal() const { return normal_; }
  int dim() const { return static_cast<int>(normal_.size()); }
  int classify(const Vec& x) const;

 private:
  Vec normal_;
};

// 1 iff the two halfspaces label x differently.
int disagreement(const Halfspace& h1, const Halfspace& h2, const Vec& x);

// Unit vector v in span(w, wstar) with <v, w> = 0 and <v, wstar> <= 0,
// so that wstar = cos(theta) w_hat - sin(theta) v.  Throws on parallel
// or antiparallel inputs.
Vec orthogonal_component(const Vec& wstar, const Vec& w);

// Unit vector at the given angle from u, rotated within span(u, toward)
// in the direction of toward.
Vec rotate_in_plane(const Vec& u, const Vec& toward, double theta);

}  // namespace tsyb
