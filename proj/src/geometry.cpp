#include "tsyb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsyb {

double angle(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("angle: dimension mismatch");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("angle: zero-norm input");
  const double c = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

Halfspace::Halfspace(const Vec& normal) {
  if (normal.size() < 2) throw std::invalid_argument("Halfspace: dimension must be >= 2");
  if (!normal.allFinite()) throw std::invalid_argument("Halfspace: non-finite normal");
  const double n = normal.norm();
  if (n == 0.0) throw std::invalid_argument("Halfspace: zero normal");
  normal_ = normal / n;
}

int Halfspace::classify(const Vec& x) const {
  if (x.size() != normal_.size())
    throw std::invalid_argument("Halfspace::classify: dimension mismatch");
  return sign(normal_.dot(x));
}

int disagreement(const Halfspace& h1, const Halfspace& h2, const Vec& x) {
  if (h1.dim() != h2.dim() || h1.dim() != x.size())
    throw std::invalid_argument("disagreement: dimension mismatch");
  return h1.classify(x) != h2.classify(x) ? 1 : 0;
}

Vec rotate_in_plane(const Vec& u, const Vec& toward, double theta) {
  const Vec uh = u / u.norm();
  Vec perp = toward - toward.dot(uh) * uh;
  const double n = perp.norm();
  if (n < 1e-12)
    throw std::domain_error("rotate_in_plane: degenerate rotation plane");
  perp /= n;
  return Vec(std::cos(theta) * uh + std::sin(theta) * perp);
}

Vec orthogonal_component(const Vec& wstar, const Vec& w) {
  if (wstar.size() != w.size())
    throw std::invalid_argument("orthogonal_component: dimension mismatch");
  const double ns = wstar.norm();
  const double nw = w.norm();
  if (ns == 0.0 || nw == 0.0)
    throw std::domain_error("orthogonal_component: zero-norm input");
  const Vec s = wstar / ns;
  const Vec u = w / nw;
  // Component of wstar orthogonal to w; its norm is sin(theta).
  Vec perp = s - s.dot(u) * u;
  const double n = perp.norm();
  if (n < 1e-12)
    throw std::domain_error("orthogonal_component: degenerate geometry (parallel inputs)");
  return Vec(-perp / n);
}

}  // namespace tsyb
