#include "tsyb/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tsyb/csv.hpp"

namespace tsyb {

namespace {

std::string exponent_key(const std::vector<int>& e) {
  std::string key;
  for (int v : e) {
    key += std::to_string(v);
    key += ';';
  }
  return key;
}

// Exponent vectors of total degree `order` in `d` variables, descending
// lexicographic (first coordinate largest first).
void enumerate_order(int d, int order, std::vector<int>& prefix,
                     std::vector<MultiIndex>& out) {
  if (d == 1) {
    prefix.push_back(order);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int e = order; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_order(d - 1, order - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

int MultiIndex::order() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

MonomialBasis::MonomialBasis(int d, int k) : d_(d), k_(k) {
  if (d < 1) throw std::invalid_argument("MonomialBasis: d must be >= 1");
  if (k < 0) throw std::invalid_argument("MonomialBasis: k must be >= 0");
  const double m = binomial(d + k, k);
  if (m > 2e5)
    throw std::invalid_argument("MonomialBasis: size " + std::to_string(m) +
                                " exceeds the 2e5 cap");
  indices_.reserve(static_cast<size_t>(m));
  std::vector<int> prefix;
  for (int order = 0; order <= k; ++order)
    enumerate_order(d, order, prefix, indices_);
  for (int i = 0; i < size(); ++i)
    lookup_.emplace(exponent_key(indices_[static_cast<size_t>(i)].exponents), i);
}

int MonomialBasis::find(const std::vector<int>& exponents) const {
  const auto it = lookup_.find(exponent_key(exponents));
  return it == lookup_.end() ? -1 : it->second;
}

Eigen::VectorXd MonomialBasis::eval(const Vec& x) const {
  if (x.size() != d_)
    throw std::invalid_argument("MonomialBasis::eval: dimension mismatch");
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) {
    double v = 1.0;
    const auto& e = indices_[static_cast<size_t>(i)].exponents;
    for (int j = 0; j < d_; ++j)
      for (int rep = 0; rep < e[static_cast<size_t>(j)]; ++rep) v *= x(j);
    out(i) = v;
  }
  return out;
}

BasisPtr make_basis(int d, int k) {
  return std::make_shared<const MonomialBasis>(d, k);
}

UnivariatePoly::UnivariatePoly(std::vector<double> c) : coeffs(std::move(c)) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
}

double UnivariatePoly::eval(double t) const {
  double v = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
  return v;
}

double UnivariatePoly::l2_sq() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s;
}

double UnivariatePoly::l1() const {
  double s = 0.0;
  for (double c : coeffs) s += std::abs(c);
  return s;
}

MultivariatePoly::MultivariatePoly(BasisPtr b, Eigen::VectorXd c)
    : basis(std::move(b)), coeffs(std::move(c)) {
  if (!basis) throw std::invalid_argument("MultivariatePoly: null basis");
  if (coeffs.size() != basis->size())
    throw std::invalid_argument("MultivariatePoly: coefficient length mismatch");
}

double MultivariatePoly::eval(const Vec& x) const {
  return coeffs.dot(basis->eval(x));
}

std::pair<double, double> poly_norms(const MultivariatePoly& p) {
  return {p.coeffs.squaredNorm(), p.coeffs.lpNorm<1>()};
}

double chebyshev_eval(int k, double t) {
  if (k < 0) throw std::invalid_argument("chebyshev_eval: k must be >= 0");
  if (std::abs(t) <= 1.0) return std::cos(k * std::acos(t));
  const double root = std::sqrt(t * t - 1.0);
  return 0.5 * (std::pow(t - root, k) + std::pow(t + root, k));
}

UnivariatePoly chebyshev_coeffs(int k) {
  if (k < 0) throw std::invalid_argument("chebyshev_coeffs: k must be >= 0");
  if (k > 25)
    throw std::invalid_argument(
        "chebyshev_coeffs: k > 25 loses integer exactness in doubles");
  std::vector<double> prev{1.0};        // T_0
  if (k == 0) return UnivariatePoly(prev);
  std::vector<double> cur{0.0, 1.0};    // T_1
  for (int deg = 2; deg <= k; ++deg) {
    std::vector<double> next(static_cast<size_t>(deg) + 1, 0.0);
    for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return UnivariatePoly(cur);
}

UnivariatePoly affine_compose(const UnivariatePoly& p, double a, double b) {
  const int k = p.degree();
  std::vector<double> out(static_cast<size_t>(k) + 1, 0.0);
  // (a t + b)^i expanded once per power, reused across coefficients.
  std::vector<double> power{1.0};  // (a t + b)^0
  for (int i = 0; i <= k; ++i) {
    for (size_t j = 0; j < power.size(); ++j) out[j] += p.coeffs[static_cast<size_t>(i)] * power[j];
    if (i == k) break;
    std::vector<double> next(power.size() + 1, 0.0);
    for (size_t j = 0; j < power.size(); ++j) {
      next[j + 1] += a * power[j];
      next[j] += b * power[j];
    }
    power = std::move(next);
  }
  return UnivariatePoly(out);
}

UnivariatePoly band_shift(int k, double w_param, double r_rad) {
  if (!(w_param > 0.0 && r_rad > 0.0))
    throw std::invalid_argument("band_shift: W and R must be positive");
  const double denom = w_param + r_rad / 4.0;
  const double a = 2.0 / denom;
  const double b = 1.0 - 2.0 * (r_rad / 4.0) / denom;
  return affine_compose(chebyshev_coeffs(k), a, b);
}

MultivariatePoly lift_along_direction(const UnivariatePoly& p, const Vec& w,
                                      const BasisPtr& basis) {
  if (p.degree() > basis->degree())
    throw std::invalid_argument("lift_along_direction: degree exceeds basis");
  if (w.size() != basis->dimension())
    throw std::invalid_argument("lift_along_direction: dimension mismatch");
  if (w.norm() > 1.0 + 1e-12)
    throw std::invalid_argument("lift_along_direction: ||w|| must be <= 1");

  const int d = basis->dimension();
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(basis->size());
  // <w,x>^i = sum_{|S|=i} (i!/S!) w^S x^S; walk the basis once and read
  // off the multinomial weight per index.
  for (int idx = 0; idx < basis->size(); ++idx) {
    const MultiIndex& s = basis->index(idx);
    const int order = s.order();
    if (order > p.degree()) break;  // graded order: all later are higher
    const double c = p.coeffs[static_cast<size_t>(order)];
    if (c == 0.0) continue;
    double multinomial = 1.0;
    double wpow = 1.0;
    int used = 0;
    for (int j = 0; j < d; ++j) {
      const int e = s.exponents[static_cast<size_t>(j)];
      for (int r = 1; r <= e; ++r) {
        ++used;
        multinomial *= static_cast<double>(used) / static_cast<double>(r);
        wpow *= w(j);
      }
    }
    coeffs(idx) = c * multinomial * wpow;
  }
  return MultivariatePoly(basis, coeffs);
}

MultivariatePoly square_poly(const MultivariatePoly& p) {
  const int d = p.basis->dimension();
  BasisPtr out_basis = make_basis(d, 2 * p.basis->degree());
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(out_basis->size());
  std::vector<int> sum(static_cast<size_t>(d));
  for (int i = 0; i < p.basis->size(); ++i) {
    if (p.coeffs(i) == 0.0) continue;
    for (int j = 0; j < p.basis->size(); ++j) {
      if (p.coeffs(j) == 0.0) continue;
      const auto& a = p.basis->index(i).exponents;
      const auto& b = p.basis->index(j).exponents;
      for (int q = 0; q < d; ++q)
        sum[static_cast<size_t>(q)] = a[static_cast<size_t>(q)] + b[static_cast<size_t>(q)];
      const int idx = out_basis->find(sum);
      coeffs(idx) += p.coeffs(i) * p.coeffs(j);
    }
  }
  return MultivariatePoly(out_basis, coeffs);
}

MultivariatePoly oracle_certificate(const Halfspace& wstar, const Halfspace& w,
                                    int k, const BoundedParams& params,
                                    std::optional<double> beta_override) {
  if (k < 1) throw std::invalid_argument("oracle_certificate: k must be >= 1");
  const double beta = beta_override.value_or(params.beta_tail);
  if (!(beta > 0.0))
    throw std::invalid_argument("oracle_certificate: beta must be positive");
  const Vec v = orthogonal_component(wstar.normal(), w.normal());
  const double w_param = 8.0 * static_cast<double>(k) / beta;
  const UnivariatePoly band = band_shift(k, w_param, params.r_rad);
  return lift_along_direction(band, v, make_basis(wstar.dim(), k));
}

void write_poly_csv(const std::filesystem::path& path,
                    const MultivariatePoly& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "exponents,coefficient\n";
  for (int i = 0; i < p.basis->size(); ++i) {
    const auto& e = p.basis->index(i).exponents;
    for (size_t j = 0; j < e.size(); ++j) out << (j ? ";" : "") << e[j];
    out << "," << format_double(p.coeffs(i)) << "\n";
  }
}

MultivariatePoly read_poly_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.size() < 2 || lines[0] != "exponents,coefficient")
    throw std::runtime_error("bad polynomial file " + path.string());

  std::vector<std::vector<int>> exps;
  std::vector<double> vals;
  int d = -1, k = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv_line(lines[i]);
    if (cells.size() != 2)
      throw std::runtime_error("bad polynomial row " + std::to_string(i + 1));
    std::vector<int> e;
    std::stringstream ss(cells[0]);
    std::string tok;
    while (std::getline(ss, tok, ';')) e.push_back(std::atoi(tok.c_str()));
    if (d < 0) d = static_cast<int>(e.size());
    if (static_cast<int>(e.size()) != d)
      throw std::runtime_error("inconsistent exponent arity in " + path.string());
    k = std::max(k, std::accumulate(e.begin(), e.end(), 0));
    exps.push_back(std::move(e));
    vals.push_back(std::strtod(cells[1].c_str(), nullptr));
  }
  BasisPtr basis = make_basis(d, k);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(basis->size());
  for (size_t i = 0; i < exps.size(); ++i) {
    const int idx = basis->find(exps[i]);
    if (idx < 0) throw std::runtime_error("exponent outside basis in " + path.string());
    coeffs(idx) = vals[i];
  }
  return MultivariatePoly(basis, coeffs);
}

}  // namespace tsyb
