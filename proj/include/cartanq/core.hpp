#ifndef CARTANQ_CORE_HPP
#define CARTANQ_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartanq {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Thrown when a query point fails a domain/image precondition.
/// Carries the signed margin that caused the rejection.
class outside_domain_error : public std::domain_error {
public:
  outside_domain_error(const std::string& what, double margin)
      : std::domain_error(what), margin_(margin) {}
  double margin() const { return margin_; }

private:
  double margin_;
};

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool is_finite(const cvec& z) {
  for (cplx c : z)
    if (!is_finite(c)) return false;
  return true;
}

inline void require_finite(const cvec& z, const char* who) {
  if (!is_finite(z)) throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
}

inline void require_dim(const cvec& z, int n, const char* who) {
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument(std::string(who) + ": expected dimension " + std::to_string(n) +
                                ", got " + std::to_string(z.size()));
}

/// squared Euclidean norm  sum |z_j|^2
inline double norm_sq(const cvec& z) {
  double s = 0.0;
  for (cplx c : z) s += std::norm(c);
  return s;
}

/// complex bilinear square  z . z = sum z_j^2
inline cplx bullet(const cvec& z) {
  cplx s = 0.0;
  for (cplx c : z) s += c * c;
  return s;
}

/// Hermitian pairing  <z, w> = sum z_j conj(w_j)
inline cplx herm(const cvec& z, const cvec& w) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

/// sup-norm distance between two points of the same dimension
inline double dist_inf(const cvec& a, const cvec& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

inline double dist2(const cvec& a, const cvec& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

inline cvec scaled(const cvec& z, cplx s) {
  cvec r(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) r[j] = s * z[j];
  return r;
}

inline cvec origin(int n) { return cvec(static_cast<std::size_t>(n), cplx{0.0, 0.0}); }

/// flip the sign of the first coordinate (the deck reflection of the
/// coordinate-squaring maps)
inline cvec sigma_flip(const cvec& z) {
  cvec s = z;
  s[0] = -z[0];
  return s;
}

/// A holomorphic map between coordinate tuples, carried with its arities.
struct PointMap {
  int dim_in = 0;
  int dim_out = 0;
  std::function<cvec(const cvec&)> f;

  cvec operator()(const cvec& z) const {
    require_dim(z, dim_in, "PointMap");
    return f(z);
  }
};

inline PointMap identity_map(int n) {
  return PointMap{n, n, [](const cvec& z) { return z; }};
}

inline PointMap compose(const PointMap& outer, const PointMap& inner) {
  if (inner.dim_out != outer.dim_in)
    throw std::invalid_argument("compose: arity mismatch");
  return PointMap{inner.dim_in, outer.dim_out,
                  [outer, inner](const cvec& z) { return outer.f(inner.f(z)); }};
}

/// both roots of t^2 - b t + c = 0, numerically stable pairing
inline std::pair<cplx, cplx> quadratic_roots(cplx b, cplx c) {
  cplx disc = std::sqrt(b * b - 4.0 * c);
  // pick the sign that avoids cancellation in b +- disc
  cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? (b + disc) : (b - disc);
  if (std::abs(q) == 0.0) return {cplx{0.0}, cplx{0.0}};
  cplx r1 = q / 2.0;
  cplx r2 = c / r1;
  return {r1, r2};
}

}  // namespace cartanq

#endif  // CARTANQ_CORE_HPP
