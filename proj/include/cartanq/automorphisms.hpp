#ifndef CARTANQ_AUTOMORPHISMS_HPP
#define CARTANQ_AUTOMORPHISMS_HPP

#include "cartanq/domains.hpp"
#include "cartanq/linalg.hpp"
#include "cartanq/proper_maps.hpp"

namespace cartanq {

/// Linear automorphism z -> omega U z of the Lie ball: omega unimodular and
/// U real special orthogonal (both norms entering the membership
/// inequalities are invariant under exactly these).
struct LieLinearAut {
  cplx omega{1.0, 0.0};
  RMat U;

  int dim() const { return static_cast<int>(U.rows()); }
};

inline LieLinearAut make_lie_linear(cplx omega, const RMat& u) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw std::invalid_argument("LieLinearAut: omega must be unimodular");
  if (u.rows() != u.cols() || u.rows() < 1)
    throw std::invalid_argument("LieLinearAut: U must be square");
  if (!u.allFinite()) throw std::invalid_argument("LieLinearAut: non-finite entry");
  int n = static_cast<int>(u.rows());
  if ((u.transpose() * u - RMat::Identity(n, n)).norm() > 1e-10)
    throw std::invalid_argument("LieLinearAut: U must be orthogonal");
  if (std::abs(u.determinant() - 1.0) > 1e-10)
    throw std::invalid_argument("LieLinearAut: det U must be +1");
  return LieLinearAut{omega, u};
}

inline cvec lie_linear_apply(const LieLinearAut& a, const cvec& z) {
  require_dim(z, a.dim(), "lie_linear_apply");
  require_finite(z, "lie_linear_apply");
  int n = a.dim();
  cvec out(static_cast<std::size_t>(n), cplx{0.0});
  for (int i = 0; i < n; ++i) {
    cplx acc{0.0};
    for (int j = 0; j < n; ++j) acc += a.U(i, j) * z[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = a.omega * acc;
  }
  return out;
}

inline PointMap as_point_map(const LieLinearAut& a) {
  return PointMap{a.dim(), a.dim(), [a](const cvec& z) { return lie_linear_apply(a, z); }};
}

/// (z1, z) -> omega (z1, U z): the block-diagonal extension one dimension up,
/// fixing the first coordinate direction and commuting with the sign flip
inline LieLinearAut extend_linear(const LieLinearAut& a) {
  int n = a.dim();
  RMat u = RMat::Identity(n + 1, n + 1);
  u.block(1, 1, n, n) = a.U;
  return LieLinearAut{a.omega, u};
}

/// quasi-homogeneous rotation (omega^2 w1, omega w2, ..., omega wn) of the
/// quotient domain
inline cvec rho_omega(cplx omega, const cvec& w) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw std::invalid_argument("rho_omega: omega must be unimodular");
  require_finite(w, "rho_omega");
  cvec out = w;
  out[0] *= omega * omega;
  for (std::size_t j = 1; j < out.size(); ++j) out[j] *= omega;
  return out;
}

struct InducedImage {
  cvec image;
  double residual = 0.0;  // distance between the two branch images
  bool well_defined = false;
};

inline constexpr double kInducedResidualTol = 1e-10;

/// Push a sigma-commuting automorphism a of the Lie ball down to the
/// quotient: F(w) = Lambda(a(z)) for a preimage z. The residual compares the
/// two square-root branches; above tolerance, a does not preserve fibers and
/// the result is flagged as not well defined.
inline InducedImage induced_quotient_aut(const PointMap& a, const cvec& w) {
  require_dim(w, a.dim_in, "induced_quotient_aut");
  cvec zp = lambda_preimage(w);
  cvec zm = sigma_flip(zp);
  MapId lam = MapId::lambda_n(a.dim_in);
  cvec fp = eval(lam, a.f(zp));
  cvec fm = eval(lam, a.f(zm));
  InducedImage out;
  out.residual = dist2(fp, fm);
  out.image = std::move(fp);
  out.well_defined = out.residual <= kInducedResidualTol;
  return out;
}

/// Block assembly used when extending an automorphism of the Lie ball one
/// dimension up: A gains a leading 1, B a leading zero row, C a leading zero
/// column, D is kept.
struct BlockExtension {
  CMat Atilde, Btilde, Ctilde, Dtilde;
};

inline BlockExtension block_extend(const CMat& a, const CMat& b, const CMat& c, const CMat& d) {
  const int k = static_cast<int>(a.rows());
  if (a.cols() != k) throw std::invalid_argument("block_extend: A must be square");
  if (d.rows() != 2 || d.cols() != 2) throw std::invalid_argument("block_extend: D must be 2x2");
  if (b.rows() != k || b.cols() != 2)
    throw std::invalid_argument("block_extend: B must be k x 2");
  if (c.rows() != 2 || c.cols() != k)
    throw std::invalid_argument("block_extend: C must be 2 x k");
  BlockExtension out;
  out.Atilde = CMat::Zero(k + 1, k + 1);
  out.Atilde(0, 0) = 1.0;
  out.Atilde.block(1, 1, k, k) = a;
  out.Btilde = CMat::Zero(k + 1, 2);
  out.Btilde.block(1, 0, k, 2) = b;
  out.Ctilde = CMat::Zero(2, k + 1);
  out.Ctilde.block(0, 1, 2, k) = c;
  out.Dtilde = d;
  return out;
}

/// Sampled fixed points of a self-map of d: candidates found by midpoint
/// averaging x <- (x + f(x))/2, kept when |f(x) - x| < tol inside the
/// domain, deduplicated at distance 1e-6.
inline std::vector<cvec> fix_points_sample(const PointMap& f, const DomainId& d, int samples,
                                           std::uint64_t seed, double tol = 1e-8) {
  if (f.dim_in != d.point_dim() || f.dim_out != d.point_dim())
    throw std::invalid_argument("fix_points_sample: map/domain arity mismatch");
  Rng rng(seed);
  std::vector<cvec> found;
  const int kRefineIters = 50;
  for (int s = 0; s < samples; ++s) {
    cvec x = sample_point(d, rng);
    cvec y = f.f(x);
    if (domain_margin(d, y) < -1e-9)
      throw std::invalid_argument("fix_points_sample: map does not self-map the domain");
    bool alive = true;
    for (int it = 0; it < kRefineIters && alive; ++it) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = 0.5 * (x[j] + y[j]);
      if (domain_margin(d, x) <= 0.0) {
        alive = false;
        break;
      }
      y = f.f(x);
      if (dist2(x, y) < 0.1 * tol) break;
    }
    if (!alive) continue;
    if (dist2(x, f.f(x)) >= tol) continue;
    bool dup = false;
    for (const cvec& p : found)
      if (dist2(p, x) < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) found.push_back(std::move(x));
  }
  return found;
}

}  // namespace cartanq

#endif  // CARTANQ_AUTOMORPHISMS_HPP
