#ifndef CARTANQ_DOMAINS_HPP
#define CARTANQ_DOMAINS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "cartanq/core.hpp"
#include "cartanq/linalg.hpp"
#include "cartanq/rng.hpp"

namespace cartanq {

enum class DomainTag {
  UnitDisc,
  Polydisc,
  EuclideanBall,
  Annulus,
  CartanI,
  CartanII,
  CartanIII,
  LieBall,
  QuotientL,
  Ellipsoid,
  SymBidisc,
  Tetrablock,
  FDomain,
};

/// Tagged descriptor of a domain family. `n`, `m` are matrix/vector sizes,
/// `r` is the inner radius of the annulus A(r, 1/r).
struct DomainId {
  DomainTag tag = DomainTag::UnitDisc;
  int n = 1;
  int m = 1;
  double r = 0.5;

  static DomainId unit_disc() { return {DomainTag::UnitDisc, 1, 1, 0.0}; }
  static DomainId polydisc(int n) {
    check_dim(n, 1, "Polydisc");
    return {DomainTag::Polydisc, n, 1, 0.0};
  }
  static DomainId ball(int n) {
    check_dim(n, 1, "EuclideanBall");
    return {DomainTag::EuclideanBall, n, 1, 0.0};
  }
  static DomainId annulus(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("Annulus: r must lie in (0,1)");
    return {DomainTag::Annulus, 1, 1, r};
  }
  static DomainId cartan1(int m, int n) {
    check_dim(m, 1, "CartanI");
    check_dim(n, 1, "CartanI");
    return {DomainTag::CartanI, n, m, 0.0};
  }
  static DomainId cartan2(int n) {
    check_dim(n, 2, "CartanII");
    return {DomainTag::CartanII, n, n, 0.0};
  }
  static DomainId cartan3(int n) {
    check_dim(n, 1, "CartanIII");
    return {DomainTag::CartanIII, n, n, 0.0};
  }
  static DomainId lie_ball(int n) {
    check_dim(n, 1, "LieBall");
    return {DomainTag::LieBall, n, 1, 0.0};
  }
  static DomainId quotient_l(int n) {
    check_dim(n, 2, "QuotientL");
    return {DomainTag::QuotientL, n, 1, 0.0};
  }
  static DomainId ellipsoid(int n) {
    check_dim(n, 1, "Ellipsoid");
    return {DomainTag::Ellipsoid, n, 1, 0.0};
  }
  static DomainId sym_bidisc() { return {DomainTag::SymBidisc, 2, 1, 0.0}; }
  static DomainId tetrablock() { return {DomainTag::Tetrablock, 3, 1, 0.0}; }
  static DomainId f_domain() { return {DomainTag::FDomain, 4, 1, 0.0}; }

  bool is_matrix_domain() const {
    return tag == DomainTag::CartanI || tag == DomainTag::CartanII || tag == DomainTag::CartanIII;
  }

  /// number of coordinates of a point of the domain (rows x cols for matrix domains)
  int point_dim() const {
    switch (tag) {
      case DomainTag::UnitDisc:
      case DomainTag::Annulus: return 1;
      case DomainTag::SymBidisc: return 2;
      case DomainTag::Tetrablock: return 3;
      case DomainTag::FDomain: return 4;
      case DomainTag::CartanI: return m * n;
      case DomainTag::CartanII:
      case DomainTag::CartanIII: return n * n;
      default: return n;
    }
  }

private:
  static void check_dim(int n, int lo, const char* who) {
    if (n < lo)
      throw std::invalid_argument(std::string(who) + ": dimension must be >= " + std::to_string(lo));
  }
};

inline const char* domain_tag_name(DomainTag t) {
  switch (t) {
    case DomainTag::UnitDisc: return "UnitDisc";
    case DomainTag::Polydisc: return "Polydisc";
    case DomainTag::EuclideanBall: return "EuclideanBall";
    case DomainTag::Annulus: return "Annulus";
    case DomainTag::CartanI: return "CartanI";
    case DomainTag::CartanII: return "CartanII";
    case DomainTag::CartanIII: return "CartanIII";
    case DomainTag::LieBall: return "LieBall";
    case DomainTag::QuotientL: return "QuotientL";
    case DomainTag::Ellipsoid: return "Ellipsoid";
    case DomainTag::SymBidisc: return "SymBidisc";
    case DomainTag::Tetrablock: return "Tetrablock";
    case DomainTag::FDomain: return "FDomain";
  }
  return "?";
}

enum class Membership { Inside, Boundary, Outside };

/// Signed-margin classification. margin > 0 strictly inside; the verdict is
/// Boundary exactly when |margin| <= tol.
struct MembershipVerdict {
  Membership state = Membership::Outside;
  double margin = 0.0;
  double tol = 1e-12;
};

inline MembershipVerdict classify(double margin, double tol) {
  MembershipVerdict v;
  v.margin = margin;
  v.tol = tol;
  v.state = (std::abs(margin) <= tol) ? Membership::Boundary
                                      : (margin > 0.0 ? Membership::Inside : Membership::Outside);
  return v;
}

inline constexpr double kMembershipTol = 1e-12;

// ---------------------------------------------------------------------------
// margins

/// min(1 - ||z||^2, 1 + |z.z|^2 - 2||z||^2), the two defining slacks of the
/// type-IV ball
inline double lie_ball_margin(const cvec& z) {
  double n2 = norm_sq(z);
  double b2 = std::norm(bullet(z));  // |z.z|^2
  return std::min(1.0 - n2, 1.0 + b2 - 2.0 * n2);
}

/// principal-branch preimage of w under (z1,...,zn) -> (z1^2, z2,...,zn)
inline cvec lambda_preimage(const cvec& w) {
  cvec z = w;
  z[0] = std::sqrt(w[0]);
  return z;
}

inline double quotient_l_margin(const cvec& w) {
  return lie_ball_margin(lambda_preimage(w));
}

inline double sym_bidisc_margin(const cvec& s) {
  auto [l1, l2] = quadratic_roots(s[0], s[1]);
  return 1.0 - std::max(std::abs(l1), std::abs(l2));
}

/// lift (w1,w2,w3) to the symmetric matrix [[w1,a],[a,w2]], a^2 = w1 w2 - w3;
/// the two branches are unitarily equivalent so the margin is branch-free
inline double tetrablock_margin(const cvec& w) {
  cplx a = std::sqrt(w[0] * w[1] - w[2]);
  CMat mat(2, 2);
  mat << w[0], a, a, w[1];
  return 1.0 - sv_max_2x2(mat);
}

/// lift (w1,w2,w3,w4) to [[w1,t1],[t2,w2]] with t1 t2 = w1 w2 - w3 and
/// t1 + t2 = w4; swapping t1, t2 transposes the lift, so the margin is
/// branch-free
inline double f_domain_margin(const cvec& w) {
  auto [t1, t2] = quadratic_roots(w[3], w[0] * w[1] - w[2]);
  CMat mat(2, 2);
  mat << w[0], t1, t2, w[1];
  return 1.0 - sv_max_2x2(mat);
}

inline double ellipsoid_margin(const cvec& z) {
  double s = std::abs(z[0]);
  for (std::size_t j = 1; j < z.size(); ++j) s += std::norm(z[j]);
  return 1.0 - s;
}

inline double domain_margin(const DomainId& d, const cvec& p) {
  require_finite(p, "contains");
  require_dim(p, d.point_dim(), "contains");
  switch (d.tag) {
    case DomainTag::UnitDisc: return 1.0 - std::abs(p[0]);
    case DomainTag::Polydisc: {
      double m = 1.0;
      for (cplx c : p) m = std::min(m, 1.0 - std::abs(c));
      return m;
    }
    case DomainTag::EuclideanBall: return 1.0 - norm_sq(p);
    case DomainTag::Annulus: {
      double a = std::abs(p[0]);
      return std::min(a - d.r, 1.0 / d.r - a);
    }
    case DomainTag::LieBall: return lie_ball_margin(p);
    case DomainTag::QuotientL: return quotient_l_margin(p);
    case DomainTag::Ellipsoid: return ellipsoid_margin(p);
    case DomainTag::SymBidisc: return sym_bidisc_margin(p);
    case DomainTag::Tetrablock: return tetrablock_margin(p);
    case DomainTag::FDomain: return f_domain_margin(p);
    case DomainTag::CartanI:
    case DomainTag::CartanII:
    case DomainTag::CartanIII:
      throw std::invalid_argument("contains: matrix domain requires a matrix point");
  }
  throw std::logic_error("unreachable");
}

inline void check_matrix_shape(const DomainId& d, const CMat& a) {
  if (!is_finite(a)) throw std::invalid_argument("contains: non-finite matrix entry");
  double scale = std::max(1.0, a.norm());
  switch (d.tag) {
    case DomainTag::CartanI:
      if (a.rows() != d.m || a.cols() != d.n)
        throw std::invalid_argument("CartanI: wrong matrix shape");
      break;
    case DomainTag::CartanII:
      if (a.rows() != d.n || a.cols() != d.n || (a + a.transpose()).norm() > 1e-10 * scale)
        throw std::invalid_argument("CartanII: matrix must be square skew-symmetric");
      break;
    case DomainTag::CartanIII:
      if (a.rows() != d.n || a.cols() != d.n || (a - a.transpose()).norm() > 1e-10 * scale)
        throw std::invalid_argument("CartanIII: matrix must be square symmetric");
      break;
    default: throw std::invalid_argument("contains: vector domain requires a vector point");
  }
}

inline double domain_margin(const DomainId& d, const CMat& a) {
  check_matrix_shape(d, a);
  return 1.0 - sv_max(a);
}

inline MembershipVerdict contains(const DomainId& d, const cvec& p, double tol = kMembershipTol) {
  return classify(domain_margin(d, p), tol);
}

inline MembershipVerdict contains(const DomainId& d, const CMat& a, double tol = kMembershipTol) {
  return classify(domain_margin(d, a), tol);
}

/// The two trace/determinant inequalities characterizing I - AA* > 0 for a
/// 2x2 matrix:  2 > sum |a_ij|^2  and  1 + |det A|^2 > sum |a_ij|^2.
inline MembershipVerdict cartan1_contains_2x2(const CMat& a, double tol = kMembershipTol) {
  if (a.rows() != 2 || a.cols() != 2)
    throw std::invalid_argument("cartan1_contains_2x2: matrix must be 2x2");
  if (!is_finite(a)) throw std::invalid_argument("cartan1_contains_2x2: non-finite entry");
  double s = a.squaredNorm();
  double slack1 = 2.0 - s;
  double slack2 = 1.0 + std::norm(a.determinant()) - s;
  return classify(std::min(slack1, slack2), tol);
}

// ---------------------------------------------------------------------------
// quasi-balanced structure

/// weights of the lambda-action the domain is invariant under
inline std::vector<int> balanced_weights(const DomainId& d) {
  int dim = d.point_dim();
  switch (d.tag) {
    case DomainTag::QuotientL: {
      std::vector<int> k(static_cast<std::size_t>(dim), 1);
      k[0] = 2;
      return k;
    }
    case DomainTag::UnitDisc:
    case DomainTag::Polydisc:
    case DomainTag::EuclideanBall:
    case DomainTag::LieBall:
    case DomainTag::Ellipsoid:
      return std::vector<int>(static_cast<std::size_t>(dim), 1);
    default:
      throw std::invalid_argument(std::string("minkowski: ") + domain_tag_name(d.tag) +
                                  " is not (quasi-)balanced");
  }
}

inline cvec quasi_scale(const cvec& w, const std::vector<int>& k, cplx lambda) {
  cvec r(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    cplx f = 1.0;
    for (int e = 0; e < k[j]; ++e) f *= lambda;
    r[j] = f * w[j];
  }
  return r;
}

/// Minkowski gauge M(w) = inf{ t>0 : (w_1/t^{k_1}, ..., w_n/t^{k_n}) in d },
/// bisected to absolute accuracy tol. The returned value lies in
/// (M, M + tol], so rescaling by it lands inside the open domain.
inline double minkowski(const DomainId& d, const cvec& w, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("minkowski: tol must be positive");
  require_finite(w, "minkowski");
  require_dim(w, d.point_dim(), "minkowski");
  std::vector<int> k = balanced_weights(d);

  bool zero = true;
  for (cplx c : w)
    if (std::abs(c) != 0.0) zero = false;
  if (zero) return 0.0;

  auto inside = [&](double t) { return domain_margin(d, quasi_scale(w, k, 1.0 / t)) > 0.0; };

  double hi = 1.0;
  while (!inside(hi)) {
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("minkowski: no finite gauge found");
  }
  double lo = 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// sampling

/// per-coordinate modulus bounds: |p_j| <= R_j for every p in the domain
inline std::vector<double> bounding_box(const DomainId& d) {
  int dim = d.point_dim();
  std::vector<double> box(static_cast<std::size_t>(dim), 1.0);
  switch (d.tag) {
    case DomainTag::Annulus: box[0] = 1.0 / d.r; break;
    case DomainTag::SymBidisc: box[0] = 2.0; break;
    case DomainTag::FDomain: box[3] = 2.0; break;
    default: break;
  }
  return box;
}

inline CMat sample_cartan_matrix(const DomainId& d, Rng& rng) {
  for (;;) {
    CMat a(d.tag == DomainTag::CartanI ? d.m : d.n, d.n);
    switch (d.tag) {
      case DomainTag::CartanI:
        for (int i = 0; i < a.rows(); ++i)
          for (int j = 0; j < a.cols(); ++j) a(i, j) = rng.in_disc();
        break;
      case DomainTag::CartanII:
        a.setZero();
        for (int i = 0; i < a.rows(); ++i)
          for (int j = i + 1; j < a.cols(); ++j) {
            a(i, j) = rng.in_disc();
            a(j, i) = -a(i, j);
          }
        break;
      case DomainTag::CartanIII:
        for (int i = 0; i < a.rows(); ++i)
          for (int j = i; j < a.cols(); ++j) {
            a(i, j) = rng.in_disc();
            a(j, i) = a(i, j);
          }
        break;
      default: throw std::invalid_argument("sample_cartan_matrix: not a matrix domain");
    }
    if (sv_max(a) < 1.0) return a;
  }
}

/// Draw a point of the open domain. Uniform for the direct families; for the
/// quotient/image families the draw is the pushforward of a uniform draw on
/// the covering domain.
inline cvec sample_point(const DomainId& d, Rng& rng) {
  switch (d.tag) {
    case DomainTag::UnitDisc: return {rng.in_disc()};
    case DomainTag::Polydisc: return rng.in_polydisc(d.n);
    case DomainTag::EuclideanBall: return rng.in_ball(d.n);
    case DomainTag::Annulus: {
      double r2 = d.r * d.r;
      double rho = std::sqrt(r2 + rng.uniform() * (1.0 / r2 - r2));
      return {rho * rng.unit_modulus()};
    }
    case DomainTag::Ellipsoid:
      for (;;) {
        cvec z = rng.in_polydisc(d.n);
        if (ellipsoid_margin(z) > 0.0) return z;
      }
    case DomainTag::LieBall:
      for (;;) {
        cvec z = rng.in_ball(d.n);
        if (lie_ball_margin(z) > 0.0) return z;
      }
    case DomainTag::QuotientL: {
      cvec z = sample_point(DomainId::lie_ball(d.n), rng);
      z[0] = z[0] * z[0];
      return z;
    }
    case DomainTag::SymBidisc: {
      cplx l1 = rng.in_disc(), l2 = rng.in_disc();
      return {l1 + l2, l1 * l2};
    }
    case DomainTag::Tetrablock: {
      CMat a = sample_cartan_matrix(DomainId::cartan3(2), rng);
      return {a(0, 0), a(1, 1), a.determinant()};
    }
    case DomainTag::FDomain: {
      CMat a = sample_cartan_matrix(DomainId::cartan1(2, 2), rng);
      return {a(0, 0), a(1, 1), a.determinant(), a(0, 1) + a(1, 0)};
    }
    case DomainTag::CartanI:
    case DomainTag::CartanII:
    case DomainTag::CartanIII:
      throw std::invalid_argument("sample_point: use sample_cartan_matrix for matrix domains");
  }
  throw std::logic_error("unreachable");
}

/// Shilov-boundary sampler for the Lie ball (points e^{i theta} x with x on
/// the real unit sphere, theta stratified over [0, pi)) and its quotient
/// (images under z -> (z1^2, z')).
inline std::vector<cvec> shilov_sample(const DomainId& d, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("shilov_sample: count must be >= 1");
  if (d.tag != DomainTag::LieBall && d.tag != DomainTag::QuotientL)
    throw std::invalid_argument("shilov_sample: supported for LieBall and QuotientL only");
  Rng rng(seed);
  std::vector<cvec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    std::vector<double> x = rng.real_unit_sphere(d.n);
    double theta = kPi * (static_cast<double>(j) + rng.uniform()) / static_cast<double>(count);
    cplx phase{std::cos(theta), std::sin(theta)};
    cvec z(static_cast<std::size_t>(d.n));
    for (int k = 0; k < d.n; ++k) z[static_cast<std::size_t>(k)] = phase * x[static_cast<std::size_t>(k)];
    if (d.tag == DomainTag::QuotientL) z[0] = z[0] * z[0];
    out.push_back(std::move(z));
  }
  return out;
}

struct VolumeEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t hits = 0;
  std::int64_t samples = 0;
};

/// Monte-Carlo Lebesgue volume (2n real dimensions) by rejection from the
/// per-coordinate bounding box, with the binomial standard error.
inline VolumeEstimate mc_volume(const DomainId& d, std::int64_t samples, std::uint64_t seed) {
  if (samples < 10000) throw std::invalid_argument("mc_volume: samples must be >= 1e4");
  if (d.is_matrix_domain())
    throw std::invalid_argument("mc_volume: matrix domains are not supported");
  std::vector<double> box = bounding_box(d);
  double box_vol = 1.0;
  for (double R : box) box_vol *= 4.0 * R * R;
  Rng rng(seed);
  std::int64_t hits = 0;
  cvec p(box.size());
  for (std::int64_t s = 0; s < samples; ++s) {
    for (std::size_t j = 0; j < box.size(); ++j) p[j] = rng.in_square(box[j]);
    if (domain_margin(d, p) > 0.0) ++hits;
  }
  double phat = static_cast<double>(hits) / static_cast<double>(samples);
  VolumeEstimate v;
  v.estimate = box_vol * phat;
  v.stderr_ = box_vol * std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  v.hits = hits;
  v.samples = samples;
  return v;
}

}  // namespace cartanq

#endif  // CARTANQ_DOMAINS_HPP
