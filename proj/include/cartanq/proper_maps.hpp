#ifndef CARTANQ_PROPER_MAPS_HPP
#define CARTANQ_PROPER_MAPS_HPP

#include <string>
#include <vector>

#include "cartanq/domains.hpp"

namespace cartanq {

enum class MapTag {
  DiscSquare,     // disc -> disc, z^2
  AnnulusSquare,  // A(r,1/r) -> A(r^2,1/r^2), z^2
  Joukowski,      // A(r,1/r) -> ellipse, z + omega/z
  BidiscSplit,    // bidisc -> bidisc, (z1^2, z2)
  BidiscSym,      // bidisc -> symmetrized bidisc, (conj(w) z1 + w z2, z1 z2)
  BallEllipsoid,  // ball -> ellipsoid, (z1^2, z')
  TetrablockPhi,  // symmetric 2x2 ball -> tetrablock
  FMapPhi4,       // 2x2 matrix ball -> F domain
  LambdaN,        // Lie ball -> quotient, (z1^2, z')
  NeilMap,        // (z1^2, z2^2, z1 z2) onto the Neil variety
};

enum class NeilSource { Bidisc, Ball2 };

struct MapId {
  MapTag tag = MapTag::DiscSquare;
  int n = 2;                       // dimension for LambdaN / BallEllipsoid
  cplx omega{1.0, 0.0};            // unimodular parameter
  double r = 0.5;                  // annulus parameter
  NeilSource neil_source = NeilSource::Bidisc;

  static MapId disc_square() { return {MapTag::DiscSquare}; }
  static MapId annulus_square(double r) { return with_r({MapTag::AnnulusSquare}, r); }
  static MapId joukowski(double r, cplx omega) {
    return with_omega(with_r({MapTag::Joukowski}, r), omega);
  }
  static MapId bidisc_split() { return {MapTag::BidiscSplit}; }
  static MapId bidisc_sym(cplx omega) { return with_omega({MapTag::BidiscSym}, omega); }
  static MapId ball_ellipsoid(int n) { return with_n({MapTag::BallEllipsoid}, n); }
  static MapId tetrablock_phi() { return {MapTag::TetrablockPhi}; }
  static MapId f_map_phi4() { return {MapTag::FMapPhi4}; }
  static MapId lambda_n(int n) { return with_n({MapTag::LambdaN}, n); }
  static MapId neil_map(NeilSource src) {
    MapId m{MapTag::NeilMap};
    m.neil_source = src;
    return m;
  }

private:
  static MapId with_r(MapId m, double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("MapId: r must lie in (0,1)");
    m.r = r;
    return m;
  }
  static MapId with_omega(MapId m, cplx omega) {
    if (std::abs(std::abs(omega) - 1.0) > 1e-12)
      throw std::invalid_argument("MapId: omega must be unimodular");
    m.omega = omega;
    return m;
  }
  static MapId with_n(MapId m, int n) {
    if (n < 2) throw std::invalid_argument("MapId: n must be >= 2");
    m.n = n;
    return m;
  }
};

inline const char* map_tag_name(MapTag t) {
  switch (t) {
    case MapTag::DiscSquare: return "DiscSquare";
    case MapTag::AnnulusSquare: return "AnnulusSquare";
    case MapTag::Joukowski: return "Joukowski";
    case MapTag::BidiscSplit: return "BidiscSplit";
    case MapTag::BidiscSym: return "BidiscSym";
    case MapTag::BallEllipsoid: return "BallEllipsoid";
    case MapTag::TetrablockPhi: return "TetrablockPhi";
    case MapTag::FMapPhi4: return "FMapPhi4";
    case MapTag::LambdaN: return "LambdaN";
    case MapTag::NeilMap: return "NeilMap";
  }
  return "?";
}

/// preimage set of a single target; one element exactly at critical values
struct Fiber {
  std::vector<cvec> preimages;
  bool is_critical = false;
};

/// preimages closer than this collapse to a critical singleton
inline constexpr double kFiberMergeTol = 1e-9;

inline int source_dim(const MapId& m) {
  switch (m.tag) {
    case MapTag::DiscSquare:
    case MapTag::AnnulusSquare:
    case MapTag::Joukowski: return 1;
    case MapTag::BidiscSplit:
    case MapTag::BidiscSym:
    case MapTag::NeilMap: return 2;
    case MapTag::TetrablockPhi: return 3;  // (a11, a22, a)
    case MapTag::FMapPhi4: return 4;       // (a11, a12, a21, a22)
    case MapTag::BallEllipsoid:
    case MapTag::LambdaN: return m.n;
  }
  return 0;
}

inline int target_dim(const MapId& m) {
  return m.tag == MapTag::NeilMap ? 3 : source_dim(m);
}

inline CMat tetrablock_source_matrix(const cvec& p) {
  CMat a(2, 2);
  a << p[0], p[2], p[2], p[1];
  return a;
}

inline CMat fmap_source_matrix(const cvec& p) {
  CMat a(2, 2);
  a << p[0], p[1], p[2], p[3];
  return a;
}

/// signed membership margin of a point in the map's source domain
inline double source_margin(const MapId& m, const cvec& p) {
  require_dim(p, source_dim(m), "source_margin");
  switch (m.tag) {
    case MapTag::DiscSquare: return domain_margin(DomainId::unit_disc(), p);
    case MapTag::AnnulusSquare:
    case MapTag::Joukowski: return domain_margin(DomainId::annulus(m.r), p);
    case MapTag::BidiscSplit:
    case MapTag::BidiscSym: return domain_margin(DomainId::polydisc(2), p);
    case MapTag::BallEllipsoid: return domain_margin(DomainId::ball(m.n), p);
    case MapTag::TetrablockPhi: return 1.0 - sv_max_2x2(tetrablock_source_matrix(p));
    case MapTag::FMapPhi4: return 1.0 - sv_max_2x2(fmap_source_matrix(p));
    case MapTag::LambdaN: return domain_margin(DomainId::lie_ball(m.n), p);
    case MapTag::NeilMap:
      return m.neil_source == NeilSource::Bidisc ? domain_margin(DomainId::polydisc(2), p)
                                                 : domain_margin(DomainId::ball(2), p);
  }
  throw std::logic_error("unreachable");
}

inline cvec sample_source(const MapId& m, Rng& rng) {
  switch (m.tag) {
    case MapTag::DiscSquare: return {rng.in_disc()};
    case MapTag::AnnulusSquare:
    case MapTag::Joukowski: return sample_point(DomainId::annulus(m.r), rng);
    case MapTag::BidiscSplit:
    case MapTag::BidiscSym: return rng.in_polydisc(2);
    case MapTag::BallEllipsoid: return rng.in_ball(m.n);
    case MapTag::TetrablockPhi: {
      CMat a = sample_cartan_matrix(DomainId::cartan3(2), rng);
      return {a(0, 0), a(1, 1), a(0, 1)};
    }
    case MapTag::FMapPhi4: {
      CMat a = sample_cartan_matrix(DomainId::cartan1(2, 2), rng);
      return to_flat(a);
    }
    case MapTag::LambdaN: return sample_point(DomainId::lie_ball(m.n), rng);
    case MapTag::NeilMap:
      return m.neil_source == NeilSource::Bidisc ? rng.in_polydisc(2) : rng.in_ball(2);
  }
  throw std::logic_error("unreachable");
}

inline cvec eval(const MapId& m, const cvec& p, bool check_source = false) {
  require_finite(p, "eval");
  require_dim(p, source_dim(m), "eval");
  if (check_source) {
    double mg = source_margin(m, p);
    if (mg <= 0.0) throw outside_domain_error("eval: point outside the source domain", mg);
  }
  switch (m.tag) {
    case MapTag::DiscSquare:
    case MapTag::AnnulusSquare: return {p[0] * p[0]};
    case MapTag::Joukowski:
      if (std::abs(p[0]) == 0.0) throw std::invalid_argument("eval: pole of z + omega/z at 0");
      return {p[0] + m.omega / p[0]};
    case MapTag::BidiscSplit: return {p[0] * p[0], p[1]};
    case MapTag::BidiscSym:
      return {std::conj(m.omega) * p[0] + m.omega * p[1], p[0] * p[1]};
    case MapTag::BallEllipsoid:
    case MapTag::LambdaN: {
      cvec w = p;
      w[0] = p[0] * p[0];
      return w;
    }
    case MapTag::TetrablockPhi: return {p[0], p[1], p[0] * p[1] - p[2] * p[2]};
    case MapTag::FMapPhi4: return {p[0], p[3], p[0] * p[3] - p[1] * p[2], p[1] + p[2]};
    case MapTag::NeilMap: return {p[0] * p[0], p[1] * p[1], p[0] * p[1]};
  }
  throw std::logic_error("unreachable");
}

inline PointMap as_point_map(const MapId& m) {
  return PointMap{source_dim(m), target_dim(m), [m](const cvec& z) { return eval(m, z); }};
}

/// w1 w2 - w3^2; vanishes exactly on the generalized Neil parabola
inline cplx neil_variety_residual(const cvec& w) {
  require_dim(w, 3, "neil_variety_residual");
  return w[0] * w[1] - w[2] * w[2];
}

/// Closed-form determinant of the complex Jacobian, in the source coordinate
/// order fixed by `source_dim`.
inline cplx jacobian_det(const MapId& m, const cvec& p) {
  require_finite(p, "jacobian_det");
  require_dim(p, source_dim(m), "jacobian_det");
  switch (m.tag) {
    case MapTag::DiscSquare:
    case MapTag::AnnulusSquare: return 2.0 * p[0];
    case MapTag::Joukowski:
      if (std::abs(p[0]) == 0.0) throw std::invalid_argument("jacobian_det: pole at 0");
      return 1.0 - m.omega / (p[0] * p[0]);
    case MapTag::BidiscSplit: return 2.0 * p[0];
    case MapTag::BidiscSym: return std::conj(m.omega) * p[0] - m.omega * p[1];
    case MapTag::BallEllipsoid:
    case MapTag::LambdaN: return 2.0 * p[0];
    case MapTag::TetrablockPhi: return -2.0 * p[2];
    case MapTag::FMapPhi4: return p[1] - p[2];
    case MapTag::NeilMap:
      throw std::invalid_argument("jacobian_det: the 3x2 differential has no determinant");
  }
  throw std::logic_error("unreachable");
}

/// |det'| for square maps; for the Neil map, the smallest singular value of
/// the 3x2 differential (both vanish exactly on the locus set)
inline double locus_margin(const MapId& m, const cvec& p) {
  if (m.tag == MapTag::NeilMap) {
    CMat j(3, 2);
    j << 2.0 * p[0], 0.0, 0.0, 2.0 * p[1], p[1], p[0];
    return sv_min(j);
  }
  return std::abs(jacobian_det(m, p));
}

/// non-trivial deck transformation g (with pi o g = pi and g o g = id)
inline PointMap deck_transform(const MapId& m) {
  int d = source_dim(m);
  switch (m.tag) {
    case MapTag::DiscSquare:
    case MapTag::AnnulusSquare:
      return PointMap{1, 1, [](const cvec& z) { return cvec{-z[0]}; }};
    case MapTag::Joukowski:
      return PointMap{1, 1, [om = m.omega](const cvec& z) {
                        if (std::abs(z[0]) == 0.0)
                          throw std::invalid_argument("deck: pole at 0");
                        return cvec{om / z[0]};
                      }};
    case MapTag::BidiscSplit:
      return PointMap{2, 2, [](const cvec& z) { return cvec{-z[0], z[1]}; }};
    case MapTag::BidiscSym:
      // omega^2 z2, conj(omega)^2 z1 -- the unique involution exchanging the
      // two fiber points of (conj(omega) z1 + omega z2, z1 z2)
      return PointMap{2, 2, [om = m.omega](const cvec& z) {
                        return cvec{om * om * z[1], std::conj(om) * std::conj(om) * z[0]};
                      }};
    case MapTag::BallEllipsoid:
    case MapTag::LambdaN:
      return PointMap{d, d, [](const cvec& z) {
                        cvec w = z;
                        w[0] = -z[0];
                        return w;
                      }};
    case MapTag::TetrablockPhi:
      return PointMap{3, 3, [](const cvec& z) { return cvec{z[0], z[1], -z[2]}; }};
    case MapTag::FMapPhi4:
      return PointMap{4, 4, [](const cvec& z) { return cvec{z[0], z[2], z[1], z[3]}; }};
    case MapTag::NeilMap:
      return PointMap{2, 2, [](const cvec& z) { return cvec{-z[0], -z[1]}; }};
  }
  throw std::logic_error("unreachable");
}

/// {id, g}
inline std::vector<PointMap> deck(const MapId& m) {
  return {identity_map(source_dim(m)), deck_transform(m)};
}

namespace detail {

inline Fiber make_fiber(cvec a, cvec b) {
  Fiber f;
  if (dist2(a, b) < kFiberMergeTol) {
    f.preimages = {std::move(a)};
    f.is_critical = true;
  } else {
    f.preimages = {std::move(a), std::move(b)};
  }
  return f;
}

}  // namespace detail

/// All preimages of `target`; rejects targets outside the image domain with
/// the offending membership margin.
inline Fiber fiber(const MapId& m, const cvec& target) {
  require_finite(target, "fiber");
  require_dim(target, target_dim(m), "fiber");

  Fiber f;
  switch (m.tag) {
    case MapTag::DiscSquare:
    case MapTag::AnnulusSquare: {
      cplx s = std::sqrt(target[0]);
      f = detail::make_fiber({s}, {-s});
      break;
    }
    case MapTag::Joukowski: {
      auto [z1, z2] = quadratic_roots(target[0], m.omega);
      f = detail::make_fiber({z1}, {z2});
      break;
    }
    case MapTag::BidiscSplit: {
      cplx s = std::sqrt(target[0]);
      f = detail::make_fiber({s, target[1]}, {-s, target[1]});
      break;
    }
    case MapTag::BidiscSym: {
      auto [u, v] = quadratic_roots(target[0], target[1]);
      cplx om = m.omega;
      f = detail::make_fiber({om * u, std::conj(om) * v}, {om * v, std::conj(om) * u});
      break;
    }
    case MapTag::BallEllipsoid:
    case MapTag::LambdaN: {
      cvec a = target, b = target;
      cplx s = std::sqrt(target[0]);
      a[0] = s;
      b[0] = -s;
      f = detail::make_fiber(std::move(a), std::move(b));
      break;
    }
    case MapTag::TetrablockPhi: {
      cplx a = std::sqrt(target[0] * target[1] - target[2]);
      f = detail::make_fiber({target[0], target[1], a}, {target[0], target[1], -a});
      break;
    }
    case MapTag::FMapPhi4: {
      auto [t1, t2] = quadratic_roots(target[3], target[0] * target[1] - target[2]);
      f = detail::make_fiber({target[0], t1, t2, target[1]}, {target[0], t2, t1, target[1]});
      break;
    }
    case MapTag::NeilMap: {
      double scale = std::max({1.0, std::abs(target[0]), std::abs(target[1])});
      double res = std::abs(neil_variety_residual(target));
      if (res > 1e-9 * scale)
        throw outside_domain_error("fiber: target off the Neil variety", -res);
      cvec z(2);
      if (std::abs(target[0]) >= std::abs(target[1])) {
        z[0] = std::sqrt(target[0]);
        z[1] = (std::abs(z[0]) > 0.0) ? target[2] / z[0] : cplx{0.0};
      } else {
        z[1] = std::sqrt(target[1]);
        z[0] = (std::abs(z[1]) > 0.0) ? target[2] / z[1] : cplx{0.0};
      }
      f = detail::make_fiber(z, {-z[0], -z[1]});
      break;
    }
  }

  double worst = 1.0;
  for (const cvec& p : f.preimages) worst = std::min(worst, source_margin(m, p));
  if (worst <= 0.0)
    throw outside_domain_error("fiber: target outside the image domain", worst);
  return f;
}

/// the other fiber element over eval(m, p), or p itself on the locus set
inline cvec deck_involution_from_fibers(const MapId& m, const cvec& p) {
  Fiber f = fiber(m, eval(m, p));
  if (f.is_critical) return p;
  return dist2(f.preimages[0], p) >= dist2(f.preimages[1], p) ? f.preimages[0] : f.preimages[1];
}

/// Observed fiber cardinality over randomly sampled regular targets. Throws
/// if the cardinality is not constant across the sample.
inline int multiplicity_probe(const MapId& m, int samples, std::uint64_t seed) {
  if (samples < 100) throw std::invalid_argument("multiplicity_probe: samples must be >= 100");
  Rng rng(seed);
  int card = 0;
  int seen = 0;
  while (seen < samples) {
    cvec p = sample_source(m, rng);
    if (locus_margin(m, p) < 1e-6) continue;  // keep to regular targets
    Fiber f = fiber(m, eval(m, p));
    int c = static_cast<int>(f.preimages.size());
    if (seen == 0) {
      card = c;
    } else if (c != card) {
      throw std::runtime_error("multiplicity_probe: fiber cardinality is not constant");
    }
    ++seen;
  }
  return card;
}

/// the full catalog with representative parameters, for sweep-style tests
inline std::vector<MapId> catalog(double r = 0.5, cplx omega = cplx{0.6, 0.8}, int n = 4) {
  return {
      MapId::disc_square(),
      MapId::annulus_square(r),
      MapId::joukowski(r, omega),
      MapId::bidisc_split(),
      MapId::bidisc_sym(omega),
      MapId::ball_ellipsoid(n),
      MapId::tetrablock_phi(),
      MapId::f_map_phi4(),
      MapId::lambda_n(n),
      MapId::neil_map(NeilSource::Bidisc),
      MapId::neil_map(NeilSource::Ball2),
  };
}

}  // namespace cartanq

#endif  // CARTANQ_PROPER_MAPS_HPP
