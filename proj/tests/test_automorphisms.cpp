#include <catch2/catch_amalgamated.hpp>

#include "cartanq/automorphisms.hpp"

using namespace cartanq;
using Catch::Approx;

TEST_CASE("linear automorphisms of the lie ball") {
  auto id3 = make_lie_linear(cplx{1.0}, RMat::Identity(3, 3));
  cvec z = {cplx{0.5}, cplx{0.1, 0.2}, cplx{0.0}};
  CHECK(dist2(lie_linear_apply(id3, z), z) == 0.0);

  // omega = i rotates coordinates but preserves membership
  auto rot = make_lie_linear(kI, RMat::Identity(3, 3));
  cvec zi = lie_linear_apply(rot, z);
  CHECK(zi[0] == kI * z[0]);
  DomainId l3 = DomainId::lie_ball(3);
  CHECK(domain_margin(l3, zi) == Approx(domain_margin(l3, z)));

  // planar rotation by pi/4
  RMat u = RMat::Identity(3, 3);
  double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  u(0, 0) = c; u(0, 1) = -s; u(1, 0) = s; u(1, 1) = c;
  auto plane = make_lie_linear(cplx{1.0}, u);
  Rng rng(kDefaultSeed);
  for (int t = 0; t < 2000; ++t) {
    cvec p = rng.in_ball(3, 1.1);
    CHECK(domain_margin(l3, lie_linear_apply(plane, p)) == Approx(domain_margin(l3, p)).margin(1e-12));
  }
}

TEST_CASE("construction rejects invalid data") {
  CHECK_THROWS_AS(make_lie_linear(cplx{1.1}, RMat::Identity(2, 2)), std::invalid_argument);
  RMat notso(2, 2);
  notso << 1.0, 0.0, 0.0, -1.0;  // orthogonal but det -1
  CHECK_THROWS_AS(make_lie_linear(cplx{1.0}, notso), std::invalid_argument);
  RMat skew(2, 2);
  skew << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(make_lie_linear(cplx{1.0}, skew), std::invalid_argument);
}

TEST_CASE("extension fixes the first slot and commutes with the sign flip") {
  Rng rng(kDefaultSeed + 1);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.u64() % 3);
    auto a = make_lie_linear(rng.unit_modulus(), random_so(n, rng));
    auto ext = extend_linear(a);
    REQUIRE(ext.dim() == n + 1);

    // identity extends to identity
    if (trial == 0) {
      auto id_ext = extend_linear(make_lie_linear(cplx{1.0}, RMat::Identity(n, n)));
      cvec p = rng.in_ball(n + 1);
      CHECK(dist2(lie_linear_apply(id_ext, p), p) == 0.0);
    }

    for (int s = 0; s < 200; ++s) {
      cvec z = rng.in_ball(n + 1);
      // restriction to {0} x L_n reproduces (0, omega U z')
      cvec z0 = z;
      z0[0] = 0.0;
      cvec img = lie_linear_apply(ext, z0);
      CHECK(std::abs(img[0]) == 0.0);
      cvec tail(z0.begin() + 1, z0.end());
      cvec expect = lie_linear_apply(a, tail);
      cvec img_tail(img.begin() + 1, img.end());
      CHECK(dist2(img_tail, expect) < 1e-15);

      // sigma-equivariance
      cvec lhs = lie_linear_apply(ext, sigma_flip(z));
      cvec rhs = sigma_flip(lie_linear_apply(ext, z));
      CHECK(dist2(lhs, rhs) == 0.0);
    }
  }
}

TEST_CASE("quasi-homogeneous rotations of the quotient") {
  Rng rng(kDefaultSeed + 2);
  DomainId q3 = DomainId::quotient_l(3);
  cvec w = sample_point(q3, rng);
  CHECK(dist2(rho_omega(cplx{1.0}, w), w) == 0.0);
  CHECK_THROWS_AS(rho_omega(cplx{0.5}, w), std::invalid_argument);

  for (int s = 0; s < 2000; ++s) {
    cplx om = rng.unit_modulus(), om2 = rng.unit_modulus();
    cvec p = sample_point(q3, rng);

    // rho_om o rho_conj(om) = id
    CHECK(dist2(rho_omega(std::conj(om), rho_omega(om, p)), p) < 1e-15);

    // composition law
    CHECK(dist2(rho_omega(om, rho_omega(om2, p)), rho_omega(om * om2, p)) < 1e-15);

    // intertwines the quotient map: rho_om(Lambda z) = Lambda(om z)
    cvec z = sample_point(DomainId::lie_ball(3), rng);
    MapId lam = MapId::lambda_n(3);
    CHECK(dist2(rho_omega(om, eval(lam, z)), eval(lam, scaled(z, om))) < 1e-15);

    // membership preserved
    CHECK(domain_margin(q3, rho_omega(om, p)) == Approx(domain_margin(q3, p)).margin(1e-12));
  }

  // gauge equivariance at a few points (bisection both sides)
  for (int s = 0; s < 25; ++s) {
    cplx om = rng.unit_modulus();
    cvec p = rng.in_ball(3, 1.1);
    double a = minkowski(q3, rho_omega(om, p), 1e-10);
    double b = minkowski(q3, p, 1e-10);
    CHECK(a == Approx(b).margin(3e-10));
  }
}

TEST_CASE("induced quotient automorphisms") {
  int n = 4;
  DomainId qn = DomainId::quotient_l(n);
  Rng rng(kDefaultSeed + 3);

  // sigma itself induces the identity
  PointMap sig{n, n, [](const cvec& z) { return sigma_flip(z); }};
  for (int s = 0; s < 500; ++s) {
    cvec w = sample_point(qn, rng);
    auto got = induced_quotient_aut(sig, w);
    CHECK(got.well_defined);
    CHECK(got.residual < 1e-14);
    CHECK(dist2(got.image, w) < 1e-14);
  }

  // a = (z1, U z') descends to (w1, U w')
  RMat u = random_so(n - 1, rng);
  PointMap tail_rot{n, n, [u, n](const cvec& z) {
                      cvec out = z;
                      for (int i = 0; i < n - 1; ++i) {
                        cplx acc{0.0};
                        for (int j = 0; j < n - 1; ++j)
                          acc += u(i, j) * z[static_cast<std::size_t>(j + 1)];
                        out[static_cast<std::size_t>(i + 1)] = acc;
                      }
                      return out;
                    }};
  for (int s = 0; s < 500; ++s) {
    cvec w = sample_point(qn, rng);
    auto got = induced_quotient_aut(tail_rot, w);
    CHECK(got.well_defined);
    cvec expect = tail_rot.f(w);  // same linear action in quotient coordinates
    CHECK(dist2(got.image, expect) < 1e-12);
    CHECK(domain_margin(qn, got.image) > 0.0);
  }

  // scalar rotation descends to rho_omega
  cplx om = rng.unit_modulus();
  PointMap scal{n, n, [om](const cvec& z) { return scaled(z, om); }};
  for (int s = 0; s < 500; ++s) {
    cvec w = sample_point(qn, rng);
    auto got = induced_quotient_aut(scal, w);
    CHECK(got.well_defined);
    CHECK(dist2(got.image, rho_omega(om, w)) < 1e-13);
  }

  // a map that does NOT commute with sigma is flagged
  PointMap shear{n, n, [](const cvec& z) {
                   cvec out = z;
                   out[0] = z[0] + 0.1 * z[1];
                   return out;
                 }};
  cvec w = sample_point(qn, rng);
  if (std::abs(w[1]) > 0.1) {
    auto bad = induced_quotient_aut(shear, w);
    CHECK_FALSE(bad.well_defined);
  }
}

TEST_CASE("extension/restriction round trip on the quotient") {
  Rng rng(kDefaultSeed + 4);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.u64() % 4);  // quotient dimension
    auto a = make_lie_linear(rng.unit_modulus(), random_so(n - 1, rng));
    auto ext = extend_linear(a);  // acts on L_n, commutes with sigma
    PointMap ext_map = as_point_map(ext);
    DomainId qn = DomainId::quotient_l(n);

    for (int s = 0; s < 100; ++s) {
      cvec w = sample_point(qn, rng);
      auto got = induced_quotient_aut(ext_map, w);
      REQUIRE(got.well_defined);
      CHECK(got.residual < 1e-12);
      CHECK(domain_margin(qn, got.image) > 0.0);
    }

    // restriction to the locus image {0} x L_{n-1} acts as the original map
    for (int s = 0; s < 100; ++s) {
      cvec tail = sample_point(DomainId::lie_ball(n - 1), rng);
      cvec w = origin(n);
      std::copy(tail.begin(), tail.end(), w.begin() + 1);
      auto got = induced_quotient_aut(ext_map, w);
      REQUIRE(got.well_defined);
      CHECK(std::abs(got.image[0]) < 1e-15);
      cvec got_tail(got.image.begin() + 1, got.image.end());
      CHECK(dist2(got_tail, lie_linear_apply(a, tail)) < 1e-12);
    }
  }
}

TEST_CASE("block extension assembles and round-trips") {
  int k = 3;
  Rng rng(kDefaultSeed + 5);
  CMat a(k, k), b(k, 2), c(2, k), d(2, 2);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = cplx{rng.gaussian(), rng.gaussian()};
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 2; ++j) b(i, j) = cplx{rng.gaussian(), rng.gaussian()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < k; ++j) c(i, j) = cplx{rng.gaussian(), rng.gaussian()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d(i, j) = cplx{rng.gaussian(), rng.gaussian()};

  BlockExtension ext = block_extend(a, b, c, d);
  REQUIRE(ext.Atilde.rows() == k + 1);
  REQUIRE(ext.Atilde.cols() == k + 1);
  CHECK(ext.Atilde(0, 0) == cplx{1.0});
  CHECK(ext.Atilde.row(0).tail(k).norm() == 0.0);
  CHECK(ext.Atilde.col(0).tail(k).norm() == 0.0);
  CHECK((ext.Atilde.block(1, 1, k, k) - a).norm() == 0.0);
  CHECK(ext.Btilde.row(0).norm() == 0.0);
  CHECK((ext.Btilde.block(1, 0, k, 2) - b).norm() == 0.0);
  CHECK(ext.Ctilde.col(0).norm() == 0.0);
  CHECK((ext.Ctilde.block(0, 1, 2, k) - c).norm() == 0.0);
  CHECK((ext.Dtilde - d).norm() == 0.0);

  // identity blocks extend to identity blocks
  BlockExtension idext = block_extend(CMat::Identity(k, k), CMat::Zero(k, 2), CMat::Zero(2, k),
                                      CMat::Identity(2, 2));
  CHECK((idext.Atilde - CMat::Identity(k + 1, k + 1)).norm() == 0.0);
  CHECK(idext.Btilde.norm() == 0.0);

  CHECK_THROWS_AS(block_extend(a, b, c, CMat::Identity(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(block_extend(a, CMat::Zero(k, 3), c, d), std::invalid_argument);
}

TEST_CASE("sampled fixed points") {
  // sigma on the lie ball: fixed points fill {z1 = 0}
  int n = 3;
  PointMap sig{n, n, [](const cvec& z) { return sigma_flip(z); }};
  auto pts = fix_points_sample(sig, DomainId::lie_ball(n), 200, kDefaultSeed, 1e-8);
  CHECK(!pts.empty());
  for (const cvec& p : pts) CHECK(std::abs(p[0]) < 1e-8);

  // -id on the annulus has no fixed point
  PointMap neg{1, 1, [](const cvec& z) { return cvec{-z[0]}; }};
  auto none = fix_points_sample(neg, DomainId::annulus(0.5), 400, kDefaultSeed, 1e-8);
  CHECK(none.empty());

  // the Joukowski deck z -> 1/z pins the two square roots of 1
  PointMap inv = deck_transform(MapId::joukowski(0.5, cplx{1.0}));
  auto two = fix_points_sample(inv, DomainId::annulus(0.5), 400, kDefaultSeed, 1e-8);
  REQUIRE(two.size() == 2);
  for (const cvec& p : two) CHECK(std::abs(std::abs(p[0] - cplx{1.0}) * std::abs(p[0] + cplx{1.0})) < 1e-7);

  // self-map precondition is probed on samples
  PointMap escape{1, 1, [](const cvec& z) { return cvec{z[0] + cplx{5.0}}; }};
  CHECK_THROWS_AS(fix_points_sample(escape, DomainId::unit_disc(), 50, kDefaultSeed, 1e-8),
                  std::invalid_argument);
}
