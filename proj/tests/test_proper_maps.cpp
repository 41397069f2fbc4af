#include <catch2/catch_amalgamated.hpp>

#include "cartanq/proper_maps.hpp"

using namespace cartanq;
using Catch::Approx;

namespace {

bool fiber_has(const Fiber& f, const cvec& p, double tol = 1e-12) {
  for (const cvec& q : f.preimages)
    if (dist2(q, p) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("evaluation formulas, worked points") {
  cvec z = {cplx{0.5}, cplx{0.2}, cplx{0.0, 0.1}};
  cvec w = eval(MapId::lambda_n(3), z);
  CHECK(w[0] == cplx{0.25});
  CHECK(w[1] == cplx{0.2});
  CHECK(w[2] == cplx{0.0, 0.1});

  cvec s = eval(MapId::bidisc_sym(cplx{1.0}), {cplx{0.3}, cplx{-0.3}});
  CHECK(std::abs(s[0]) == 0.0);
  CHECK(std::abs(s[1] - cplx{-0.09}) < 1e-16);

  Rng rng(kDefaultSeed);
  for (int t = 0; t < 200; ++t) {
    cvec p = rng.in_polydisc(2);
    cvec img = eval(MapId::neil_map(NeilSource::Bidisc), p);
    // (z1^2)(z2^2) = (z1 z2)^2 up to reassociation rounding
    CHECK(std::abs(neil_variety_residual(img)) < 1e-15);
  }

  CHECK_THROWS_AS(eval(MapId::joukowski(0.5, cplx{1.0}), cvec{cplx{0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval(MapId::lambda_n(3), cvec{cplx{0.1}}), std::invalid_argument);
  cvec far = {cplx{2.0}, cplx{0.0}, cplx{0.0}};
  CHECK_THROWS_AS(eval(MapId::lambda_n(3), far, /*check_source=*/true), outside_domain_error);
  CHECK_NOTHROW(eval(MapId::lambda_n(3), z, /*check_source=*/true));
}

TEST_CASE("jacobian determinants, worked points") {
  cvec on_locus = {cplx{0.0}, cplx{0.3}, cplx{0.4}};
  CHECK(std::abs(jacobian_det(MapId::lambda_n(3), on_locus)) == 0.0);

  CHECK(jacobian_det(MapId::bidisc_sym(cplx{1.0}), {cplx{0.3}, cplx{0.3}}) == cplx{0.0});

  CHECK(jacobian_det(MapId::disc_square(), {cplx{0.4}}) == cplx{0.8});

  CHECK_THROWS_AS(jacobian_det(MapId::neil_map(NeilSource::Bidisc), cvec{cplx{0.1}, cplx{0.2}}),
                  std::invalid_argument);
}

TEST_CASE("fibers, worked points") {
  Fiber f = fiber(MapId::lambda_n(3), {cplx{0.25}, cplx{0.2}, cplx{0.0, 0.1}});
  REQUIRE(f.preimages.size() == 2);
  CHECK_FALSE(f.is_critical);
  CHECK(fiber_has(f, {cplx{0.5}, cplx{0.2}, cplx{0.0, 0.1}}));
  CHECK(fiber_has(f, {cplx{-0.5}, cplx{0.2}, cplx{0.0, 0.1}}));

  Fiber g = fiber(MapId::bidisc_sym(cplx{1.0}), {cplx{0.0}, cplx{-0.09}});
  REQUIRE(g.preimages.size() == 2);
  CHECK(fiber_has(g, {cplx{0.3}, cplx{-0.3}}));
  CHECK(fiber_has(g, {cplx{-0.3}, cplx{0.3}}));

  Fiber c = fiber(MapId::lambda_n(3), {cplx{0.0}, cplx{0.2}, cplx{0.0}});
  CHECK(c.is_critical);
  REQUIRE(c.preimages.size() == 1);
  CHECK(dist2(c.preimages[0], {cplx{0.0}, cplx{0.2}, cplx{0.0}}) == 0.0);
}

TEST_CASE("fiber rejects targets outside the image") {
  CHECK_THROWS_AS(fiber(MapId::lambda_n(2), cvec{cplx{4.0}, cplx{0.0}}), outside_domain_error);
  CHECK_THROWS_AS(fiber(MapId::bidisc_sym(cplx{1.0}), cvec{cplx{3.0}, cplx{2.5}}),
                  outside_domain_error);
  // off the Neil variety
  CHECK_THROWS_AS(fiber(MapId::neil_map(NeilSource::Bidisc), cvec{cplx{0.1}, cplx{0.1}, cplx{0.09}}),
                  outside_domain_error);
  try {
    fiber(MapId::lambda_n(2), cvec{cplx{4.0}, cplx{0.0}});
  } catch (const outside_domain_error& e) {
    CHECK(e.margin() < 0.0);  // diagnostic margin rides along
  }
}

TEST_CASE("deck transformations, worked points") {
  // sigma for the quotient map
  auto g = deck_transform(MapId::lambda_n(3));
  cvec z = {cplx{0.5}, cplx{0.2}, cplx{0.0}};
  CHECK(dist2(g(z), {cplx{-0.5}, cplx{0.2}, cplx{0.0}}) == 0.0);

  // deck pair {id, g}
  auto pair = deck(MapId::lambda_n(3));
  REQUIRE(pair.size() == 2);
  CHECK(dist2(pair[0](z), z) == 0.0);

  // Joukowski deck z -> omega/z
  auto gj = deck_transform(MapId::joukowski(0.5, cplx{1.0}));
  CHECK(std::abs(gj({cplx{0.5}})[0] - cplx{2.0}) < 1e-15);
}

TEST_CASE("deck involution recovered from fibers") {
  CHECK(dist2(deck_involution_from_fibers(MapId::lambda_n(3), {cplx{0.5}, cplx{0.2}, cplx{0.0}}),
              {cplx{-0.5}, cplx{0.2}, cplx{0.0}}) < 1e-12);
  // identity on the locus set
  cvec locus_pt = {cplx{0.0}, cplx{0.2}, cplx{0.0}};
  CHECK(dist2(deck_involution_from_fibers(MapId::lambda_n(3), locus_pt), locus_pt) == 0.0);
  CHECK(std::abs(deck_involution_from_fibers(MapId::disc_square(), {cplx{0.3}})[0] + 0.3) < 1e-15);
}

TEST_CASE("locus margins, worked points") {
  CHECK(locus_margin(MapId::lambda_n(3), {cplx{0.0}, cplx{0.1}, cplx{0.2}}) == 0.0);
  CHECK(locus_margin(MapId::bidisc_sym(cplx{1.0}), {cplx{0.4}, cplx{0.4}}) == 0.0);
  CHECK(locus_margin(MapId::disc_square(), {cplx{0.0}}) == 0.0);
  CHECK(locus_margin(MapId::neil_map(NeilSource::Bidisc), {cplx{0.0}, cplx{0.0}}) == 0.0);
  CHECK(locus_margin(MapId::neil_map(NeilSource::Bidisc), {cplx{0.3}, cplx{0.1}}) > 0.0);
}

TEST_CASE("multiplicity probe returns 2 across the catalog") {
  std::uint64_t seed = kDefaultSeed;
  CHECK(multiplicity_probe(MapId::lambda_n(5), 200, seed) == 2);
  CHECK(multiplicity_probe(MapId::tetrablock_phi(), 200, seed) == 2);
  CHECK(multiplicity_probe(MapId::disc_square(), 200, seed) == 2);
  CHECK_THROWS_AS(multiplicity_probe(MapId::disc_square(), 10, seed), std::invalid_argument);
}

TEST_CASE("neil variety residual, worked points") {
  CHECK(neil_variety_residual({cplx{1.0}, cplx{1.0}, cplx{1.0}}) == cplx{0.0});
  CHECK(neil_variety_residual({cplx{1.0}, cplx{1.0}, cplx{0.5}}) == cplx{0.75});
}

TEST_CASE("fiber roundtrip / deck / galois across the catalog") {
  for (const MapId& m : catalog()) {
    Rng rng(kDefaultSeed + static_cast<std::uint64_t>(m.tag));
    auto g = deck_transform(m);
    for (int s = 0; s < 500; ++s) {
      cvec p = sample_source(m, rng);
      cvec w = eval(m, p);

      // deck identities
      cvec gp = g(p);
      CHECK(dist2(g(gp), p) < 1e-12);
      CHECK(dist2(eval(m, gp), w) < 1e-12);

      Fiber f = fiber(m, w);
      // every fiber element maps back onto the target
      for (const cvec& q : f.preimages) CHECK(dist2(eval(m, q), w) < 1e-10);
      // p itself is among them
      CHECK(fiber_has(f, p, 1e-9));
      // {id, g} sweeps out the whole fiber (Galois)
      if (!f.is_critical) {
        CHECK(fiber_has(f, gp, 1e-9));
        CHECK(dist2(gp, p) > 1e-9);
      }
    }
  }
}

TEST_CASE("closed-form jacobians match finite differences") {
  for (const MapId& m : catalog()) {
    if (m.tag == MapTag::NeilMap) continue;  // differential is not square
    Rng rng(kDefaultSeed + 17 + static_cast<std::uint64_t>(m.tag));
    PointMap pm = as_point_map(m);
    for (int s = 0; s < 100; ++s) {
      cvec p = sample_source(m, rng);
      cplx closed = jacobian_det(m, p);
      cplx fd = fd_jacobian_det(pm, p, 1e-6);
      double scale = std::max({1.0, std::abs(closed), std::abs(fd)});
      CHECK(std::abs(closed - fd) / scale < 1e-5);
    }
  }
}

TEST_CASE("fixed points of the deck element exhaust the locus set") {
  for (const MapId& m : catalog()) {
    Rng rng(kDefaultSeed + 29 + static_cast<std::uint64_t>(m.tag));
    auto g = deck_transform(m);
    for (int s = 0; s < 500; ++s) {
      cvec p = sample_source(m, rng);
      bool fixed = dist2(g(p), p) < 1e-9;
      bool on_locus = locus_margin(m, p) < 1e-9;
      CHECK(fixed == on_locus);
    }
  }

  // constructed locus points: both sides flip to true together
  struct Case {
    MapId m;
    cvec p;
  };
  cplx om{0.6, 0.8};
  std::vector<Case> cases = {
      {MapId::disc_square(), {cplx{0.0}}},
      {MapId::joukowski(0.5, om), {std::sqrt(om)}},
      {MapId::bidisc_split(), {cplx{0.0}, cplx{0.3}}},
      {MapId::bidisc_sym(om), {om * cplx{0.4}, std::conj(om) * cplx{0.4}}},
      {MapId::ball_ellipsoid(3), {cplx{0.0}, cplx{0.3}, cplx{0.1}}},
      {MapId::tetrablock_phi(), {cplx{0.2}, cplx{0.3}, cplx{0.0}}},
      {MapId::f_map_phi4(), {cplx{0.2}, cplx{0.1}, cplx{0.1}, cplx{0.3}}},
      {MapId::lambda_n(4), {cplx{0.0}, cplx{0.2}, cplx{0.1}, cplx{0.1}}},
      {MapId::neil_map(NeilSource::Ball2), {cplx{0.0}, cplx{0.0}}},
  };
  for (const auto& c : cases) {
    auto g = deck_transform(c.m);
    CHECK(dist2(g(c.p), c.p) < 1e-12);
    CHECK(locus_margin(c.m, c.p) < 1e-12);
  }
}

TEST_CASE("images land in the advertised target domains") {
  struct Pair {
    MapId m;
    DomainId target;
  };
  std::vector<Pair> pairs = {
      {MapId::lambda_n(4), DomainId::quotient_l(4)},
      {MapId::bidisc_sym(cplx{0.6, 0.8}), DomainId::sym_bidisc()},
      {MapId::tetrablock_phi(), DomainId::tetrablock()},
      {MapId::f_map_phi4(), DomainId::f_domain()},
      {MapId::ball_ellipsoid(3), DomainId::ellipsoid(3)},
      {MapId::disc_square(), DomainId::unit_disc()},
      {MapId::bidisc_split(), DomainId::polydisc(2)},
  };
  for (const auto& pr : pairs) {
    Rng rng(kDefaultSeed + 43 + static_cast<std::uint64_t>(pr.m.tag));
    for (int s = 0; s < 1000; ++s)
      CHECK(domain_margin(pr.target, eval(pr.m, sample_source(pr.m, rng))) > 0.0);
  }
}

TEST_CASE("annulus squaring maps A(r,1/r) onto A(r^2,1/r^2)") {
  double r = 0.6;
  MapId m = MapId::annulus_square(r);
  DomainId target = DomainId::annulus(r * r);
  Rng rng(kDefaultSeed + 57);
  for (int s = 0; s < 2000; ++s)
    CHECK(domain_margin(target, eval(m, sample_source(m, rng))) > 0.0);
}
