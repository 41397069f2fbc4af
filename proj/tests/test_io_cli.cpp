#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cartanq/cli.hpp"
#include "cartanq/io.hpp"

using namespace cartanq;

TEST_CASE("descriptor serialization round trips") {
  Rng rng(kDefaultSeed);
  std::vector<DomainId> domains = {
      DomainId::unit_disc(),    DomainId::polydisc(3),  DomainId::ball(4),
      DomainId::annulus(0.37),  DomainId::cartan1(2, 3), DomainId::cartan2(4),
      DomainId::cartan3(2),     DomainId::lie_ball(6),  DomainId::quotient_l(5),
      DomainId::ellipsoid(3),   DomainId::sym_bidisc(), DomainId::tetrablock(),
      DomainId::f_domain()};
  for (const DomainId& d : domains) {
    DomainId back = domain_from_json(to_json(d));
    CHECK(back.tag == d.tag);
    CHECK(back.point_dim() == d.point_dim());
    if (d.tag == DomainTag::Annulus) CHECK(back.r == d.r);
  }

  for (const MapId& m : catalog(0.4, cplx{0.28, 0.96}, 5)) {
    MapId back = map_from_json(to_json(m));
    CHECK(back.tag == m.tag);
    CHECK(source_dim(back) == source_dim(m));
    if (m.tag == MapTag::Joukowski || m.tag == MapTag::BidiscSym)
      CHECK(std::abs(back.omega - m.omega) == 0.0);
    if (m.tag == MapTag::NeilMap) CHECK(back.neil_source == m.neil_source);
  }

  for (BihTag t : {BihTag::L2toBidisc, BihTag::LL4toF}) {
    BihId b{t, true};
    BihId back = bih_from_json(to_json(b));
    CHECK(back.tag == b.tag);
    CHECK(back.inverse == b.inverse);
  }

  // points and matrices keep their exact bytes through JSON
  for (int trial = 0; trial < 50; ++trial) {
    cvec p = rng.in_polydisc(4);
    cvec back = cvec_from_json(to_json(p));
    REQUIRE(back.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(back[i] == p[i]);
  }
  CMat m(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = cplx{rng.gaussian(), rng.gaussian()};
  CHECK((cmat_from_json(to_json(m)) - m).norm() == 0.0);
}

TEST_CASE("serialization rejects malformed payloads") {
  CHECK_THROWS_AS(domain_from_json(json::parse("{\"params\":{}}")), std::invalid_argument);
  CHECK_THROWS_AS(domain_from_json(json::parse("{\"tag\":\"Nonsense\"}")), std::invalid_argument);
  CHECK_THROWS_AS(map_from_json(json::parse("{\"tag\":\"Nope\"}")), std::invalid_argument);
  CHECK_THROWS_AS(cplx_from_json(json::parse("[1]")), std::invalid_argument);
  CHECK_THROWS_AS(cvec_from_json(json::parse("3")), std::invalid_argument);
}

TEST_CASE("cli member classifies a worked point") {
  auto res = run_cli({"member", "--domain", "LieBall", "--n", "2", "--point",
                      "[[0.7,0],[0.5,0]]"});
  REQUIRE(res.exit_code == 0);
  json out = json::parse(res.out);
  CHECK(out["verdict"]["state"] == "Inside");
  CHECK(std::abs(out["verdict"]["margin"].get<double>() - 0.0676) < 1e-12);
}

TEST_CASE("cli kernel against the base point returns n") {
  auto res = run_cli({"kernel", "--n", "4", "--p", "0", "--q", "random", "--seed", "7"});
  REQUIRE(res.exit_code == 0);
  json out = json::parse(res.out);
  CHECK(out["value"][0].get<double>() == 4.0);
  CHECK(out["value"][1].get<double>() == 0.0);
}

TEST_CASE("cli lqk-zero reports the witness; exit code tracks the tolerance") {
  auto res = run_cli({"lqk-zero", "--n", "3", "--r", "0.8"});
  REQUIRE(res.exit_code == 0);
  json out = json::parse(res.out);
  CHECK(out["pass"].get<bool>());
  CHECK(out["rel"].get<double>() < 1e-9);

  // an absurd tolerance flips the exit code to "verification failure"
  auto strict = run_cli({"lqk-zero", "--n", "3", "--r", "0.8", "--tol", "1e-30"});
  CHECK(strict.exit_code == 2);

  // n = 2 has no admissible witness: usage-level rejection
  auto none = run_cli({"lqk-zero", "--n", "2", "--r", "0.8"});
  CHECK(none.exit_code == 1);
}

TEST_CASE("cli eval-map, fiber and shilov-sample round trip") {
  auto ev = run_cli({"eval-map", "--map", "LambdaN", "--n", "3", "--point",
                     "[[0.5,0],[0.2,0],[0,0.1]]"});
  REQUIRE(ev.exit_code == 0);
  json evj = json::parse(ev.out);
  CHECK(evj["image"][0][0].get<double>() == 0.25);

  auto fb = run_cli({"fiber", "--map", "LambdaN", "--n", "3", "--target",
                     "[[0.25,0],[0.2,0],[0,0.1]]"});
  REQUIRE(fb.exit_code == 0);
  json fbj = json::parse(fb.out);
  CHECK(fbj["preimages"].size() == 2);
  CHECK_FALSE(fbj["critical"].get<bool>());

  auto sh = run_cli({"shilov-sample", "--domain", "QuotientL", "--n", "3", "--count", "5",
                     "--seed", "11"});
  REQUIRE(sh.exit_code == 0);
  CHECK(json::parse(sh.out)["points"].size() == 5);

  // a target outside the image is rejected with a margin diagnostic
  auto bad = run_cli({"fiber", "--map", "LambdaN", "--n", "2", "--target", "[[4,0],[0,0]]"});
  CHECK(bad.exit_code == 1);
  CHECK(json::parse(bad.out).contains("margin"));
}

TEST_CASE("cli rejects malformed JSON with exit 1") {
  auto res = run_cli({"member", "--domain", "LieBall", "--n", "2", "--point", "[[0.7,0"});
  CHECK(res.exit_code == 1);
  CHECK(json::parse(res.out).contains("error"));

  auto usage = run_cli({"no-such-command"});
  CHECK(usage.exit_code != 0);
}

TEST_CASE("cli aut-apply applies linear and induced automorphisms") {
  auto lin = run_cli({"aut-apply", "--omega", "0,1", "--U", "[[[1,0],[0,0]],[[0,0],[1,0]]]",
                      "--point", "[[0.5,0],[0,0]]"});
  REQUIRE(lin.exit_code == 0);
  json lj = json::parse(lin.out);
  CHECK(lj["image"][0][1].get<double>() == 0.5);  // i * 0.5

  auto ind = run_cli({"aut-apply", "--omega", "1,0", "--U", "[[[1,0]]]", "--point",
                      "[[0.09,0],[0.2,0]]", "--induced"});
  REQUIRE(ind.exit_code == 0);
  json ij = json::parse(ind.out);
  CHECK(ij["well_defined"].get<bool>());
}

TEST_CASE("cli fix-scan finds deck fixed points") {
  auto jk = run_cli({"fix-scan", "--map", "Joukowski", "--r", "0.5", "--omega", "1,0",
                     "--samples", "300", "--seed", "5"});
  REQUIRE(jk.exit_code == 0);
  CHECK(json::parse(jk.out)["count"].get<int>() == 2);

  auto none = run_cli({"fix-scan", "--neg-id", "--domain", "Annulus", "--r", "0.5",
                       "--samples", "300", "--seed", "5"});
  REQUIRE(none.exit_code == 0);
  CHECK(json::parse(none.out)["count"].get<int>() == 0);
}

TEST_CASE("cli verify-suite lists a manifest covering every module") {
  auto res = run_cli({"verify-suite", "--list"});
  REQUIRE(res.exit_code == 0);
  json out = json::parse(res.out);
  std::set<std::string> modules;
  std::set<std::string> ids;
  for (const auto& entry : out["manifest"]) {
    modules.insert(entry["module"].get<std::string>());
    ids.insert(entry["id"].get<std::string>());
  }
  // one entry per module invariant: every primary module shows up
  for (const char* m : {"domains", "proper_maps", "reflections", "biholomorphisms", "bergman",
                        "automorphisms"})
    CHECK(modules.count(m) == 1);
  CHECK(ids.size() == out["manifest"].size());  // ids unique
}

TEST_CASE("cli verify-suite reports are byte-identical across runs") {
  std::vector<std::string> args = {"verify-suite", "--module", "bergman", "--samples-scale",
                                   "0.01", "--seed", "7"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  // a different seed changes residuals but not the schema
  auto c = run_cli({"verify-suite", "--module", "bergman", "--samples-scale", "0.01", "--seed",
                    "8"});
  CHECK(c.exit_code == 0);
  CHECK(json::parse(c.out)["checks"].size() == json::parse(a.out)["checks"].size());
}

TEST_CASE("cli output formats render the same record") {
  std::vector<std::string> base = {"kernel", "--n", "3", "--p", "0", "--q", "random", "--seed",
                                   "3"};
  auto j = run_cli(base);
  std::vector<std::string> as_text = base;
  as_text.push_back("--format");
  as_text.push_back("text");
  auto t = run_cli(as_text);
  std::vector<std::string> as_csv = base;
  as_csv.push_back("--format");
  as_csv.push_back("csv");
  auto c = run_cli(as_csv);
  REQUIRE(j.exit_code == 0);
  REQUIRE(t.exit_code == 0);
  REQUIRE(c.exit_code == 0);
  CHECK(t.out.find("value") != std::string::npos);
  CHECK(c.out.rfind("key,value", 0) == 0);

  // repeated invocations are byte-identical in every format
  CHECK(run_cli(as_text).out == t.out);
  CHECK(run_cli(as_csv).out == c.out);
}
