#ifndef CARTANQ_CLI_HPP
#define CARTANQ_CLI_HPP

#include <CLI11.hpp>
#include <cstdlib>
#include <sstream>

#include "cartanq/io.hpp"
#include "cartanq/verify.hpp"

namespace cartanq {

struct CliResult {
  int exit_code = 0;
  std::string out;
};

namespace cli_detail {

inline std::uint64_t env_u64(const char* name, std::uint64_t dflt) {
  const char* v = std::getenv(name);
  return v ? std::strtoull(v, nullptr, 10) : dflt;
}

inline double env_double(const char* name, double dflt) {
  const char* v = std::getenv(name);
  return v ? std::strtod(v, nullptr) : dflt;
}

inline std::string env_str(const char* name, std::string dflt) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : dflt;
}

inline cplx parse_complex(const std::string& s) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos) {
    // plain real
    std::size_t pos = 0;
    double re = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad complex literal: " + s);
    return cplx{re, 0.0};
  }
  return cplx{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

/// point argument: "0"/"origin", "random" (caller resolves), or JSON
inline cvec parse_point(const std::string& s, int dim_hint = -1) {
  if (s == "0" || s == "origin") {
    if (dim_hint < 1) throw std::invalid_argument("origin shorthand needs a known dimension");
    return origin(dim_hint);
  }
  return cvec_from_json(json::parse(s));
}

inline void flatten(const json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

inline std::string render(const json& j, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << j.dump(2) << "\n";
  } else if (format == "text") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    for (const auto& [k, v] : rows) os << k << " = " << v << "\n";
  } else if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    os << "key,value\n";
    for (const auto& [k, v] : rows) {
      std::string vq = v;
      for (std::size_t p = vq.find('"'); p != std::string::npos; p = vq.find('"', p + 2))
        vq.replace(p, 1, "\"\"");
      os << k << ",\"" << vq << "\"\n";
    }
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
  return os.str();
}

struct CommonOpts {
  std::uint64_t seed = env_u64("CARTANQ_SEED", kDefaultSeed);
  double tol = env_double("CARTANQ_TOL", 1e-12);
  long samples = static_cast<long>(env_u64("CARTANQ_SAMPLES", 10000));
  std::string format = env_str("CARTANQ_FORMAT", "json");

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (env CARTANQ_SEED)");
    cmd->add_option("--tol", tol, "tolerance (env CARTANQ_TOL)");
    cmd->add_option("--samples", samples, "sample count (env CARTANQ_SAMPLES)");
    cmd->add_option("--format", format, "output format: json|csv|text (env CARTANQ_FORMAT)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  }

  json echo() const {
    return json{{"seed", seed}, {"tol", tol}, {"samples", samples}, {"format", format}};
  }
};

struct DomainOpts {
  std::string tag;
  std::string domain_json;
  int n = 2;
  int m = 2;
  double r = 0.5;

  void attach(CLI::App* cmd, bool required = true) {
    auto* tag_opt = cmd->add_option("--domain", tag,
                                    "domain tag (UnitDisc, Polydisc, EuclideanBall, Annulus, "
                                    "CartanI, CartanII, CartanIII, LieBall, QuotientL, Ellipsoid, "
                                    "SymBidisc, Tetrablock, FDomain)");
    auto* json_opt = cmd->add_option("--domain-json", domain_json,
                                     "full JSON domain descriptor {\"tag\":...,\"params\":{...}}");
    if (required) {
      tag_opt->excludes(json_opt);
    }
    cmd->add_option("--n", n, "dimension parameter");
    cmd->add_option("--m", m, "row parameter (CartanI)");
    cmd->add_option("--r", r, "annulus parameter in (0,1)");
  }

  DomainId resolve() const {
    if (!domain_json.empty()) return domain_from_json(json::parse(domain_json));
    if (tag.empty()) throw std::invalid_argument("missing --domain or --domain-json");
    json j{{"tag", tag}, {"params", {{"n", n}, {"m", m}, {"r", r}}}};
    return domain_from_json(j);
  }
};

struct MapOpts {
  std::string tag;
  std::string map_json;
  int n = 2;
  std::string omega = "1,0";
  double r = 0.5;
  std::string neil_source = "Bidisc";

  void attach(CLI::App* cmd) {
    cmd->add_option("--map", tag,
                    "map tag (DiscSquare, AnnulusSquare, Joukowski, BidiscSplit, BidiscSym, "
                    "BallEllipsoid, TetrablockPhi, FMapPhi4, LambdaN, NeilMap)");
    cmd->add_option("--map-json", map_json, "full JSON map descriptor {\"tag\":...}");
    cmd->add_option("--n", n, "dimension parameter");
    cmd->add_option("--omega", omega, "unimodular parameter as re,im");
    cmd->add_option("--r", r, "annulus parameter in (0,1)");
    cmd->add_option("--neil-source", neil_source, "NeilMap source: Bidisc|Ball2");
  }

  MapId resolve() const {
    if (!map_json.empty()) return map_from_json(json::parse(map_json));
    if (tag.empty()) throw std::invalid_argument("missing --map or --map-json");
    cplx om = parse_complex(omega);
    json j{{"tag", tag}, {"n", n}, {"omega", json::array({om.real(), om.imag()})},
           {"r", r},     {"source", neil_source}};
    return map_from_json(j);
  }
};

}  // namespace cli_detail

/// Parse and execute one CLI invocation; all output is returned as a string
/// so callers (and tests) can compare reports byte for byte.
inline CliResult run_cli(const std::vector<std::string>& args) {
  using namespace cli_detail;

  CLI::App app{"numerical toolkit for Cartan domains, their 2-proper images and Bergman kernels"};
  app.require_subcommand(1);

  CommonOpts common;

  // ---- member
  auto* member = app.add_subcommand("member", "classify a point against a domain");
  DomainOpts member_domain;
  member_domain.attach(member);
  std::string member_point, member_matrix;
  member->add_option("--point", member_point, "point as JSON [[re,im],...] (or 0)");
  member->add_option("--matrix", member_matrix, "matrix as JSON rows of [re,im]");
  common.attach(member);

  // ---- eval-map
  auto* evalc = app.add_subcommand("eval-map", "evaluate a catalogued proper map");
  MapOpts eval_map;
  eval_map.attach(evalc);
  std::string eval_point;
  bool eval_check = false;
  evalc->add_option("--point", eval_point, "source point as JSON (or 0)")->required();
  evalc->add_flag("--check", eval_check, "reject points outside the source domain");
  common.attach(evalc);

  // ---- fiber
  auto* fiberc = app.add_subcommand("fiber", "solve the full preimage of a target point");
  MapOpts fiber_map;
  fiber_map.attach(fiberc);
  std::string fiber_target;
  fiberc->add_option("--target", fiber_target, "target point as JSON")->required();
  common.attach(fiberc);

  // ---- kernel
  auto* kernelc = app.add_subcommand("kernel", "evaluate the quotient Bergman kernel");
  int kernel_n = 3;
  std::string kernel_p = "0", kernel_q = "random";
  kernelc->add_option("--n", kernel_n, "dimension (2..64)")->required();
  kernelc->add_option("--p", kernel_p, "first point: JSON, 0, or random");
  kernelc->add_option("--q", kernel_q, "second point: JSON, 0, or random");
  common.attach(kernelc);

  // ---- lqk-zero
  auto* lqkz = app.add_subcommand("lqk-zero", "construct the explicit kernel-zero witness");
  int lqk_n = 3;
  double lqk_r = 0.8;
  lqkz->add_option("--n", lqk_n, "dimension (>= 3)")->required();
  lqkz->add_option("--r", lqk_r, "witness radius in (|z0|, 1)");
  common.attach(lqkz);

  // ---- lqk-scan
  auto* lqks = app.add_subcommand("lqk-scan", "scan for small kernel values");
  int scan_n = 2;
  bool scan_near = false;
  double scan_r = 0.8, scan_radius = 0.01;
  lqks->add_option("--n", scan_n, "dimension")->required();
  lqks->add_flag("--near-witness", scan_near, "sample near the explicit witness");
  lqks->add_option("--r", scan_r, "witness radius (with --near-witness)");
  lqks->add_option("--radius", scan_radius, "perturbation radius (with --near-witness)");
  common.attach(lqks);

  // ---- volume
  auto* volc = app.add_subcommand("volume", "Monte-Carlo volume (or the volume identity)");
  DomainOpts vol_domain;
  vol_domain.attach(volc, /*required=*/false);
  bool vol_identity = false;
  volc->add_flag("--identity", vol_identity,
                 "check n Vol(QuotientL) = Vol(LieBall) instead of one volume");
  common.attach(volc);

  // ---- shilov-sample
  auto* shilovc = app.add_subcommand("shilov-sample", "sample the Shilov boundary");
  DomainOpts shilov_domain;
  shilov_domain.attach(shilovc);
  int shilov_count = 16;
  shilovc->add_option("--count", shilov_count, "number of samples");
  common.attach(shilovc);

  // ---- aut-apply
  auto* autc = app.add_subcommand("aut-apply", "apply a linear Lie-ball automorphism");
  std::string aut_omega = "1,0", aut_u, aut_point;
  bool aut_induced = false;
  autc->add_option("--omega", aut_omega, "unimodular scalar as re,im");
  autc->add_option("--U", aut_u, "real special orthogonal matrix as JSON rows")->required();
  autc->add_option("--point", aut_point, "point as JSON")->required();
  autc->add_flag("--induced", aut_induced,
                 "apply the induced quotient automorphism of the extension instead");
  common.attach(autc);

  // ---- fix-scan
  auto* fixc = app.add_subcommand("fix-scan", "sample fixed points of a self-map");
  MapOpts fix_map;
  fix_map.attach(fixc);
  std::string fix_domain_tag;
  bool fix_negid = false;
  std::string fix_omega, fix_u;
  fixc->add_option("--domain", fix_domain_tag,
                   "domain tag for --neg-id (shares --n/--m/--r with the map options)");
  fixc->add_flag("--neg-id", fix_negid, "scan Fix(-id) on --domain");
  fixc->add_option("--aut-omega", fix_omega, "linear automorphism scalar (with --aut-U)");
  fixc->add_option("--aut-U", fix_u, "linear automorphism matrix (LieBall of its size)");
  common.attach(fixc);

  // ---- verify-suite
  auto* verifyc = app.add_subcommand("verify-suite", "run the invariant verification suite");
  bool verify_all = false, verify_list = false;
  std::string verify_module, verify_id;
  double verify_scale = 1.0;
  verifyc->add_flag("--all", verify_all, "run every check (default)");
  verifyc->add_flag("--list", verify_list, "print the manifest without running");
  verifyc->add_option("--module", verify_module, "restrict to one module");
  verifyc->add_option("--id", verify_id, "restrict to one check id");
  verifyc->add_option("--samples-scale", verify_scale, "scale factor on sample counts");
  common.attach(verifyc);

  std::vector<const char*> argv;
  argv.push_back("cartanq");
  for (const std::string& a : args) argv.push_back(a.c_str());

  CliResult res;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    return CliResult{code, os.str()};
  }

  json out;
  out["config"] = common.echo();
  try {
    if (member->parsed()) {
      out["command"] = "member";
      DomainId d = member_domain.resolve();
      out["domain"] = to_json(d);
      MembershipVerdict v;
      if (!member_matrix.empty()) {
        CMat a = cmat_from_json(json::parse(member_matrix));
        out["matrix"] = to_json(a);
        v = contains(d, a, common.tol);
      } else if (!member_point.empty()) {
        cvec p = parse_point(member_point, d.point_dim());
        out["point"] = to_json(p);
        v = contains(d, p, common.tol);
      } else {
        throw std::invalid_argument("member: provide --point or --matrix");
      }
      out["verdict"] = to_json(v);
    } else if (evalc->parsed()) {
      out["command"] = "eval-map";
      MapId m = eval_map.resolve();
      cvec p = parse_point(eval_point, source_dim(m));
      out["map"] = to_json(m);
      out["point"] = to_json(p);
      out["image"] = to_json(eval(m, p, eval_check));
    } else if (fiberc->parsed()) {
      out["command"] = "fiber";
      MapId m = fiber_map.resolve();
      cvec t = parse_point(fiber_target, target_dim(m));
      out["map"] = to_json(m);
      out["target"] = to_json(t);
      Fiber f = fiber(m, t);
      json pre = json::array();
      for (const cvec& q : f.preimages) pre.push_back(to_json(q));
      out["preimages"] = pre;
      out["critical"] = f.is_critical;
    } else if (kernelc->parsed()) {
      out["command"] = "kernel";
      Rng rng(common.seed);
      auto resolve_pt = [&](const std::string& s) {
        if (s == "random") return sample_point(DomainId::quotient_l(kernel_n), rng);
        return parse_point(s, kernel_n);
      };
      cvec p = resolve_pt(kernel_p), q = resolve_pt(kernel_q);
      KernelValue kv = k_quotient_closed(p, q, kernel_n);
      out["n"] = kernel_n;
      out["p"] = to_json(p);
      out["q"] = to_json(q);
      out["value"] = to_json(kv.value);
      out["Xn"] = to_json(kv.Xn);
      out["Asq"] = to_json(kv.Asq);
      out["abs"] = std::abs(kv.value);
    } else if (lqkz->parsed()) {
      out["command"] = "lqk-zero";
      LqkWitness w = lqk_witness(lqk_n, lqk_r);
      double rel = std::abs(w.kernel_value) / w.lie_kernel_scale;
      // --tol overrides the default relative threshold for the witness zero
      double tol = lqkz->count("--tol") > 0 ? common.tol : 1e-9;
      out["n"] = w.n;
      out["r"] = w.r;
      out["z0"] = to_json(w.z0);
      out["zhat"] = to_json(w.zhat);
      out["what"] = to_json(w.what);
      out["abs_kernel"] = std::abs(w.kernel_value);
      out["lie_kernel_scale"] = w.lie_kernel_scale;
      out["rel"] = rel;
      out["tol"] = tol;
      bool pass = rel < tol;
      out["pass"] = pass;
      if (!pass) res.exit_code = 2;
    } else if (lqks->parsed()) {
      out["command"] = "lqk-scan";
      int samples = static_cast<int>(common.samples);
      LqkScanResult r = scan_near
                            ? lqk_scan_near(lqk_witness(scan_n, scan_r), std::max(samples, 1000),
                                            common.seed, scan_radius)
                            : lqk_scan(scan_n, std::max(samples, 1000), common.seed);
      out["n"] = scan_n;
      out["samples"] = std::max(samples, 1000);
      out["seed"] = common.seed;
      out["near_witness"] = scan_near;
      out["min_abs"] = r.min_abs;
      out["argmin_p"] = to_json(r.argmin_p);
      out["argmin_q"] = to_json(r.argmin_q);
    } else if (volc->parsed()) {
      out["command"] = "volume";
      if (vol_identity) {
        int n = vol_domain.n;
        VolumeIdentity vi =
            volume_identity(n, std::max<long>(common.samples, 10000), common.seed);
        out["n"] = n;
        out["samples"] = std::max<long>(common.samples, 10000);
        out["vol_lie"] = json{{"estimate", vi.vol_lie.estimate}, {"stderr", vi.vol_lie.stderr_}};
        out["vol_quotient"] =
            json{{"estimate", vi.vol_quotient.estimate}, {"stderr", vi.vol_quotient.stderr_}};
        out["residual"] = vi.residual;
        out["three_se"] = vi.three_se;
        bool pass = vi.residual < vi.three_se;
        out["pass"] = pass;
        if (!pass) res.exit_code = 2;
      } else {
        DomainId d = vol_domain.resolve();
        VolumeEstimate v = mc_volume(d, std::max<long>(common.samples, 10000), common.seed);
        out["domain"] = to_json(d);
        out["samples"] = v.samples;
        out["estimate"] = v.estimate;
        out["stderr"] = v.stderr_;
        out["hits"] = v.hits;
      }
    } else if (shilovc->parsed()) {
      out["command"] = "shilov-sample";
      DomainId d = shilov_domain.resolve();
      out["domain"] = to_json(d);
      out["count"] = shilov_count;
      out["seed"] = common.seed;
      json pts = json::array();
      for (const cvec& p : shilov_sample(d, shilov_count, common.seed)) pts.push_back(to_json(p));
      out["points"] = pts;
    } else if (autc->parsed()) {
      out["command"] = "aut-apply";
      cplx om = parse_complex(aut_omega);
      json uj = json::parse(aut_u);
      CMat uc = cmat_from_json(uj);
      RMat u(uc.rows(), uc.cols());
      for (int i = 0; i < uc.rows(); ++i)
        for (int j = 0; j < uc.cols(); ++j) {
          if (std::abs(uc(i, j).imag()) > 0.0)
            throw std::invalid_argument("aut-apply: U must be real");
          u(i, j) = uc(i, j).real();
        }
      LieLinearAut a = make_lie_linear(om, u);
      out["omega"] = to_json(om);
      out["U"] = uj;
      if (aut_induced) {
        int n = a.dim() + 1;
        cvec w = parse_point(aut_point, n);
        out["point"] = to_json(w);
        auto got = induced_quotient_aut(as_point_map(extend_linear(a)), w);
        out["image"] = to_json(got.image);
        out["residual"] = got.residual;
        out["well_defined"] = got.well_defined;
        if (!got.well_defined) res.exit_code = 2;
      } else {
        cvec z = parse_point(aut_point, a.dim());
        out["point"] = to_json(z);
        out["image"] = to_json(lie_linear_apply(a, z));
      }
    } else if (fixc->parsed()) {
      out["command"] = "fix-scan";
      PointMap f;
      DomainId dom = DomainId::unit_disc();
      if (fix_negid) {
        dom = fix_domain.resolve();
        int d = dom.point_dim();
        f = PointMap{d, d, [](const cvec& z) {
                       cvec o = z;
                       for (cplx& c : o) c = -c;
                       return o;
                     }};
        out["target"] = json{{"neg_id_on", to_json(dom)}};
      } else if (!fix_u.empty()) {
        cplx om = fix_omega.empty() ? cplx{1.0} : parse_complex(fix_omega);
        CMat uc = cmat_from_json(json::parse(fix_u));
        RMat u(uc.rows(), uc.cols());
        for (int i = 0; i < uc.rows(); ++i)
          for (int j = 0; j < uc.cols(); ++j) u(i, j) = uc(i, j).real();
        LieLinearAut a = make_lie_linear(om, u);
        dom = DomainId::lie_ball(a.dim());
        f = as_point_map(a);
        out["target"] = json{{"linear_aut_on", to_json(dom)}};
      } else {
        MapId m = fix_map.resolve();
        f = deck_transform(m);
        switch (m.tag) {
          case MapTag::DiscSquare: dom = DomainId::unit_disc(); break;
          case MapTag::AnnulusSquare:
          case MapTag::Joukowski: dom = DomainId::annulus(m.r); break;
          case MapTag::BidiscSplit:
          case MapTag::BidiscSym: dom = DomainId::polydisc(2); break;
          case MapTag::BallEllipsoid: dom = DomainId::ball(m.n); break;
          case MapTag::LambdaN: dom = DomainId::lie_ball(m.n); break;
          case MapTag::NeilMap:
            dom = (m.neil_source == NeilSource::Bidisc) ? DomainId::polydisc(2)
                                                        : DomainId::ball(2);
            break;
          default:
            throw std::invalid_argument(
                "fix-scan: matrix-coordinate sources are not supported here");
        }
        out["target"] = json{{"deck_of", to_json(m)}};
      }
      auto pts = fix_points_sample(f, dom, static_cast<int>(std::max<long>(common.samples, 50)),
                                   common.seed, std::max(common.tol, 1e-10));
      json arr = json::array();
      for (const cvec& p : pts) arr.push_back(to_json(p));
      out["points"] = arr;
      out["count"] = pts.size();
    } else if (verifyc->parsed()) {
      out["command"] = "verify-suite";
      if (verify_list) {
        json man = json::array();
        for (const CheckSpec& spec : verification_manifest())
          man.push_back(json{{"id", spec.id}, {"module", spec.module},
                             {"invariant", spec.invariant}});
        out["manifest"] = man;
      } else {
        RunConfig cfg;
        cfg.seed = common.seed;
        cfg.tol = common.tol;
        cfg.samples_scale = verify_scale;
        auto results = run_verification(cfg, verify_module, verify_id);
        if (results.empty()) throw std::invalid_argument("verify-suite: no matching checks");
        json checks = json::array();
        int passed = 0;
        for (const CheckResult& r : results) {
          checks.push_back(json{{"id", r.id},
                                {"module", r.module},
                                {"invariant", r.invariant},
                                {"pass", r.passed},
                                {"residual", r.residual},
                                {"tolerance", r.tolerance},
                                {"note", r.note}});
          if (r.passed) ++passed;
        }
        out["samples_scale"] = verify_scale;
        out["checks"] = checks;
        out["counts"] = json{{"total", results.size()}, {"passed", passed}};
        bool all_pass = passed == static_cast<int>(results.size());
        out["pass"] = all_pass;
        if (!all_pass) res.exit_code = 2;
      }
    }
  } catch (const outside_domain_error& e) {
    res.exit_code = 1;
    out["error"] = e.what();
    out["margin"] = e.margin();
    res.out = render(out, common.format);
    return res;
  } catch (const json::exception& e) {
    res.exit_code = 1;
    out["error"] = std::string("malformed JSON input: ") + e.what();
    res.out = render(out, common.format);
    return res;
  } catch (const std::invalid_argument& e) {
    res.exit_code = 1;
    out["error"] = e.what();
    res.out = render(out, common.format);
    return res;
  } catch (const std::exception& e) {
    res.exit_code = 2;
    out["error"] = e.what();
    res.out = render(out, common.format);
    return res;
  }

  res.out = render(out, common.format);
  return res;
}

}  // namespace cartanq

#endif  // CARTANQ_CLI_HPP
