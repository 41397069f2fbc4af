#ifndef CARTANQ_IO_HPP
#define CARTANQ_IO_HPP

#include <json.hpp>

#include "cartanq/biholomorphisms.hpp"
#include "cartanq/domains.hpp"
#include "cartanq/proper_maps.hpp"

namespace cartanq {

using json = nlohmann::json;

// complex scalars travel as [re, im]; points as arrays of such pairs;
// matrices as row-major arrays of rows

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected a complex scalar as [re, im]");
  return cplx{j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const cvec& z) {
  json a = json::array();
  for (cplx c : z) a.push_back(to_json(c));
  return a;
}

inline cvec cvec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a point as an array of [re, im]");
  cvec z;
  z.reserve(j.size());
  for (const json& c : j) z.push_back(cplx_from_json(c));
  return z;
}

inline json to_json(const CMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline CMat cmat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix as array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (int c = 0; c < cols; ++c)
      m(i, c) = cplx_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  }
  return m;
}

// ---------------------------------------------------------------------------

inline json to_json(const DomainId& d) {
  json params = json::object();
  switch (d.tag) {
    case DomainTag::Polydisc:
    case DomainTag::EuclideanBall:
    case DomainTag::LieBall:
    case DomainTag::QuotientL:
    case DomainTag::Ellipsoid:
    case DomainTag::CartanII:
    case DomainTag::CartanIII: params["n"] = d.n; break;
    case DomainTag::CartanI:
      params["m"] = d.m;
      params["n"] = d.n;
      break;
    case DomainTag::Annulus: params["r"] = d.r; break;
    default: break;
  }
  return json{{"tag", domain_tag_name(d.tag)}, {"params", params}};
}

inline DomainId domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tag"))
    throw std::invalid_argument("domain descriptor must be {\"tag\":..., \"params\":{...}}");
  std::string tag = j["tag"].get<std::string>();
  json params = j.value("params", json::object());
  auto geti = [&](const char* k, int dflt) { return params.value(k, dflt); };
  if (tag == "UnitDisc") return DomainId::unit_disc();
  if (tag == "Polydisc") return DomainId::polydisc(geti("n", 2));
  if (tag == "EuclideanBall") return DomainId::ball(geti("n", 2));
  if (tag == "Annulus") return DomainId::annulus(params.value("r", 0.5));
  if (tag == "CartanI") return DomainId::cartan1(geti("m", 2), geti("n", 2));
  if (tag == "CartanII") return DomainId::cartan2(geti("n", 2));
  if (tag == "CartanIII") return DomainId::cartan3(geti("n", 2));
  if (tag == "LieBall") return DomainId::lie_ball(geti("n", 2));
  if (tag == "QuotientL") return DomainId::quotient_l(geti("n", 2));
  if (tag == "Ellipsoid") return DomainId::ellipsoid(geti("n", 2));
  if (tag == "SymBidisc") return DomainId::sym_bidisc();
  if (tag == "Tetrablock") return DomainId::tetrablock();
  if (tag == "FDomain") return DomainId::f_domain();
  throw std::invalid_argument("unknown domain tag: " + tag);
}

inline json to_json(const MapId& m) {
  json j{{"tag", map_tag_name(m.tag)}};
  switch (m.tag) {
    case MapTag::LambdaN:
    case MapTag::BallEllipsoid: j["n"] = m.n; break;
    case MapTag::AnnulusSquare: j["r"] = m.r; break;
    case MapTag::Joukowski:
      j["r"] = m.r;
      j["omega"] = to_json(m.omega);
      break;
    case MapTag::BidiscSym: j["omega"] = to_json(m.omega); break;
    case MapTag::NeilMap:
      j["source"] = (m.neil_source == NeilSource::Bidisc) ? "Bidisc" : "Ball2";
      break;
    default: break;
  }
  return j;
}

inline MapId map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tag"))
    throw std::invalid_argument("map descriptor must be {\"tag\":...}");
  std::string tag = j["tag"].get<std::string>();
  auto omega = [&] { return j.contains("omega") ? cplx_from_json(j["omega"]) : cplx{1.0, 0.0}; };
  if (tag == "DiscSquare") return MapId::disc_square();
  if (tag == "AnnulusSquare") return MapId::annulus_square(j.value("r", 0.5));
  if (tag == "Joukowski") return MapId::joukowski(j.value("r", 0.5), omega());
  if (tag == "BidiscSplit") return MapId::bidisc_split();
  if (tag == "BidiscSym") return MapId::bidisc_sym(omega());
  if (tag == "BallEllipsoid") return MapId::ball_ellipsoid(j.value("n", 2));
  if (tag == "TetrablockPhi") return MapId::tetrablock_phi();
  if (tag == "FMapPhi4") return MapId::f_map_phi4();
  if (tag == "LambdaN") return MapId::lambda_n(j.value("n", 2));
  if (tag == "NeilMap") {
    std::string src = j.value("source", "Bidisc");
    if (src != "Bidisc" && src != "Ball2")
      throw std::invalid_argument("NeilMap source must be Bidisc or Ball2");
    return MapId::neil_map(src == "Bidisc" ? NeilSource::Bidisc : NeilSource::Ball2);
  }
  throw std::invalid_argument("unknown map tag: " + tag);
}

inline json to_json(const BihId& b) {
  return json{{"tag", bih_tag_name(b.tag)}, {"inverse", b.inverse}};
}

inline BihId bih_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tag"))
    throw std::invalid_argument("biholomorphism descriptor must be {\"tag\":..., \"inverse\":...}");
  std::string tag = j["tag"].get<std::string>();
  bool inv = j.value("inverse", false);
  for (BihTag t : {BihTag::L2toBidisc, BihTag::L3toR3, BihTag::L4toR1, BihTag::LL2toG2,
                   BihTag::LL3toE, BihTag::LL4toF})
    if (tag == bih_tag_name(t)) return BihId{t, inv};
  throw std::invalid_argument("unknown biholomorphism tag: " + tag);
}

inline const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

inline json to_json(const MembershipVerdict& v) {
  return json{{"state", membership_name(v.state)}, {"margin", v.margin}, {"tol", v.tol}};
}

}  // namespace cartanq

#endif  // CARTANQ_IO_HPP
