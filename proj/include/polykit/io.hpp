#ifndef POLYKIT_IO_HPP
#define POLYKIT_IO_HPP

#include <fstream>
#include <json.hpp>
#include <string>

#include "doubling.hpp"

namespace polykit {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// Exact integers only; floats and strings are rejected.
inline Int json_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + ": expected an exact integer");
  return Int(j.get<long long>());
}

inline Vec json_vec(const Json& j, size_t dim, const char* what) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError(std::string(what) + ": expected an array of length " +
                     std::to_string(dim));
  Vec v;
  for (const Json& e : j) v.push_back(json_int(e, what));
  return v;
}

/// Polytope text format: { "dim": n, "vertices": [[..]..], "facets":
/// [{"a": [..], "b": k}, ...]? } with facets optional (required above dim 3).
inline Polytope parse_polytope(const Json& doc) {
  if (!doc.is_object()) throw ParseError("polytope: expected an object");
  if (!doc.contains("dim") || !doc.contains("vertices"))
    throw ParseError("polytope: needs fields dim and vertices");
  Int dim = json_int(doc.at("dim"), "dim");
  if (dim.is_neg() || !dim.fits_ll()) throw ParseError("dim: out of range");
  size_t n = static_cast<size_t>(dim.to_ll());
  if (!doc.at("vertices").is_array() || doc.at("vertices").empty())
    throw ParseError("vertices: expected a nonempty array");
  std::vector<Vec> verts;
  for (const Json& v : doc.at("vertices"))
    verts.push_back(json_vec(v, n, "vertex"));
  std::vector<std::pair<Vec, Int>> facets;
  if (doc.contains("facets")) {
    if (!doc.at("facets").is_array()) throw ParseError("facets: expected array");
    for (const Json& f : doc.at("facets")) {
      if (!f.is_object() || !f.contains("a") || !f.contains("b"))
        throw ParseError("facet: expected {a, b}");
      facets.emplace_back(json_vec(f.at("a"), n, "facet form"),
                          json_int(f.at("b"), "facet offset"));
    }
  }
  return build_polytope(verts, facets);
}

inline Polytope load_polytope(const std::string& path,
                              std::string* warning = nullptr) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  Polytope p = parse_polytope(doc);
  if (warning && doc.at("vertices").size() != p.vertices.size())
    *warning = "degenerate input: " +
               std::to_string(doc.at("vertices").size() - p.vertices.size()) +
               " repeated or non-extreme vertex entries normalized away";
  return p;
}

inline Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const Int& x : v) {
    assert(x.fits_ll());
    a.push_back(x.to_ll());
  }
  return a;
}

/// Emits the polytope in its own (normalized, canonical) coordinates, so a
/// round trip re-parses to the identical object.
inline Json emit_polytope(const Polytope& p) {
  Json doc;
  doc["dim"] = p.dim;
  Json vs = Json::array();
  for (const Vec& v : p.vertices) vs.push_back(vec_json(v));
  doc["vertices"] = vs;
  Json fs = Json::array();
  for (const Facet& f : p.facets) {
    Json fj;
    fj["a"] = vec_json(f.a);
    assert(f.b.fits_ll());
    fj["b"] = f.b.to_ll();
    fs.push_back(fj);
  }
  doc["facets"] = fs;
  return doc;
}

/// Doubled polytope with the provenance block the spectrum files carry.
inline Json emit_spectrum_node(const SpectrumNode& node) {
  Json doc = emit_polytope(node.polytope());
  Json prov;
  prov["step"] = node.step;
  prov["facet"] = node.doubled_facet;
  prov["pivot"] = vec_json(node.dbl.pivot);
  doc["provenance"] = prov;
  return doc;
}

}  // namespace polykit

#endif
