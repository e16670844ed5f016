#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperkey/hypergraph.hpp"
#include "hyperkey/rational.hpp"
#include "hyperkey/scheme.hpp"
#include "hyperkey/submodular.hpp"

namespace hyperkey {

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& msg)
      : std::runtime_error("SchemaError: " + msg) {}
};

// Rationals travel as bare integers when integral, "p/q" strings otherwise.
inline Json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.num().fits_slong_p())
    return Json(static_cast<long>(r.num().get_si()));
  return Json(r.str());
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  throw SchemaError(where + ": expected integer or \"p/q\" string");
}

// ---------------------------------------------------------------------------
// Hypergraph files: {"vertices": m, "edges": [{"label","verts","weight"}...]}

inline Hypergraph hypergraph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw SchemaError("source needs \"vertices\" and \"edges\"");
  if (!j["vertices"].is_number_integer())
    throw SchemaError("\"vertices\" must be an integer");
  int m = j["vertices"].get<int>();
  if (!j["edges"].is_array()) throw SchemaError("\"edges\" must be an array");
  std::vector<RawEdge> edges;
  for (const Json& je : j["edges"]) {
    if (!je.is_object() || !je.contains("label") || !je.contains("verts") ||
        !je.contains("weight"))
      throw SchemaError("each edge needs \"label\", \"verts\", \"weight\"");
    RawEdge e;
    e.label = je["label"].get<std::string>();
    if (!je["verts"].is_array())
      throw SchemaError("edge \"verts\" must be an array");
    for (const Json& v : je["verts"]) {
      if (!v.is_number_integer())
        throw SchemaError("edge vertices must be integers");
      e.verts.push_back(v.get<int>());
    }
    e.weight = rational_from_json(je["weight"], "edge '" + e.label + "' weight");
    edges.push_back(std::move(e));
  }
  return Hypergraph::validate(m, edges);
}

inline Json hypergraph_to_json(const Hypergraph& hg) {
  Json j;
  j["vertices"] = hg.num_vertices();
  j["edges"] = Json::array();
  for (const Edge& e : hg.edges()) {
    Json je;
    je["label"] = e.label;
    je["verts"] = vs_vertices(e.verts);
    je["weight"] = rational_to_json(e.weight);
    j["edges"].push_back(je);
  }
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Scheme files:
// {"source": <inline source, optional>, "n": int,
//  "messages": [{"sender": int, "terms": [{"edge": label, "bit": b, "t": t}]}],
//  "key": [[term...], ...]}

inline Term term_from_json(const Json& j, const Hypergraph& hg) {
  if (!j.is_object() || !j.contains("edge"))
    throw SchemaError("each term needs an \"edge\" label");
  Term t;
  std::string label = j["edge"].get<std::string>();
  t.edge = hg.edge_index(label);
  if (t.edge < 0) throw SchemaError("unknown edge label '" + label + "'");
  t.bit = j.value("bit", 0);
  t.t = j.value("t", 0);
  return t;
}

inline LinearScheme scheme_from_json(const Json& j, const Hypergraph& hg) {
  if (!j.is_object() || !j.contains("n") || !j.contains("messages") ||
      !j.contains("key"))
    throw SchemaError("scheme needs \"n\", \"messages\", \"key\"");
  if (!j["n"].is_number_integer())
    throw SchemaError("scheme \"n\" must be an integer");
  BitSource src = [&] {
    try {
      return BitSource::create(hg, j["n"].get<int>());
    } catch (const SchemeError& e) {
      throw SchemaError(e.what());
    }
  }();
  std::vector<MessageSpec> messages;
  for (const Json& jm : j["messages"]) {
    if (!jm.is_object() || !jm.contains("sender") || !jm.contains("terms"))
      throw SchemaError("each message needs \"sender\" and \"terms\"");
    MessageSpec spec;
    spec.sender = jm["sender"].get<int>();
    for (const Json& jt : jm["terms"]) spec.terms.push_back(term_from_json(jt, hg));
    messages.push_back(std::move(spec));
  }
  std::vector<std::vector<Term>> keys;
  for (const Json& jk : j["key"]) {
    if (!jk.is_array()) throw SchemaError("each key row must be a term array");
    std::vector<Term> row;
    for (const Json& jt : jk) row.push_back(term_from_json(jt, hg));
    keys.push_back(std::move(row));
  }
  try {
    return LinearScheme::build(std::move(src), std::move(messages),
                               std::move(keys));
  } catch (const SchemeError& e) {
    throw SchemaError(e.what());
  }
}

// Resolves the scheme's source: an explicitly supplied source wins,
// otherwise the file's inline "source" object is used.
inline LinearScheme load_scheme_file(const std::string& path,
                                     const std::optional<Hypergraph>& source) {
  Json j = load_json_file(path);
  if (source) return scheme_from_json(j, *source);
  if (j.contains("source") && j["source"].is_object()) {
    Hypergraph hg = hypergraph_from_json(j["source"]);
    return scheme_from_json(j, hg);
  }
  throw SchemaError("scheme '" + path +
                    "' has no inline source and no source file was given");
}

inline Json scheme_to_json(const LinearScheme& scheme, bool inline_source) {
  const Hypergraph& hg = scheme.source().hypergraph();
  Json j;
  if (inline_source) j["source"] = hypergraph_to_json(hg);
  j["n"] = scheme.source().block_length();
  auto term_json = [&](const Term& t) {
    Json jt;
    jt["edge"] = hg.edges()[t.edge].label;
    jt["bit"] = t.bit;
    jt["t"] = t.t;
    return jt;
  };
  j["messages"] = Json::array();
  for (const MessageSpec& spec : scheme.message_specs()) {
    Json jm;
    jm["sender"] = spec.sender;
    jm["terms"] = Json::array();
    for (const Term& t : spec.terms) jm["terms"].push_back(term_json(t));
    j["messages"].push_back(jm);
  }
  j["key"] = Json::array();
  for (const std::vector<Term>& row : scheme.key_specs()) {
    Json jr = Json::array();
    for (const Term& t : row) jr.push_back(term_json(t));
    j["key"].push_back(jr);
  }
  return j;
}

inline Json verdict_to_json(const SchemeVerdict& v) {
  Json j;
  j["recoverable"] = v.recoverable;
  if (!v.recoverable) j["failing_user"] = v.failing_user;
  j["secret"] = v.secret;
  j["key_bits"] = v.key_bits;
  j["discussion_bits"] = v.discussion_bits;
  j["key_rate"] = rational_to_json(v.key_rate);
  j["discussion_rate"] = rational_to_json(v.discussion_rate);
  j["verified"] = v.verified();
  return j;
}

// ---------------------------------------------------------------------------
// Mass files for the lamination demo:
// {"ground": ["s1", ...], "mass": [{"set": ["s1", ...], "value": "p/q"}...]}

struct NamedMass {
  std::vector<std::string> ground;
  MassAssignment mass;
};

inline NamedMass mass_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ground") || !j.contains("mass"))
    throw SchemaError("mass file needs \"ground\" and \"mass\"");
  NamedMass out;
  for (const Json& g : j["ground"]) out.ground.push_back(g.get<std::string>());
  if (out.ground.size() > 63) throw SchemaError("ground set too large");
  out.mass.ground_size = static_cast<int>(out.ground.size());
  auto elem_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < out.ground.size(); ++i)
      if (out.ground[i] == name) return static_cast<int>(i);
    throw SchemaError("unknown ground element '" + name + "'");
  };
  for (const Json& jm : j["mass"]) {
    if (!jm.is_object() || !jm.contains("set") || !jm.contains("value"))
      throw SchemaError("each mass entry needs \"set\" and \"value\"");
    ElemSet set = 0;
    for (const Json& g : jm["set"])
      set |= ElemSet{1} << elem_index(g.get<std::string>());
    Rational v = rational_from_json(jm["value"], "mass value");
    if (v.sign() < 0) throw SchemaError("mass values must be nonnegative");
    out.mass.add(set, v);
  }
  return out;
}

}  // namespace hyperkey
