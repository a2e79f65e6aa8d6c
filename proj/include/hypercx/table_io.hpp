#pragma once

#include "hypercx/errors.hpp"
#include "hypercx/structure_table.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace hypercx {

// Interchange document for structure tables. Zero constants are omitted,
// complex entries are {re, im} records, doubles serialize at full precision
// so a round trip reproduces every bit. Field order is pinned by the
// ordered json type to keep exports diffable.
using Json = nlohmann::ordered_json;

inline Json table_to_json(const StructureTable& t) {
  Json doc;
  doc["schema_version"] = "1";
  doc["dim"] = t.dim;
  Json metric = Json::array();
  for (int i = 0; i < t.dim; ++i) metric.push_back(t.g(i));
  doc["metric"] = metric;
  Json constants = Json::array();
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j)
      for (int k = 0; k < t.dim; ++k) {
        const Complex z = t.at(i, j, k);
        if (z.real() == 0.0 && z.imag() == 0.0) continue;
        constants.push_back(Json{{"i", i},
                                 {"j", j},
                                 {"k", k},
                                 {"re", z.real()},
                                 {"im", z.imag()}});
      }
  doc["constants"] = constants;
  if (t.identity) {
    // the schema stores a real identity; a complex one (none of the
    // in-scope constructions produce it) is dropped rather than truncated
    double imag = 0.0;
    for (int i = 0; i < t.dim; ++i)
      imag = std::max(imag, std::abs((*t.identity)(i).imag()));
    if (imag <= 1e-12) {
      Json e = Json::array();
      for (int i = 0; i < t.dim; ++i) e.push_back((*t.identity)(i).real());
      doc["identity"] = e;
    }
  }
  Json params = Json::object();
  for (const auto& [key, value] : t.params) params[key] = value;
  doc["provenance"] = Json{{"source", t.source}, {"params", params}};
  return doc;
}

inline StructureTable table_from_json(const Json& doc) {
  if (!doc.is_object())
    throw InvalidInputError("table_from_json: document is not an object");
  if (doc.value("schema_version", std::string()) != "1")
    throw InvalidInputError("table_from_json: unsupported schema version");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw InvalidInputError("table_from_json: missing dimension");
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw InvalidInputError("table_from_json: dimension must be positive");

  StructureTable t = StructureTable::zeros(dim);
  const Json& metric = doc.at("metric");
  if (!metric.is_array() || static_cast<int>(metric.size()) != dim)
    throw InvalidInputError("table_from_json: metric length does not match dim");
  for (int i = 0; i < dim; ++i) t.g(i) = metric[i].get<double>();

  for (const Json& rec : doc.at("constants")) {
    const int i = rec.at("i").get<int>();
    const int j = rec.at("j").get<int>();
    const int k = rec.at("k").get<int>();
    if (i < 0 || i >= dim || j < 0 || j >= dim || k < 0 || k >= dim)
      throw InvalidInputError("table_from_json: constant index out of range");
    t.c[(static_cast<size_t>(i) * dim + j) * dim + k] =
        Complex(rec.at("re").get<double>(), rec.at("im").get<double>());
  }

  if (doc.contains("identity")) {
    const Json& e = doc["identity"];
    if (!e.is_array() || static_cast<int>(e.size()) != dim)
      throw InvalidInputError("table_from_json: identity length does not match dim");
    CVec ev(dim);
    for (int i = 0; i < dim; ++i) ev(i) = Complex(e[i].get<double>(), 0.0);
    t.identity = ev;
  }

  if (doc.contains("provenance")) {
    const Json& prov = doc["provenance"];
    t.source = prov.value("source", std::string());
    if (prov.contains("params"))
      for (const auto& [key, value] : prov["params"].items())
        t.params.emplace_back(key, value.get<double>());
  }
  return t;
}

inline void save_table(const StructureTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("save_table: cannot open " + path);
  out << table_to_json(t).dump(2) << "\n";
  if (!out) throw InvalidInputError("save_table: write failed for " + path);
}

inline StructureTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("load_table: cannot open " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw InvalidInputError(std::string("load_table: ") + err.what());
  }
  return table_from_json(doc);
}

}  // namespace hypercx
