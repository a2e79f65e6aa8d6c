#include <catch2/catch_amalgamated.hpp>

#include <hypercx/cayley_dickson.hpp>
#include <hypercx/forge.hpp>
#include <hypercx/identities.hpp>
#include <hypercx/table_io.hpp>

#include <cstdio>
#include <filesystem>

using namespace hypercx;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

bool tables_bitwise_equal(const StructureTable& a, const StructureTable& b) {
  if (a.dim != b.dim) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i].real() != b.c[i].real() || a.c[i].imag() != b.c[i].imag())
      return false;
  for (int i = 0; i < a.dim; ++i)
    if (a.g(i) != b.g(i)) return false;
  if (a.identity.has_value() != b.identity.has_value()) return false;
  if (a.identity)
    for (int i = 0; i < a.dim; ++i)
      if ((*a.identity)(i) != (*b.identity)(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("export and import reproduce the table bit for bit", "[table_io]") {
  StructureTable oct = cayley_dickson_table(3);
  Json doc = table_to_json(oct);
  REQUIRE(doc["schema_version"] == "1");
  REQUIRE(doc["dim"] == 8);

  StructureTable back = table_from_json(doc);
  REQUIRE(tables_bitwise_equal(oct, back));

  // a second serialization is textually identical
  REQUIRE(doc.dump() == table_to_json(back).dump());
}

TEST_CASE("zero constants are omitted from the document", "[table_io]") {
  StructureTable quat = cayley_dickson_table(2);
  Json doc = table_to_json(quat);
  size_t nonzero = 0;
  for (const Complex& z : quat.c)
    if (z != Complex(0.0, 0.0)) ++nonzero;
  REQUIRE(doc["constants"].size() == nonzero);
  for (const Json& rec : doc["constants"]) {
    REQUIRE((rec["re"] != 0.0 || rec["im"] != 0.0));
    REQUIRE(rec["i"].get<int>() < 4);
  }
}

TEST_CASE("forged table round-trips through a file with identical reports",
          "[table_io]") {
  ConnectingOperators ops = build(8);
  SpinMetric sm = compute_spin_metric(ops);
  ControllingSpinor th = octonion_spinor(ops, sm);
  InclusionMap h = inclusion_operator(ops.g);
  StructureTable t = structural_constants(ops, th, h);

  const std::string path = temp_path("hypercx_roundtrip.json");
  save_table(t, path);
  StructureTable back = load_table(path);
  std::remove(path.c_str());

  REQUIRE(tables_bitwise_equal(t, back));
  REQUIRE(back.source == "forge");
  REQUIRE(back.params == t.params);

  // verification residuals must agree bit for bit, not just within tolerance
  IdentityReport a1 = check_alternative(t);
  IdentityReport a2 = check_alternative(back);
  REQUIRE(a1.max_residual == a2.max_residual);
  REQUIRE(a1.holds == a2.holds);
  NormalizationReport n1 = check_normalization(t);
  NormalizationReport n2 = check_normalization(back);
  REQUIRE(n1.weak.max_residual == n2.weak.max_residual);
  REQUIRE(n1.full.max_residual == n2.full.max_residual);
}

TEST_CASE("malformed documents are rejected with input errors", "[table_io]") {
  StructureTable quat = cayley_dickson_table(2);
  Json good = table_to_json(quat);

  Json wrong_version = good;
  wrong_version["schema_version"] = "2";
  REQUIRE_THROWS_AS(table_from_json(wrong_version), InvalidInputError);

  Json no_dim = good;
  no_dim.erase("dim");
  REQUIRE_THROWS_AS(table_from_json(no_dim), InvalidInputError);

  Json bad_index = good;
  bad_index["constants"][0]["k"] = 99;
  REQUIRE_THROWS_AS(table_from_json(bad_index), InvalidInputError);

  Json short_metric = good;
  short_metric["metric"].erase(3);
  REQUIRE_THROWS_AS(table_from_json(short_metric), InvalidInputError);

  REQUIRE_THROWS_AS(load_table("/nonexistent/dir/table.json"), InvalidInputError);
}
