// Command-line front end: construct tables (doubling or operator synthesis),
// verify identities, report symmetry dimensions, classify spin-tensors, and
// hunt zero divisors. Documents go to --out paths, reports to stdout, the
// construction log to stderr as line-delimited JSON.
//
// Exit codes: 0 success or all checks hold, 1 an identity check failed,
// 2 usage or input error, 3 construction failure.

#include <hypercx/hypercx.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hypercx;

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;

struct CommonOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--abs-tol", opt.abs_tol, "absolute tolerance for rank cuts");
  cmd->add_option("--rel-tol", opt.rel_tol, "relative tolerance for rank cuts");
  cmd->add_option("--seed", opt.seed, "seed for randomized sweeps");
  cmd->add_option("--jobs", opt.jobs, "worker cap for parallel loops")
      ->check(CLI::PositiveNumber);
}

void emit_log(const std::vector<std::string>& lines) {
  for (const std::string& line : lines) std::fprintf(stderr, "%s\n", line.c_str());
}

void write_document(const Json& doc, const std::string& path) {
  if (path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open output path " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw InvalidInputError("write failed for " + path);
}

Json operators_to_json(const ConnectingOperators& ops) {
  auto matrix = [](const CMat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < m.cols(); ++c)
        row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
      rows.push_back(row);
    }
    return rows;
  };
  Json doc;
  doc["n"] = ops.n;
  doc["N"] = ops.N;
  Json g = Json::array();
  for (int i = 0; i < ops.n; ++i) g.push_back(ops.g(i));
  doc["g"] = g;
  Json upper = Json::array(), lower = Json::array();
  for (int a = 0; a < ops.n; ++a) {
    upper.push_back(matrix(ops.upper[a]));
    lower.push_back(matrix(ops.lower[a]));
  }
  doc["upper"] = upper;
  doc["lower"] = lower;
  return doc;
}

// Spin-tensor specs accepted on the command line: the named ones, or a JSON
// file {"parts": [{"alpha": [re, im], "x": [[re, im], ...]}, ...]}.
ControllingSpinor spinor_from_spec(const std::string& spec,
                                   const ConnectingOperators& ops,
                                   const SpinMetric& sm) {
  if (spec == "octonion") return octonion_spinor(ops, sm);
  if (spec == "pure-metric") return theta_from_decomposition(sm, {});
  std::ifstream in(spec);
  if (!in) throw InvalidInputError("cannot open theta spec " + spec);
  Json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw InvalidInputError(std::string("theta spec: ") + err.what());
  }
  std::vector<std::pair<Complex, CVec>> parts;
  for (const Json& part : doc.at("parts")) {
    const Json& a = part.at("alpha");
    Complex alpha(a.at(0).get<double>(), a.at(1).get<double>());
    const Json& xs = part.at("x");
    CVec x(xs.size());
    for (size_t i = 0; i < xs.size(); ++i)
      x(static_cast<int>(i)) =
          Complex(xs[i].at(0).get<double>(), xs[i].at(1).get<double>());
    parts.emplace_back(alpha, x);
  }
  return theta_from_decomposition(sm, parts);
}

int cmd_cayley_dickson(int levels, const std::string& out) {
  StructureTable t = cayley_dickson_table(levels);
  write_document(table_to_json(t), out);
  return kExitOk;
}

int cmd_forge(int n, const std::string& theta_spec, const std::string& out,
              const std::string& dump_ops, const CommonOptions& opt) {
  ConnectingOperators ops = build(n);
  emit_log(ops.log);
  SpinMetric sm = compute_spin_metric(ops);
  emit_log(sm.log);
  if (!dump_ops.empty()) write_document(operators_to_json(ops), dump_ops);
  ControllingSpinor th = spinor_from_spec(theta_spec, ops, sm);
  InclusionMap h = inclusion_operator(ops.g);
  StructureTable t = structural_constants(ops, th, h, opt.jobs);
  write_document(table_to_json(t), out);
  return kExitOk;
}

Json report_to_json(const IdentityReport& rep) {
  return Json{{"identity", rep.identity},
              {"max_residual", rep.max_residual},
              {"tolerance", rep.tolerance},
              {"holds", rep.holds},
              {"witness", rep.witness}};
}

int cmd_verify(const std::string& table_path, const std::string& suite,
               const CommonOptions& opt) {
  StructureTable t = load_table(table_path);
  SweepOptions sweep;
  // identity checks default to a looser gate than the rank-cut tolerance;
  // an explicit --abs-tol overrides it
  sweep.tolerance = (opt.abs_tol == 1e-10) ? 1e-8 : opt.abs_tol;
  sweep.seed = opt.seed;
  sweep.jobs = opt.jobs;

  Json checks = Json::array();
  bool all_hold = true;
  std::stringstream names(suite);
  std::string name;
  while (std::getline(names, name, ',')) {
    IdentityReport rep;
    if (name == "alternative") {
      rep = check_alternative(t, sweep);
    } else if (name == "weak-alternative") {
      rep = check_weak_alternativity(t, sweep);
    } else if (name == "flexible") {
      rep = check_flexible(t, sweep);
    } else if (name == "power-associative") {
      rep = check_power_associative(t, sweep);
    } else if (name == "normalization-weak" || name == "normalization-full") {
      NormalizationReport nr = check_normalization(t, sweep.tolerance, opt.jobs);
      rep = (name == "normalization-weak") ? nr.weak : nr.full;
    } else if (name == "metric-compat") {
      rep = check_metric_compat(t, sweep.tolerance);
    } else {
      throw InvalidInputError("unknown check name: " + name);
    }
    all_hold = all_hold && rep.holds;
    checks.push_back(report_to_json(rep));
  }
  Json doc{{"table", table_path}, {"checks", checks}, {"all_hold", all_hold}};
  std::cout << doc.dump(2) << "\n";
  return all_hold ? kExitOk : kExitIdentityFailed;
}

int cmd_symmetry(const std::string& table_path, int n,
                 const std::string& theta_spec, const CommonOptions& opt) {
  Tolerance tol{opt.abs_tol, opt.rel_tol};
  Json doc;
  if (!table_path.empty()) {
    StructureTable t = load_table(table_path);
    if (!t.identity) find_identity(t);
    doc["derivation_dim"] =
        static_cast<long>(derivation_dimension(t, tol, opt.jobs));
  } else {
    ConnectingOperators ops = build(n);
    emit_log(ops.log);
    SpinMetric sm = compute_spin_metric(ops);
    emit_log(sm.log);
    ControllingSpinor th = spinor_from_spec(theta_spec, ops, sm);
    InclusionMap h = inclusion_operator(ops.g);
    StructureTable t = structural_constants(ops, th, h, opt.jobs);
    SymmetryReport rep = symmetry_report(ops, sm, th.theta, t, tol, opt.jobs);
    Json ev = Json::array();
    for (int i = 0; i < rep.theta_eigenvalues.size(); ++i)
      ev.push_back(Json::array({rep.theta_eigenvalues(i).real(),
                                rep.theta_eigenvalues(i).imag()}));
    doc["so_dim"] = rep.so_dim;
    doc["derivation_dim"] = static_cast<long>(rep.derivation_dim);
    doc["stabilizer_dim"] = static_cast<long>(rep.stabilizer_dim);
    doc["theta_eigenvalues"] = ev;
    doc["class_label"] = rep.class_label;
  }
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_classify(int n, const std::string& theta_spec, const CommonOptions& opt) {
  ConnectingOperators ops = build(n);
  emit_log(ops.log);
  SpinMetric sm = compute_spin_metric(ops);
  emit_log(sm.log);
  ControllingSpinor th = spinor_from_spec(theta_spec, ops, sm);
  ThetaClass cls = classify_theta(sm, th.theta);
  (void)opt;
  Json ev = Json::array();
  for (int i = 0; i < cls.eigenvalues.size(); ++i)
    ev.push_back(Json::array({cls.eigenvalues(i).real(), cls.eigenvalues(i).imag()}));
  Json clusters = Json::array();
  for (const auto& [value, count] : cls.clusters)
    clusters.push_back(Json{{"value", Json::array({value.real(), value.imag()})},
                            {"count", count}});
  Json doc{{"eigenvalues", ev},
           {"clusters", clusters},
           {"significant", cls.significant},
           {"class_label", cls.label}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_zero_divisors(const std::string& table_path, int max_support,
                      const CommonOptions& opt) {
  StructureTable t = load_table(table_path);
  auto pairs = find_zero_divisors(t, max_support, opt.jobs);
  Json witnesses = Json::array();
  const size_t shown = std::min<size_t>(pairs.size(), 8);
  for (size_t p = 0; p < shown; ++p) {
    auto vec = [](const CVec& v) {
      Json out = Json::array();
      for (int i = 0; i < v.size(); ++i)
        out.push_back(Json::array({v(i).real(), v(i).imag()}));
      return out;
    };
    witnesses.push_back(
        Json{{"u", vec(pairs[p].first)}, {"v", vec(pairs[p].second)}});
  }
  Json doc{{"table", table_path},
           {"max_support", max_support},
           {"pairs_found", pairs.size()},
           {"witnesses", witnesses}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypercomplex algebra construction and verification"};
  app.require_subcommand(1);

  CommonOptions opt;

  auto* cd = app.add_subcommand("cayley-dickson", "doubling-ladder table");
  int levels = 3;
  std::string cd_out = "-";
  cd->add_option("--levels", levels, "doublings from the reals (0..5)")
      ->check(CLI::Range(0, 5));
  cd->add_option("--out", cd_out, "output path or - for stdout");
  add_common(cd, opt);

  auto* fg = app.add_subcommand("forge", "synthesize a table from operators");
  int forge_n = 8;
  std::string theta_spec = "octonion";
  std::string forge_out = "-";
  std::string dump_ops;
  fg->add_option("--n", forge_n, "rank of the operator chain (multiple of 8)");
  fg->add_option("--theta", theta_spec,
                 "octonion | pure-metric | path to a decomposition file");
  fg->add_option("--out", forge_out, "output path or - for stdout");
  fg->add_option("--dump-operators", dump_ops, "also write the operators here");
  add_common(fg, opt);

  auto* vf = app.add_subcommand("verify", "run identity checks on a table");
  std::string verify_table;
  std::string suite = "weak-alternative,alternative,flexible,power-associative";
  vf->add_option("--table", verify_table, "table document path")->required();
  vf->add_option("--suite", suite, "comma-separated check names");
  add_common(vf, opt);

  auto* sy = app.add_subcommand("symmetry", "symmetry dimensions and spectrum");
  std::string sym_table;
  int sym_n = 8;
  std::string sym_theta = "octonion";
  sy->add_option("--table", sym_table, "table document (derivations only)");
  sy->add_option("--n", sym_n, "operator rank for the full report");
  sy->add_option("--theta", sym_theta, "spin-tensor spec for the full report");
  add_common(sy, opt);

  auto* cl = app.add_subcommand("classify", "eigenvalue class of a spin-tensor");
  int cls_n = 8;
  std::string cls_theta = "octonion";
  cl->add_option("--n", cls_n, "operator rank");
  cl->add_option("--theta", cls_theta, "spin-tensor spec");
  add_common(cl, opt);

  auto* zd = app.add_subcommand("zero-divisors", "search a table for vanishing products");
  std::string zd_table;
  int max_support = 2;
  zd->add_option("--table", zd_table, "table document path")->required();
  zd->add_option("--max-support", max_support, "candidate support size (1 or 2)")
      ->check(CLI::Range(1, 2));
  add_common(zd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cd->parsed()) return cmd_cayley_dickson(levels, cd_out);
    if (fg->parsed()) return cmd_forge(forge_n, theta_spec, forge_out, dump_ops, opt);
    if (vf->parsed()) return cmd_verify(verify_table, suite, opt);
    if (sy->parsed()) return cmd_symmetry(sym_table, sym_n, sym_theta, opt);
    if (cl->parsed()) return cmd_classify(cls_n, cls_theta, opt);
    if (zd->parsed()) return cmd_zero_divisors(zd_table, max_support, opt);
  } catch (const ConstructionError& e) {
    std::fprintf(stderr, "{\"error\":\"construction\",\"message\":\"%s\"}\n",
                 e.what());
    return kExitConstruction;
  } catch (const Error& e) {
    std::fprintf(stderr, "{\"error\":\"input\",\"message\":\"%s\"}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":\"internal\",\"message\":\"%s\"}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
