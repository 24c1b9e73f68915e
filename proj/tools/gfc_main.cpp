// Command-line front end: de Rham tables, Lie algebra cohomology slices,
// and verification of the tensor-decomposition identity
//   H*_GF(V, A (x) W)  =  H*_dR(X) (x) H*(L+, W).
//
// Exit codes: 0 success, 1 bad configuration, 2 a comparison failed,
// 3 results did not stabilize.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gfc/derham.hpp"
#include "gfc/kunneth.hpp"
#include "gfc/random_gen.hpp"
#include "gfc/report.hpp"
#include "gfc/slices.hpp"

namespace {

using namespace gfc;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitNotStabilized = 3;

struct Options {
  std::string variety = "affine";
  int n = 1;
  std::string punctures = "0,1,2";
  std::string module = "trivial";
  std::string module_file;
  int k = -1;
  int kmax = 2;
  int pmax = 6;
  int truncation = 4;
  int depth = 8;
  std::string weight = "0";
  unsigned samples = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool json = false;
};

VarietyKind parse_variety(const Options& o) {
  if (o.variety == "affine") return VarietyKind::affine(o.n);
  if (o.variety == "torus") return VarietyKind::torus(o.n);
  if (o.variety == "sphere") {
    std::vector<Rational> as;
    std::stringstream ss(o.punctures);
    std::string tok;
    while (std::getline(ss, tok, ',')) as.push_back(parse_rational(tok));
    return VarietyKind::punctured_sphere(std::move(as));
  }
  throw std::invalid_argument("unknown variety: " + o.variety);
}

LPlusModule module_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int n = j.value("n", 1);
  if (kind == "trivial") return LPlusModule::trivial(n);
  if (kind == "weight")
    return LPlusModule::weight_module_1d(
        parse_rational(j.at("lambda").is_string()
                           ? j.at("lambda").get<std::string>()
                           : j.at("lambda").dump()));
  if (kind == "gln") return LPlusModule::standard_gln(n);
  if (kind == "explicit") {
    std::vector<Rational> weights;
    for (const auto& w : j.at("weights"))
      weights.push_back(
          parse_rational(w.is_string() ? w.get<std::string>() : w.dump()));
    std::map<std::pair<std::vector<int>, int>, std::vector<SparseVec>> actions;
    for (const auto& a : j.at("actions")) {
      std::vector<int> exponent = a.at("exponent").get<std::vector<int>>();
      int direction = a.at("direction").get<int>();
      // matrix[i][j] = coefficient of w_i in g . w_j
      std::vector<SparseVec> cols(weights.size());
      const auto& m = a.at("matrix");
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t jj = 0; jj < m[i].size(); ++jj) {
          Rational c = parse_rational(
              m[i][jj].is_string() ? m[i][jj].get<std::string>()
                                   : m[i][jj].dump());
          if (c != 0) cols[jj].add(i, c);
        }
      actions[{exponent, direction}] = std::move(cols);
    }
    return LPlusModule(n, j.value("name", std::string("explicit")),
                       std::move(weights), std::move(actions));
  }
  throw std::invalid_argument("unknown module kind: " + kind);
}

LPlusModule parse_module(const Options& o) {
  if (!o.module_file.empty()) {
    std::ifstream in(o.module_file);
    if (!in) throw std::invalid_argument("cannot read " + o.module_file);
    Json j;
    in >> j;
    return module_from_json(j);
  }
  if (o.module == "trivial") return LPlusModule::trivial(o.n);
  if (o.module == "gln") return LPlusModule::standard_gln(o.n);
  if (o.module.rfind("weight:", 0) == 0)
    return LPlusModule::weight_module_1d(parse_rational(o.module.substr(7)));
  throw std::invalid_argument("unknown module spec: " + o.module);
}

Json config_echo(const Options& o) {
  Json c;
  c["variety"] = o.variety;
  c["n"] = o.n;
  c["punctures"] = o.punctures;
  c["module"] = o.module_file.empty() ? o.module : "file:" + o.module_file;
  c["k"] = o.k;
  c["kmax"] = o.kmax;
  c["pmax"] = o.pmax;
  c["truncation"] = o.truncation;
  c["depth"] = o.depth;
  c["weight"] = o.weight;
  c["samples"] = o.samples;
  c["threads"] = o.threads;
  return c;
}

void emit(const Json& j, bool json, const std::string& text) {
  if (json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int run_derham(const Options& o) {
  VarietyKind v = parse_variety(o);
  int k_lo = o.k >= 0 ? o.k : 0;
  int k_hi = o.k >= 0 ? o.k : v.n;
  std::vector<DerhamResult> results(k_hi - k_lo + 1);
  parallel_for(results.size(), o.threads, [&](std::size_t i) {
    results[i] = derham_betti(v, k_lo + static_cast<int>(i), o.truncation);
  });
  Json j = report_envelope("derham", config_echo(o), o.seed);
  j["results"] = Json::array();
  std::ostringstream text;
  bool stab = true;
  text << "de Rham Betti numbers, " << v.name() << " (truncation "
       << o.truncation << ")\n";
  for (const auto& r : results) {
    j["results"].push_back(to_json(r));
    stab = stab && r.stabilized;
    text << "  b_" << r.degree << " = " << r.betti
         << (r.stabilized ? "" : "  [NOT STABILIZED]") << "\n";
  }
  emit(j, o.json, text.str());
  return stab ? kExitOk : kExitNotStabilized;
}

int run_cohomology_lplus(const Options& o) {
  LPlusModule W = parse_module(o);
  LPlusAlgebra lp = build_lplus(o.n, o.depth);
  Rational w = parse_rational(o.weight);
  int k_lo = o.k >= 0 ? o.k : 0;
  int k_hi = o.k >= 0 ? o.k : o.kmax;
  std::vector<SliceReport> results(k_hi - k_lo + 1);
  parallel_for(results.size(), o.threads, [&](std::size_t i) {
    results[i] = lplus_cohomology(lp, W, k_lo + static_cast<int>(i), w);
  });
  Json j = report_envelope("cohomology lplus", config_echo(o), o.seed);
  j["results"] = Json::array();
  std::ostringstream text;
  text << "H^k(L+, " << W.name() << ") at weight " << to_string(w) << "\n";
  for (const auto& r : results) {
    j["results"].push_back(to_json(r));
    text << "  k=" << r.degree << "  betti=" << r.betti
         << "  (cocycles " << r.dim_cocycles << ", boundaries "
         << r.rank_boundaries << ")\n";
  }
  emit(j, o.json, text.str());
  return kExitOk;
}

int run_cohomology_gf(const Options& o) {
  VarietyKind v = parse_variety(o);
  LPlusModule W = parse_module(o);
  Rational w = parse_rational(o.weight);
  int k_lo = o.k >= 0 ? o.k : 0;
  int k_hi = o.k >= 0 ? o.k : o.kmax;
  std::vector<GfStabilization> results(k_hi - k_lo + 1);
  parallel_for(results.size(), o.threads, [&](std::size_t i) {
    results[i] =
        stabilized_gf_cohomology(v, W, k_lo + static_cast<int>(i), w, o.pmax);
  });
  Json j = report_envelope("cohomology gf", config_echo(o), o.seed);
  j["results"] = Json::array();
  std::ostringstream text;
  bool stab = true;
  text << "H^k_GF(V, A(x)" << W.name() << ") on " << v.name() << ", weight "
       << to_string(w) << ", orders 1.." << o.pmax << "\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    Json e;
    e["k"] = k_lo + static_cast<int>(i);
    e["dims_per_order"] = r.dims;
    e["betti"] = r.dims.back();
    e["dim_cocycles"] = r.dim_cocycles_last;
    e["rank_boundaries"] = r.rank_boundaries_last;
    e["stabilized"] = r.stabilized;
    j["results"].push_back(e);
    stab = stab && r.stabilized;
    text << "  k=" << k_lo + static_cast<int>(i) << "  betti=" << r.dims.back()
         << (r.stabilized ? "" : "  [NOT STABILIZED]") << "\n";
  }
  emit(j, o.json, text.str());
  return stab ? kExitOk : kExitNotStabilized;
}

int run_verify_main(const Options& o) {
  VarietyKind v = parse_variety(o);
  LPlusModule W = parse_module(o);
  MainComparison r =
      compare_main_theorem(v, W, o.kmax, o.pmax, o.truncation, o.depth);
  Json j = report_envelope("verify main", config_echo(o), o.seed);
  j["comparison"] = to_json(r);
  std::ostringstream text;
  text << "tensor decomposition check, " << r.variety << ", W = " << r.module
       << "\n  rhs:";
  for (auto d : r.rhs.dims) text << " " << d;
  if (r.direct_side) {
    text << "\n  direct:";
    for (auto d : r.direct_dims) text << " " << d;
    text << "\n  equal: " << (r.all_equal ? "yes" : "NO");
  }
  text << "\n  stabilized: " << (r.all_stabilized ? "yes" : "NO") << "\n";
  emit(j, o.json, text.str());
  if (r.direct_side && !r.all_equal) return kExitMismatch;
  if (!r.all_stabilized) return kExitNotStabilized;
  return kExitOk;
}

int run_verify_star_leibniz(const Options& o) {
  VarietyKind v = parse_variety(o);
  SdContext c{v, build_lplus(v.n, 4), parse_module(o)};
  RandomGen gen(o.seed);
  unsigned passed = 0;
  for (unsigned s = 0; s < o.samples; ++s) {
    std::uniform_int_distribution<int> dk(0, 1), dm(0, 1);
    VCochain alpha = gen.acochain(v, dk(gen.engine()), 2);
    GCochain beta = gen.gcochain(c.g, c.W, 1 + dm(gen.engine()));
    std::vector<SdElem> args;
    for (int i = 0; i < alpha.degree + beta.degree + 1; ++i)
      args.push_back(gen.sdelem(c, 2));
    if (verify_star_leibniz(c, alpha, beta, {args})) ++passed;
  }
  Json j = report_envelope("verify star-leibniz", config_echo(o), o.seed);
  j["passed"] = passed;
  j["total"] = o.samples;
  std::ostringstream text;
  text << "star-Leibniz identity: " << passed << "/" << o.samples
       << " samples passed\n";
  emit(j, o.json, text.str());
  return passed == o.samples ? kExitOk : kExitMismatch;
}

int run_report(const Options& o) {
  Json j = report_envelope("report", config_echo(o), o.seed);
  std::ostringstream text;
  bool ok = true, stab = true;

  j["derham"] = Json::array();
  text << "== de Rham tables ==\n";
  for (int n = 1; n <= 3; ++n)
    for (const auto& v : {VarietyKind::affine(n), VarietyKind::torus(n)}) {
      Json row;
      row["variety"] = v.name();
      std::vector<std::size_t> dims;
      for (int k = 0; k <= n; ++k) {
        DerhamResult r = derham_betti(v, k, o.truncation);
        dims.push_back(r.betti);
        stab = stab && r.stabilized;
      }
      row["dims"] = dims;
      j["derham"].push_back(row);
      text << "  " << v.name() << ":";
      for (auto d : dims) text << " " << d;
      text << "\n";
    }
  for (int m = 1; m <= 3; ++m) {
    std::vector<Rational> as;
    for (int i = 0; i < m; ++i) as.push_back(i);
    VarietyKind v = VarietyKind::punctured_sphere(as);
    Json row;
    row["variety"] = v.name();
    std::vector<std::size_t> dims;
    for (int k = 0; k <= 1; ++k) {
      DerhamResult r = derham_betti(v, k, o.truncation);
      dims.push_back(r.betti);
      stab = stab && r.stabilized;
    }
    row["dims"] = dims;
    j["derham"].push_back(row);
    text << "  " << v.name() << ":";
    for (auto d : dims) text << " " << d;
    text << "\n";
  }

  j["main_theorem"] = Json::array();
  text << "== tensor decomposition, direct vs assembled ==\n";
  std::vector<std::pair<VarietyKind, LPlusModule>> cases = {
      {VarietyKind::affine(1), LPlusModule::trivial(1)},
      {VarietyKind::affine(1), LPlusModule::weight_module_1d(1)},
      {VarietyKind::affine(1), LPlusModule::weight_module_1d(-1)},
      {VarietyKind::torus(1), LPlusModule::trivial(1)},
  };
  for (const auto& [v, W] : cases) {
    MainComparison r =
        compare_main_theorem(v, W, o.kmax, o.pmax, o.truncation, o.depth);
    j["main_theorem"].push_back(to_json(r));
    ok = ok && (!r.direct_side || r.all_equal);
    stab = stab && r.all_stabilized;
    text << "  " << r.variety << " / " << r.module << ": ";
    for (auto d : r.rhs.dims) text << d << " ";
    text << (r.all_equal ? "(direct agrees)" : "(MISMATCH)") << "\n";
  }

  j["kn_assembly"] = Json::array();
  text << "== punctured sphere assembled tables ==\n";
  for (int m = 1; m <= 3; ++m) {
    std::vector<Rational> as;
    for (int i = 0; i < m; ++i) as.push_back(i);
    VarietyKind v = VarietyKind::punctured_sphere(as);
    BettiTable t = assemble_rhs(v, LPlusModule::weight_module_1d(1), o.kmax + 1,
                                o.truncation, o.depth);
    j["kn_assembly"].push_back(to_json(t));
    stab = stab && t.all_stabilized();
    text << "  m=" << m << ":";
    for (auto d : t.dims) text << " " << d;
    text << "\n";
  }

  j["all_equal"] = ok;
  j["all_stabilized"] = stab;
  emit(j, o.json, text.str());
  if (!ok) return kExitMismatch;
  if (!stab) return kExitNotStabilized;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Lie algebra cohomology tables for polynomial vector fields"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--variety", o.variety, "affine | torus | sphere");
    cmd->add_option("--n", o.n, "number of variables");
    cmd->add_option("--punctures", o.punctures,
                    "comma-separated rational punctures (sphere)");
    cmd->add_option("--module", o.module, "trivial | weight:<q> | gln");
    cmd->add_option("--module-file", o.module_file, "module spec JSON file");
    cmd->add_option("--k", o.k, "single degree (default: a range)");
    cmd->add_option("--kmax", o.kmax, "maximum degree");
    cmd->add_option("--pmax", o.pmax, "maximum finiteness order");
    cmd->add_option("--truncation", o.truncation, "de Rham window size");
    cmd->add_option("--depth", o.depth, "L+ truncation degree");
    cmd->add_option("--weight", o.weight, "slice weight (rational)");
    cmd->add_option("--samples", o.samples, "randomized sample count");
    cmd->add_option("--seed", o.seed, "random seed (recorded in reports)");
    cmd->add_option("--threads", o.threads, "worker cap; 1 = serial");
    cmd->add_flag("--json", o.json, "JSON output");
  };

  CLI::App* derham = app.add_subcommand("derham", "de Rham Betti numbers");
  add_common(derham);
  CLI::App* coh = app.add_subcommand("cohomology", "Lie algebra cohomology");
  coh->require_subcommand(1);
  CLI::App* coh_lplus = coh->add_subcommand("lplus", "H^k(L+, W) weight slices");
  add_common(coh_lplus);
  CLI::App* coh_gf =
      coh->add_subcommand("gf", "direct finite-order cohomology of V");
  add_common(coh_gf);
  CLI::App* verify = app.add_subcommand("verify", "identity checks");
  verify->require_subcommand(1);
  CLI::App* verify_main =
      verify->add_subcommand("main", "tensor decomposition comparison");
  add_common(verify_main);
  CLI::App* verify_star =
      verify->add_subcommand("star-leibniz", "d(a*b) = da*b + (-1)^k a*db");
  add_common(verify_star);
  CLI::App* report = app.add_subcommand("report", "full reproduction battery");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (derham->parsed()) return run_derham(o);
    if (coh_lplus->parsed()) return run_cohomology_lplus(o);
    if (coh_gf->parsed()) return run_cohomology_gf(o);
    if (verify_main->parsed()) return run_verify_main(o);
    if (verify_star->parsed()) return run_verify_star_leibniz(o);
    if (report->parsed()) return run_report(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return kExitBadConfig;
}
