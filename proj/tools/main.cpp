// osserman-lab: command-line surface over the curvature lab. Every
// subcommand is a thin adapter around the core modules with JSON I/O;
// exit codes are 0 = pass, 1 = verification failure, 2 = usage/IO error.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "osserman/acceptance.hpp"
#include "osserman/conformal.hpp"
#include "osserman/geodiff.hpp"
#include "osserman/jsonio.hpp"
#include "osserman/octonion.hpp"

using namespace oslab;
using io::json;

namespace {

int g_exit = 0;

cliff::CliffordSystem load_system(const std::string& path) {
  return io::system_from_json(io::parse(io::read_input(path)));
}

io::TensorFile load_tensor(const std::string& path) {
  return io::tensor_from_json(io::parse(io::read_input(path)));
}

void emit(const std::string& path, const json& j) { io::write_output(path, io::dump(j)); }

geo::PhiPoly phi_from_json(const json& spec, int dim) {
  geo::PhiPoly phi;
  phi.dim = dim;
  for (const auto& term : spec) {
    geo::PhiPoly::Term t;
    t.coeff = term.at(0).get<double>();
    t.powers = term.at(1).get<std::vector<int>>();
    if (static_cast<int>(t.powers.size()) != dim)
      throw std::runtime_error("schema violation: phi powers must have dim entries");
    phi.terms.push_back(t);
  }
  return phi;
}

// chart spec file: { "name": str, "dim": int, "params": { ... } }
geo::MetricChart chart_from_spec(const std::string& path) {
  json j = io::parse(io::read_input(path));
  if (!j.is_object() || !j.contains("name") || !j.contains("dim"))
    throw std::runtime_error("schema violation: chart spec needs 'name' and 'dim'");
  std::string name = j["name"].get<std::string>();
  int dim = j["dim"].get<int>();
  if (name == "euclidean") return geo::euclidean(dim);
  if (name == "sphere") return geo::sphere_stereographic(dim);
  if (name == "cp") return geo::fubini_study(dim / 2);
  if (name == "ch") return geo::complex_hyperbolic(dim / 2);
  if (name == "conformally_flat") {
    json params = j.contains("params") ? j["params"] : json::object();
    json phi = params.contains("phi") ? params["phi"] : json::array();
    return geo::conformally_flat(phi_from_json(phi, dim), dim);
  }
  throw std::runtime_error("unknown chart spec name: " + name);
}

geo::MetricChart chart_by_name(const std::string& name, int dim, const std::string& phi_json) {
  if (name == "euclidean") return geo::euclidean(dim);
  if (name == "sphere") return geo::sphere_stereographic(dim);
  if (name == "cp2") return geo::fubini_study(2);
  if (name == "cp3") return geo::fubini_study(3);
  if (name == "ch2") return geo::complex_hyperbolic(2);
  if (name == "ch3") return geo::complex_hyperbolic(3);
  if (name == "conformally_flat") {
    json spec = io::parse(phi_json.empty() ? std::string("[]") : phi_json);
    return geo::conformally_flat(phi_from_json(spec, dim), dim);
  }
  throw std::runtime_error("unknown chart: " + name +
                           " (euclidean, sphere, cp2, cp3, ch2, ch3, conformally_flat)");
}

json conformal_verify(int nu, int n, int eps, uint64_t seed) {
  conf::InvariantReport rep = conf::verify_invariants(nu, n, eps, seed);
  json out;
  for (const auto& [name, residual] : rep.residuals) out[name] = residual;
  out["allPass"] = rep.all_pass;
  if (!rep.all_pass) g_exit = 1;
  return out;
}

json chart_scan_report(const geo::MetricChart& chart, int points, double step, bool richardson,
                       uint64_t seed) {
  geo::FDConfig cfg{step, richardson};
  TolerancePolicy pol;
  pol.cluster_tol = 1e-3;

  auto pts = geo::default_points(chart, points, seed);
  geo::ChartScanReport rep = geo::osserman_scan(chart, pts, 20, cfg, pol, seed + 1);

  json out;
  out["chart"] = chart.name;
  out["dim"] = chart.dim;
  out["step"] = step;
  json parr = json::array();
  bool pass = true;
  for (const geo::ScanPoint& p : rep.points) {
    json e;
    e["x"] = p.x;
    e["rSpectrum"] = io::spectrum_to_json(p.r_report.reference_spectrum);
    e["rDeviation"] = p.r_report.max_spectrum_deviation;
    if (chart.dim >= 4) {
      e["weylSpectrum"] = io::spectrum_to_json(p.weyl_report.reference_spectrum);
      e["weylNorm"] = p.weyl_norm;
    }
    e["symmetryResidual"] = p.symmetry_residual;
    pass = pass && p.symmetry_residual < 10.0 * pol.fd_tol;
    parr.push_back(std::move(e));
  }
  out["points"] = std::move(parr);
  out["crossPointDeviation"] = rep.cross_point_deviation;
  double bianchi = geo::bianchi2_residual(chart, pts.front(), cfg);
  out["bianchi2Residual"] = bianchi;
  out["pass"] = pass;
  if (!pass) g_exit = 1;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"osserman-lab: Clifford structures, curvature algebra and chart cross-validation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path = "-";
  app.add_option("-o,--output", out_path, "output file (default stdout)")->capture_default_str();

  // ---- radon -------------------------------------------------------------
  int radon_n = 0;
  auto* radon = app.add_subcommand("radon", "print the Radon-Hurwitz bound for R^n");
  radon->add_option("n", radon_n, "dimension")->required();

  // ---- cliff -------------------------------------------------------------
  auto* cliffc = app.add_subcommand("cliff", "Clifford system construction");
  cliffc->require_subcommand(1);
  cliffc->fallthrough();
  int gen_n = 8, gen_nu = 1;
  double gen_lambda0 = 1.0;
  std::vector<double> gen_eta;
  uint64_t gen_seed = 0;
  auto* gen = cliffc->add_subcommand("gen", "generate a validated system");
  gen->add_option("--n", gen_n, "dimension")->required();
  gen->add_option("--nu", gen_nu, "number of structures")->required();
  gen->add_option("--lambda0", gen_lambda0, "constant lambda0");
  gen->add_option("--eta", gen_eta, "eta constants (defaults to 1, ..., 1)");
  gen->add_option("--seed", gen_seed, "conjugation seed (0 = canonical frame)");

  std::string ext_input = "-";
  double ext_xi = 1.0;
  uint64_t ext_seed = 1;
  auto* ext = cliffc->add_subcommand("extend8", "complete a system on R^8 to Cliff(7)");
  ext->add_option("-i,--input", ext_input, "system JSON (default stdin)");
  ext->add_option("--xi", ext_xi, "constant shift, xi not in {0} u {-eta_i}")->required();
  ext->add_option("--seed", ext_seed, "null-space sampling seed");

  // ---- tensor ------------------------------------------------------------
  auto* tensor = app.add_subcommand("tensor", "curvature tensor operations");
  tensor->require_subcommand(1);
  tensor->fallthrough();

  std::string make_kind = "clifford", make_input = "-";
  int make_nu = 1, make_eps = 1, make_n = 6;
  double make_lambda0 = 1.0;
  uint64_t make_rho_seed = 1;
  std::string make_rho_file;
  auto* make = tensor->add_subcommand("make", "build a tensor");
  make->add_option("--kind", make_kind, "clifford | confcs | model | constcurv")->required();
  make->add_option("-i,--input", make_input, "system JSON for kind=clifford/confcs");
  make->add_option("--nu", make_nu, "model nu (1 or 3)");
  make->add_option("--eps", make_eps, "model eps (+1 or -1)");
  make->add_option("--n", make_n, "dimension");
  make->add_option("--lambda0", make_lambda0, "constant curvature value");
  make->add_option("--rho-seed", make_rho_seed, "seeded random rho for kind=confcs");
  make->add_option("--rho-file", make_rho_file, "JSON {\"n\":., \"entries\":[...]} rho for confcs");

  std::string oss_input = "-";
  int oss_samples = 200;
  uint64_t oss_seed = 7;
  auto* oss = tensor->add_subcommand("osserman", "Jacobi spectra over sampled directions");
  oss->add_option("-i,--input", oss_input, "tensor JSON (default stdin)");
  oss->add_option("--samples", oss_samples, "sample budget (>= n)");
  oss->add_option("--seed", oss_seed, "direction seed");

  std::string weyl_input = "-";
  auto* weylc = tensor->add_subcommand("weyl", "totally trace-free part");
  weylc->add_option("-i,--input", weyl_input, "tensor JSON (default stdin)");

  // ---- oct ---------------------------------------------------------------
  auto* octc = app.add_subcommand("oct", "octonion arithmetic");
  octc->require_subcommand(1);
  octc->fallthrough();
  int oct_trials = 10000;
  uint64_t oct_seed = 1;
  auto* occheck = octc->add_subcommand("check", "identity-suite residual report");
  occheck->add_option("--trials", oct_trials, "random triples");
  occheck->add_option("--seed", oct_seed, "sample seed");
  octc->add_subcommand("table", "emit the signed basis-product table as JSON");

  // ---- conformal ---------------------------------------------------------
  auto* confc = app.add_subcommand("conformal", "conformal machinery checks");
  confc->require_subcommand(1);
  confc->fallthrough();
  int cv_nu = 1, cv_n = 6, cv_eps = 1;
  uint64_t cv_seed = 1;
  auto* cverify = confc->add_subcommand("verify", "residual report for the invariants");
  cverify->add_option("--nu", cv_nu, "1 or 3")->required();
  cverify->add_option("--n", cv_n, "dimension")->required();
  cverify->add_option("--eps", cv_eps, "+1 or -1");
  cverify->add_option("--seed", cv_seed, "sample seed");

  // ---- chart -------------------------------------------------------------
  auto* chartc = app.add_subcommand("chart", "metric chart pipeline");
  chartc->require_subcommand(1);
  chartc->fallthrough();
  std::string sc_chart = "sphere", sc_phi;
  int sc_points = 3, sc_dim = 4;
  double sc_step = 1e-3;
  bool sc_rich = false;
  uint64_t sc_seed = 11;
  std::string sc_spec;
  auto* scan = chartc->add_subcommand("scan", "per-point curvature and spectrum report");
  scan->add_option("--chart", sc_chart,
                   "euclidean | sphere | cp2 | cp3 | ch2 | ch3 | conformally_flat");
  scan->add_option("--spec", sc_spec, "chart spec JSON {\"name\",\"dim\",\"params\"}");
  scan->add_option("--points", sc_points, "number of interior sample points");
  scan->add_option("--step", sc_step, "finite-difference step");
  scan->add_option("--dim", sc_dim, "dimension for euclidean/sphere/conformally_flat");
  scan->add_flag("--richardson", sc_rich, "one Richardson extrapolation level");
  scan->add_option("--seed", sc_seed, "point sampling seed");
  scan->add_option("--phi", sc_phi, "conformally_flat monomials [[coeff,[powers]],...]");

  // ---- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  verify->fallthrough();
  uint64_t va_seed = 1;
  auto* vall = verify->add_subcommand("all", "run every acceptance suite");
  vall->add_option("--seed", va_seed, "run seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, usage errors exit 2
  }

  try {
    if (*radon) {
      std::cout << cliff::radon_bound(radon_n) << "\n";
    } else if (*gen) {
      if (gen_eta.empty()) gen_eta.assign(static_cast<size_t>(std::max(gen_nu, 0)), 1.0);
      cliff::CliffordSystem sys = cliff::generate(gen_n, gen_nu, gen_lambda0, gen_eta, gen_seed);
      emit(out_path, io::system_to_json(sys));
    } else if (*ext) {
      cliff::CliffordSystem sys = load_system(ext_input);
      emit(out_path, io::system_to_json(cliff::extend_to_seven(sys, ext_xi, ext_seed)));
    } else if (*make) {
      if (make_kind == "clifford") {
        cliff::CliffordSystem sys = load_system(make_input);
        emit(out_path, io::tensor_to_json(curv::from_clifford(sys), &sys));
      } else if (make_kind == "confcs") {
        cliff::CliffordSystem sys = load_system(make_input);
        SymOp rho = SymOp::zero(sys.n);
        if (!make_rho_file.empty()) {
          json j = io::parse(io::read_input(make_rho_file));
          auto entries = j.at("entries").get<std::vector<double>>();
          if (static_cast<int>(entries.size()) != sys.n * sys.n)
            throw std::runtime_error("schema violation: rho entries must be n*n");
          Mat m(sys.n, sys.n);
          m.data() = entries;
          rho = SymOp(m);
        } else {
          Rng rng(make_rho_seed);
          Mat m(sys.n, sys.n);
          for (int i = 0; i < sys.n; ++i)
            for (int j2 = 0; j2 < sys.n; ++j2) m(i, j2) = rng.normal();
          rho = SymOp(m);
        }
        emit(out_path, io::tensor_to_json(curv::from_confcs(rho, sys), &sys));
      } else if (make_kind == "model") {
        cliff::CliffordSystem sys = curv::model_system(make_nu, make_eps, make_n);
        emit(out_path, io::tensor_to_json(curv::from_clifford(sys), &sys));
      } else if (make_kind == "constcurv") {
        cliff::CliffordSystem sys = cliff::generate(make_n, 0, make_lambda0, {}, 0);
        emit(out_path, io::tensor_to_json(curv::from_clifford(sys), &sys));
      } else {
        throw std::runtime_error("unknown --kind: " + make_kind);
      }
    } else if (*oss) {
      io::TensorFile tf = load_tensor(oss_input);
      TolerancePolicy pol;
      curv::OssermanReport rep = curv::osserman_check(
          tf.r, oss_samples, pol, oss_seed, tf.sys ? &*tf.sys : nullptr);
      emit(out_path, io::osserman_to_json(rep));
      if (!rep.is_osserman) g_exit = 1;
    } else if (*weylc) {
      io::TensorFile tf = load_tensor(weyl_input);
      emit(out_path, io::tensor_to_json(curv::weyl(tf.r), tf.sys ? &*tf.sys : nullptr));
    } else if (*occheck) {
      Rng rng(oct_seed);
      double worst = 0.0;
      for (int t = 0; t < oct_trials; ++t) {
        oct::Octonion a, b, c;
        for (int i = 0; i < 8; ++i) {
          a.c[i] = rng.uniform(-1.0, 1.0);
          b.c[i] = rng.uniform(-1.0, 1.0);
          c.c[i] = rng.uniform(-1.0, 1.0);
        }
        double r = 0.0;
        using oct::conj;
        using oct::inner;
        using oct::mul;
        auto mag = [](const oct::Octonion& v) {
          double m = 0.0;
          for (double x : v.c) m = std::max(m, std::fabs(x));
          return m;
        };
        r = std::max(r, mag(mul(a, mul(a, b)) - mul(mul(a, a), b)));
        r = std::max(r, std::fabs(inner(a, mul(b, c)) - inner(mul(conj(b), a), c)));
        r = std::max(r, std::fabs(inner(mul(a, b), mul(a, c)) - oct::norm_sq(a) * inner(b, c)));
        r = std::max(r, std::fabs(oct::norm_sq(mul(a, b)) - oct::norm_sq(a) * oct::norm_sq(b)));
        worst = std::max(worst, r);
      }
      json rep;
      rep["trials"] = oct_trials;
      rep["maxResidual"] = worst;
      rep["pass"] = worst < 1e-12;
      emit(out_path, rep);
      if (worst >= 1e-12) g_exit = 1;
    } else if (octc->got_subcommand("table")) {
      const oct::MulTable& t = oct::mul_table();
      json rows = json::array();
      for (int i = 0; i < 8; ++i) {
        json row = json::array();
        for (int j = 0; j < 8; ++j)
          row.push_back(json::array({static_cast<int>(t.sign[i][j]), t.index[i][j]}));
        rows.push_back(std::move(row));
      }
      json rep;
      rep["basis"] = json::array({"1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"});
      rep["products"] = std::move(rows);
      emit(out_path, rep);
    } else if (*cverify) {
      emit(out_path, conformal_verify(cv_nu, cv_n, cv_eps, cv_seed));
    } else if (*scan) {
      geo::MetricChart chart = sc_spec.empty() ? chart_by_name(sc_chart, sc_dim, sc_phi)
                                               : chart_from_spec(sc_spec);
      emit(out_path, chart_scan_report(chart, sc_points, sc_step, sc_rich, sc_seed));
    } else if (*vall) {
      accept::Report rep = accept::run_all(va_seed);
      std::cerr << accept::summary_lines(rep);
      emit(out_path, accept::report_to_json(rep));
      if (!rep.all_pass) g_exit = 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
