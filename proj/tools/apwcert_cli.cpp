// SPDX-License-Identifier: Apache-2.0
//
// apwcert command line: muffin-tin APW secular solver with
// boundary-discontinuity certificates.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <future>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "apwcert/certificate.hpp"
#include "apwcert/errors.hpp"
#include "apwcert/experiments.hpp"
#include "apwcert/geometry.hpp"
#include "apwcert/orthonorm.hpp"
#include "apwcert/radial.hpp"
#include "apwcert/secular.hpp"
#include "apwcert/sobolev.hpp"

namespace {

using namespace apwcert;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// lengths accept the literal "pi" (units: hbar^2/2m = 1, bare -Laplacian + V)
double parse_length(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "pi") return kPi;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end && *end == '\0') return x;
  }
  throw ConfigError(std::string("expected a number or \"pi\" for ") + what);
}

double parse_length_str(const std::string& s, const char* what) {
  if (s == "pi") return kPi;
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end && *end == '\0' && !s.empty()) return x;
  throw ConfigError(std::string("expected a number or \"pi\" for ") + what);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse failure in " + path + ": " + e.what());
  }
  return j;
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + *path);
  out << text;
}

struct ProblemSetup {
  geometry::MuffinTinGeometry geom;
  secular::PotentialSpec pot;
  std::vector<double> sphere_v0;
  int n_grid = 1500;
};

json require_key(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("config key missing: ") + key);
  return cfg.at(key);
}

ProblemSetup parse_problem(const json& cfg) {
  ProblemSetup p;
  const json cell = require_key(cfg, "cell");
  if (cell.is_array() && cell.size() == 3 && cell[0].is_array()) {
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 3; ++r) p.geom.cell(r, c) = parse_length(cell[c][r], "cell");
  } else {
    const double side = parse_length(cell, "cell");
    p.geom.cell = side * Eigen::Matrix3d::Identity();
  }
  if (cfg.contains("spheres")) {
    for (const auto& s : cfg.at("spheres")) {
      geometry::Sphere sp;
      const auto& c = s.at("center");
      for (int d = 0; d < 3; ++d) sp.center[d] = parse_length(c.at(d), "sphere center");
      sp.radius = parse_length(s.at("radius"), "sphere radius");
      p.geom.spheres.push_back(sp);
      const double v0 = s.value("v0", 0.0);
      p.sphere_v0.push_back(v0);
      p.pot.sphere.push_back(radial::RadialPotential::constant_well(v0, sp.radius));
    }
  }
  p.pot.interstitial = cfg.value("interstitial_v", 0.0);
  p.n_grid = cfg.value("n_grid", 1500);
  p.geom.validate();
  return p;
}

geometry::Vec3 parse_vec(const json& v) {
  if (!v.is_array() || v.size() != 3) throw ConfigError("expected a 3-vector");
  return {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
}

// builder for the E-dependent APW secular system of one k point
std::function<secular::SecularSystem(double)> make_builder(const ProblemSetup& p,
                                                           const std::shared_ptr<const geometry::MuffinTinGeometry>& g,
                                                           const geometry::Vec3& k, const std::vector<geometry::Vec3>& gs,
                                                           int l_max) {
  return [&p, g, k, gs, l_max](double E) {
    std::vector<std::shared_ptr<const apw::SphereBasisData>> rad;
    for (size_t a = 0; a < g->spheres.size(); ++a)
      rad.push_back(apw::build_sphere_basis(p.pot.sphere[a], l_max, E, g->spheres[a].radius, p.n_grid));
    std::vector<apw::ApwFunction> basis;
    basis.reserve(gs.size());
    for (const auto& G : gs) basis.push_back(apw::make_apw_function(g, rad, k, G, l_max));
    return secular::assemble(basis, *g, p.pot);
  };
}

int run_solve_well(const std::string& v0s, const std::string& as, double tol, bool as_json) {
  const double V0 = parse_length_str(v0s, "--v0");
  const double a = parse_length_str(as, "--a");
  const double E1 = radial::find_bound_state(V0, a, tol);
  const auto n = radial::normalize_well_state(V0, a, E1);
  const double alpha = std::sqrt(V0 - std::abs(E1)), beta = std::sqrt(std::abs(E1));
  const double cont = n.A * std::sin(alpha * a) - n.C * std::exp(-beta * a);
  const double P = 0.5 * a - std::sin(2.0 * alpha * a) / (4.0 * alpha);
  const double Q = std::exp(-2.0 * beta * a) / (2.0 * beta);
  const double unit = n.A * n.A * P + n.C * n.C * Q - 1.0;
  if (as_json) {
    json j;
    j["E1"] = E1;
    j["A"] = n.A;
    j["C"] = n.C;
    j["continuity_residual"] = cont;
    j["unit_norm_residual"] = unit;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("E1 = %.9f\nA  = %.9f\nC  = %.9f\ncontinuity residual = %.3e\nunit-norm residual  = %.3e\n", E1, n.A,
                n.C, cont, unit);
  }
  return 0;
}

int run_sweep_well(const std::string& v0s, const std::string& as, double gmax, double gstep,
                   const std::optional<std::string>& out, const std::optional<std::string>& plot_out) {
  const double V0 = parse_length_str(v0s, "--v0");
  const double a = parse_length_str(as, "--a");
  std::vector<double> gammas;
  for (double g = 0.0; g <= gmax + 1e-12; g += gstep) gammas.push_back(g);
  const auto rows = experiments::run_well_sweep(V0, a, gammas);
  write_output(out, experiments::sweep_to_csv(rows));
  if (plot_out) {
    std::string pairs = "gamma,tilde_E1\n";
    char buf[128];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.gamma, r.tilde_E1);
      pairs += buf;
    }
    write_output(plot_out, pairs);
  }
  return 0;
}

int run_apw_bands(const std::string& cfg_path, const std::optional<std::string>& out) {
  const json cfg = load_config(cfg_path);
  const ProblemSetup p = parse_problem(cfg);
  auto g = std::make_shared<const geometry::MuffinTinGeometry>(p.geom);
  const int l_max = cfg.value("l_max", 30);
  const int l_eval_extra = cfg.value("l_eval_extra", 34);
  const int g_count = cfg.value("g_count", 27);
  std::vector<geometry::Vec3> ks;
  if (cfg.contains("k_list"))
    for (const auto& kv : cfg.at("k_list")) ks.push_back(parse_vec(kv));
  else
    ks.push_back(parse_vec(require_key(cfg, "k")));

  // APWCERT_THREADS (the only environment variable read): parallel map over
  // k points, output ordering fixed by input order
  int n_threads = 1;
  if (const char* tv = std::getenv("APWCERT_THREADS")) n_threads = std::max(1, std::atoi(tv));

  auto solve_one = [&](const geometry::Vec3& k) {
    auto gs = geometry::reciprocal_vectors_sorted(*g, 4, k);
    if (static_cast<int>(gs.size()) < g_count) throw ConfigError("g_count larger than the generated shell set");
    gs.resize(g_count);
    const auto empty = secular::empty_lattice_bands(k, gs, *g);
    json entry;
    entry["k"] = {k.x(), k.y(), k.z()};
    entry["empty_lattice"] = empty;
    double lo, hi;
    int n_scan;
    if (cfg.contains("scan")) {
      lo = cfg.at("scan").value("lo", empty.front() - 0.5);
      hi = cfg.at("scan").value("hi", empty.back() + 0.5);
      n_scan = cfg.at("scan").value("n", 200);
    } else {
      lo = empty.front() - 0.5;
      hi = empty.back() + 0.5;
      n_scan = 200;
    }
    const auto scan = secular::scan_nonlinear_secular(make_builder(p, g, k, gs, l_max), lo, hi, n_scan);
    entry["bands"] = scan.roots;
    if (!scan.excluded.empty()) {
      json ex = json::array();
      for (const auto& [a, b] : scan.excluded) ex.push_back({a, b});
      entry["excluded_intervals"] = ex;
    }
    // per-sphere jump norms of every basis function at every band energy
    double worst = 0.0;
    json jumps = json::array();
    for (double E : scan.roots) {
      std::vector<std::shared_ptr<const apw::SphereBasisData>> rad;
      for (size_t a = 0; a < g->spheres.size(); ++a)
        rad.push_back(apw::build_sphere_basis(p.pot.sphere[a], l_max, E, g->spheres[a].radius, p.n_grid));
      json per_root = json::array();
      for (const auto& G : gs) {
        const apw::ApwFunction f = apw::make_apw_function(g, rad, k, G, l_max);
        for (size_t a = 0; a < g->spheres.size(); ++a) {
          const apw::BoundaryJump bj = apw::boundary_jump(f, a, l_max + l_eval_extra);
          sobolev::SphereFunction jf = sobolev::SphereFunction::zero(bj.R, bj.l_eval);
          jf.coeffs = bj.g;
          const double h32 = sobolev::boundary_sobolev_norm(jf, 1.5);
          worst = std::max(worst, h32);
          per_root.push_back(h32);
        }
      }
      jumps.push_back(per_root);
    }
    entry["jump_h32"] = jumps;
    entry["max_jump_h32"] = worst;
    return entry;
  };

  json result = json::array();
  if (n_threads <= 1 || ks.size() <= 1) {
    for (const auto& k : ks) result.push_back(solve_one(k));
  } else {
    std::vector<std::future<json>> futs;
    futs.reserve(ks.size());
    for (const auto& k : ks) futs.push_back(std::async(std::launch::async, solve_one, k));
    for (auto& f : futs) result.push_back(f.get());
  }
  write_output(out, json{{"results", result}}.dump(2));
  return 0;
}

int run_apw_convergence_cmd(const std::string& cfg_path, const std::optional<std::string>& out) {
  const json cfg = load_config(cfg_path);
  const ProblemSetup p = parse_problem(cfg);
  if (p.sphere_v0.empty()) throw ConfigError("apw-convergence requires at least one sphere");
  const geometry::Vec3 k = parse_vec(require_key(cfg, "k"));
  const int g_count = cfg.value("g_count", 27);
  std::vector<int> l_list;
  for (const auto& v : require_key(cfg, "l_max_list")) l_list.push_back(v.get<int>());
  std::optional<std::pair<double, double>> window;
  if (cfg.contains("scan"))
    window = std::make_pair(cfg.at("scan").at("lo").get<double>(), cfg.at("scan").at("hi").get<double>());
  const int n_scan = cfg.contains("scan") ? cfg.at("scan").value("n", 120) : 120;
  const auto table =
      experiments::run_apw_convergence(p.geom, p.sphere_v0.front(), k, g_count, l_list, window, n_scan);
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row;
    row["l_max"] = r.l_max;
    row["root"] = r.root;
    row["jump_h32_total"] = r.jump_h32_total;
    row["tail_coeff_sq"] = r.tail_coeff_sq;
    row["certificate"] = json::parse(r.cert.to_json());
    rows.push_back(row);
  }
  write_output(out, json{{"empty_lattice", table.empty_lattice}, {"rows", rows}}.dump(2));
  return 0;
}

int run_certify(const std::string& cfg_path, const std::optional<std::string>& out) {
  const json cfg = load_config(cfg_path);
  const ProblemSetup p = parse_problem(cfg);
  auto g = std::make_shared<const geometry::MuffinTinGeometry>(p.geom);
  const geometry::Vec3 k = parse_vec(require_key(cfg, "k"));
  const int l_max = cfg.value("l_max", 8);
  const int l_eval_extra = cfg.value("l_eval_extra", 34);
  const int g_count = cfg.value("g_count", 27);
  const int m0 = cfg.value("m0", 1);
  // the bound constant C is not derivable here; the certificate carries
  // whatever the user supplies, tagged as such
  if (!cfg.contains("C")) throw ConfigError("certify: config must supply the constant C");
  const double C = cfg.at("C").get<double>();
  const auto prov = certificate::CProvenance::UserSupplied;
  auto gs = geometry::reciprocal_vectors_sorted(*g, 4, k);
  if (static_cast<int>(gs.size()) < g_count) throw ConfigError("g_count larger than the generated shell set");
  gs.resize(g_count);

  const json scan = require_key(cfg, "scan");
  const auto result = secular::scan_nonlinear_secular(make_builder(p, g, k, gs, l_max), scan.at("lo").get<double>(),
                                                      scan.at("hi").get<double>(), scan.value("n", 120));
  if (result.roots.empty()) throw NoBracket("certify: no secular root in the scan window");
  const double E = result.roots.front();
  std::vector<std::shared_ptr<const apw::SphereBasisData>> rad;
  for (size_t a = 0; a < g->spheres.size(); ++a)
    rad.push_back(apw::build_sphere_basis(p.pot.sphere[a], l_max, E, g->spheres[a].radius, p.n_grid));
  std::vector<apw::ApwFunction> basis;
  for (const auto& G : gs) basis.push_back(apw::make_apw_function(g, rad, k, G, l_max));
  const auto sys = secular::assemble(basis, *g, p.pot);
  const auto solved = secular::solve_generalized(sys);
  std::vector<std::vector<apw::BoundaryJump>> jumps(basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t a = 0; a < g->spheres.size(); ++a)
      jumps[i].push_back(apw::boundary_jump(basis[i], a, l_max + l_eval_extra));
  const auto cert = certificate::a_posteriori(solved, jumps, m0, C, prov);
  json j = json::parse(cert.to_json());
  j["root"] = E;
  write_output(out, j.dump(2));
  return 0;
}

int run_orthonormalize(const std::optional<std::string>& in, const std::optional<std::string>& out, bool suite,
                       uint64_t seed, int count, int max_m) {
  if (suite) {
    // randomized Lemma-bound suite: gram = I + eps with 2||eps||_1 + eps_max < 1
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> Md(1, max_m);
    std::uniform_real_distribution<double> sd(0.05, 0.95);
    int bound_failures = 0, resid_failures = 0;
    double worst_resid = 0.0, worst_ratio = 0.0;
    for (int t = 0; t < count; ++t) {
      const int M = Md(gen);
      Eigen::MatrixXcd E(M, M);
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) E(i, j) = std::complex<double>(nd(gen), nd(gen));
      E = 0.5 * (E + E.adjoint()).eval();
      double emax = 0.0;
      for (int i = 0; i < M; ++i) emax = std::max(emax, std::abs(E(i, i)));
      E *= sd(gen) / (2.0 * orthonorm::norm_1(E) + emax);
      const Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(M, M) + E;
      const auto r = orthonorm::schmidt_matrix(G);
      const double resid = (r.B * G * r.B.adjoint() - Eigen::MatrixXcd::Identity(M, M)).cwiseAbs().maxCoeff();
      worst_resid = std::max(worst_resid, resid);
      if (!(resid < 1e-10)) ++resid_failures;
      if (!(r.bound_applicable && r.bound_ok)) ++bound_failures;
      if (r.bound_value > 0.0) worst_ratio = std::max(worst_ratio, r.deviation_inf / r.bound_value);
    }
    json j;
    j["count"] = count;
    j["seed"] = seed;
    j["max_m"] = max_m;
    j["residual_failures"] = resid_failures;
    j["bound_failures"] = bound_failures;
    j["worst_residual"] = worst_resid;
    j["worst_ratio_to_bound"] = worst_ratio;
    write_output(out, j.dump(2));
    return (resid_failures == 0 && bound_failures == 0) ? 0 : 2;
  }
  if (!in) throw ConfigError("orthonormalize: provide --in gram.json or --suite");
  const json jg = load_config(*in);
  const auto& rows = jg.contains("gram") ? jg.at("gram") : jg;
  const int M = static_cast<int>(rows.size());
  Eigen::MatrixXcd G(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const auto& e = rows.at(i).at(j);
      G(i, j) = e.is_array() ? std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>())
                             : std::complex<double>(e.get<double>(), 0.0);
    }
  const auto pert = orthonorm::gram_perturbation(G);
  const auto r = orthonorm::schmidt_matrix(G);
  json j;
  j["eps_norm1"] = pert.norm1;
  j["eps_max"] = pert.eps_max;
  j["bound_applicable"] = r.bound_applicable;
  j["bound_value"] = r.bound_value;
  j["deviation_inf"] = r.deviation_inf;
  j["bound_ok"] = r.bound_ok;
  json B = json::array();
  for (int i = 0; i < M; ++i) {
    json row = json::array();
    for (int jj = 0; jj < M; ++jj) row.push_back({r.B(i, jj).real(), r.B(i, jj).imag()});
    B.push_back(row);
  }
  j["B"] = B;
  write_output(out, j.dump(2));
  return 0;
}

int run_interval_demo_cmd(bool as_json) {
  const auto rep = experiments::run_interval_demo();
  if (as_json) {
    json j;
    j["dirichlet_E1"] = rep.dirichlet;
    j["neumann_E1"] = rep.neumann;
    j["polynomial_trial"] = rep.polynomial_trial;
    j["constant_trial"] = rep.constant_trial;
    j["constant_trial_is_upper_bound_for_dirichlet"] = !rep.constant_trial_flagged;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("Dirichlet form (sine basis):  E~_1 = %.17g\n", rep.dirichlet);
    std::printf("Neumann form (cosine basis):  E~_1 = %.17g\n", rep.neumann);
    std::printf("polynomial trial x(pi-x):     %.17g  (valid upper bound, >= 1)\n", rep.polynomial_trial);
    std::printf("constant trial in H^1:        %.17g  -> NOT an upper bound for E_1^D = 1 "
                "(wrong form domain)\n",
                rep.constant_trial);
  }
  return 0;
}

int run_norm_tools(const std::string& coeff_path, const std::string& rs, double s, bool extend, int h2_bound_l,
                   const std::optional<std::string>& out) {
  const double R = parse_length_str(rs, "--radius");
  json j;
  if (h2_bound_l >= 0) {
    const auto prof = sobolev::h2_bound_constant(R, h2_bound_l);
    j["h2_bound_max_ratio"] = prof.max_ratio;
    j["h2_bound_per_l"] = prof.per_l;
  }
  if (!coeff_path.empty()) {
    std::ifstream in(coeff_path);
    if (!in) throw ConfigError("coefficients file not found: " + coeff_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto g = sobolev::SphereFunction::from_json(ss.str(), R);
    j["boundary_norm"] = sobolev::boundary_sobolev_norm(g, s);
    j["s"] = s;
    if (extend) {
      const auto ext = sobolev::orthocomplement_extension(g);
      j["extension_h2_norm"] = sobolev::h2_ball_norm(ext);
      const auto surro = sobolev::continuous_surrogate({g});
      j["dist_upper"] = surro.dist_upper;
    }
  }
  write_output(out, j.dump(2));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"apwcert: APW secular machinery with boundary-discontinuity certificates"};
  app.require_subcommand(1);

  // solve-well
  auto* sw = app.add_subcommand("solve-well", "bound state of the spherical well (V=-V0 inside radius a)");
  std::string sw_v0 = "1", sw_a = "pi";
  double sw_tol = 1e-10;
  bool sw_json = false;
  sw->add_option("--v0", sw_v0, "well depth V0 (accepts 'pi')");
  sw->add_option("--a", sw_a, "well radius a (accepts 'pi')");
  sw->add_option("--tol", sw_tol, "bisection tolerance");
  sw->add_flag("--json", sw_json, "JSON output");

  // sweep-well
  auto* sww = app.add_subcommand("sweep-well", "discontinuity sweep of the well state, CSV output");
  std::string sww_v0 = "1", sww_a = "pi";
  double sww_gmax = 0.3, sww_gstep = 0.01;
  std::string sww_out, sww_plot;
  sww->add_option("--v0", sww_v0, "well depth");
  sww->add_option("--a", sww_a, "well radius (accepts 'pi')");
  sww->add_option("--gamma-max", sww_gmax, "largest jump amplitude");
  sww->add_option("--gamma-step", sww_gstep, "amplitude step");
  sww->add_option("--out", sww_out, "CSV output path (default stdout)");
  sww->add_option("--plot-out", sww_plot, "companion (gamma, E~1) pairs CSV");

  // apw-bands
  auto* ab = app.add_subcommand("apw-bands", "nonlinear APW secular bands for a muffin-tin config");
  std::string ab_cfg, ab_out;
  ab->add_option("--config", ab_cfg, "JSON config")->required();
  ab->add_option("--out", ab_out, "JSON output path (default stdout)");

  // apw-convergence
  auto* ac = app.add_subcommand("apw-convergence", "lowest secular root and jump norms vs l_max");
  std::string ac_cfg, ac_out;
  ac->add_option("--config", ac_cfg, "JSON config")->required();
  ac->add_option("--out", ac_out, "JSON output path (default stdout)");

  // certify
  auto* ce = app.add_subcommand("certify", "a posteriori jump certificate for the lowest secular roots");
  std::string ce_cfg, ce_out;
  ce->add_option("--config", ce_cfg, "JSON config")->required();
  ce->add_option("--out", ce_out, "JSON output path (default stdout)");

  // orthonormalize
  auto* on = app.add_subcommand("orthonormalize", "Schmidt orthonormalization with the explicit matrix bound");
  std::string on_in, on_out;
  bool on_suite = false;
  uint64_t on_seed = 12345;
  int on_count = 1000, on_maxm = 12;
  on->add_option("--in", on_in, "gram matrix JSON (rows of [re,im] pairs)");
  on->add_option("--out", on_out, "JSON output path (default stdout)");
  on->add_flag("--suite", on_suite, "run the seeded random-gram bound suite");
  on->add_option("--seed", on_seed, "suite RNG seed");
  on->add_option("--count", on_count, "suite size");
  on->add_option("--max-m", on_maxm, "largest gram dimension in the suite");

  // interval-demo
  auto* id = app.add_subcommand("interval-demo", "Dirichlet/Neumann form-domain demonstration on (0, pi)");
  bool id_json = false;
  id->add_flag("--json", id_json, "JSON output");

  // norm-tools
  auto* nt = app.add_subcommand("norm-tools", "boundary H^s norms, extensions, trace-constant profiles");
  std::string nt_coeffs, nt_r = "1", nt_out;
  double nt_s = 1.5;
  bool nt_extend = false;
  int nt_h2l = -1;
  nt->add_option("--coeffs", nt_coeffs, "sphere coefficients JSON [[l,m,re,im],...]");
  nt->add_option("--radius", nt_r, "sphere radius (accepts 'pi')");
  nt->add_option("--s", nt_s, "Sobolev order");
  nt->add_flag("--extend", nt_extend, "also report the (-Laplace+1)-harmonic extension H^2 norm");
  nt->add_option("--h2-bound-l", nt_h2l, "report the per-l trace-constant profile up to this l");
  nt->add_option("--out", nt_out, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e); // 0 for help, nonzero for genuine parse errors
  }

  auto opt = [](const std::string& s) { return s.empty() ? std::optional<std::string>{} : std::optional<std::string>{s}; };

  try {
    if (sw->parsed()) return run_solve_well(sw_v0, sw_a, sw_tol, sw_json);
    if (sww->parsed()) return run_sweep_well(sww_v0, sww_a, sww_gmax, sww_gstep, opt(sww_out), opt(sww_plot));
    if (ab->parsed()) return run_apw_bands(ab_cfg, opt(ab_out));
    if (ac->parsed()) return run_apw_convergence_cmd(ac_cfg, opt(ac_out));
    if (ce->parsed()) return run_certify(ce_cfg, opt(ce_out));
    if (on->parsed()) return run_orthonormalize(opt(on_in), opt(on_out), on_suite, on_seed, on_count, on_maxm);
    if (id->parsed()) return run_interval_demo_cmd(id_json);
    if (nt->parsed()) return run_norm_tools(nt_coeffs, nt_r, nt_s, nt_extend, nt_h2l, opt(nt_out));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GeometryInvalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical error [" << e.name() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
