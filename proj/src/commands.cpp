#include "toricg2/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "toricg2/geometry.hpp"
#include "toricg2/pde.hpp"
#include "toricg2/sampling.hpp"

namespace toricg2 {

namespace {

json mat_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json vec_json(const Eigen::VectorXd& v) {
  json r = json::array();
  for (int i = 0; i < v.size(); ++i) r.push_back(v(i));
  return r;
}

json header(const RunConfig& cfg) {
  return {{"schema", 1}, {"command", cfg.command}, {"seed", cfg.seed}};
}

VField input_field(const RunConfig& cfg) {
  if (cfg.input.empty()) throw std::invalid_argument(cfg.command + " needs --input");
  VField V = load_vfield(cfg.input);
  if (!cfg.box.empty()) V = V.with_domain(parse_box(cfg.box, V.domain()));
  return V;
}

json check_entry(double value, double threshold) {
  return {{"max", value}, {"threshold", threshold}, {"pass", value < threshold}};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  return buf;
}

}  // namespace

void RunConfig::check() const {
  if (res < 2) throw std::invalid_argument("resolution must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
}

CommandResult cmd_validate(const RunConfig& cfg) {
  cfg.check();
  const VField V = input_field(cfg);
  const Box& box = V.domain();
  json rep = header(cfg);
  rep["input"] = cfg.input;
  rep["domain"] = box_to_json(box);
  rep["res"] = cfg.res;
  rep["tol"] = cfg.tol;

  const double minor = min_leading_minor(V, box, cfg.res);
  rep["positivity"] = {{"min_leading_minor", minor}, {"positive", minor > 0.0}};
  if (!(minor > 0.0)) {
    rep["status"] = "not positive definite";
    rep["error"] = "V is not positive definite on the box";
    rep["pass"] = false;
    return {rep, {}, false};
  }

  double div_max = 0.0, ell_max = 0.0, dv_max = 0.0;
  for (const Vec4& x : box.grid(cfg.res)) {
    div_max = std::max(div_max, div_residual(V, x).cwiseAbs().maxCoeff());
    ell_max = std::max(ell_max, elliptic_residual(V, x).norm());
    const VJet j = V.jet(x);
    for (const Mat3& d : j.d1) dv_max = std::max(dv_max, d.cwiseAbs().maxCoeff());
  }
  rep["div_residual_max"] = div_max;
  rep["elliptic_residual_max"] = ell_max;
  rep["dV_max"] = dv_max;

  Rng rng(cfg.seed);
  json samples = json::array();
  for (int s = 0; s < 3; ++s) {
    const Vec4 x = random_in_box(rng, box);
    samples.push_back({{"point", vec_json(x)}, {"Z", mat_json(Z_of(V, x))}, {"W", mat_json(W_of(V, x))}});
  }
  rep["samples"] = samples;

  bool torsion_ok = true;
  try {
    const TorsionResidual t = torsion_residual(V, potential_for(V), box, cfg.res);
    rep["torsion"] = {{"dphi", t.dphi}, {"dstar_phi", t.dstar_phi}, {"potential_mismatch", t.potential_mismatch}};
    torsion_ok = t.dphi < cfg.tol && t.dstar_phi < cfg.tol;
  } catch (const std::exception& e) {
    rep["torsion"] = nullptr;
    rep["torsion_note"] = e.what();
    torsion_ok = false;
  }

  if (V.poly().is_diagonal()) {
    const OrthogonalReport o = orthogonal_ansatz_check(V, box, std::min(cfg.res, 4), cfg.tol);
    rep["orthogonal"] = {{"case", case_name(o.kind)},
                         {"relabeling", o.relabeling},
                         {"diagonal_divergence", o.diagonal_divergence},
                         {"second_order", o.second_order},
                         {"first_order", o.first_order}};
  }

  std::string status;
  if (div_max >= cfg.tol)
    status = "not divergence-free";
  else if (ell_max >= cfg.tol)
    status = "not elliptic";
  else if (!torsion_ok)
    status = "not torsion-free";
  else if (dv_max < cfg.tol)
    status = "toric (flat)";
  else
    status = "toric";
  const bool pass = status.rfind("toric", 0) == 0;
  rep["status"] = status;
  rep["pass"] = pass;
  return {rep, {}, pass};
}

CommandResult cmd_curvature(const RunConfig& cfg) {
  cfg.check();
  const VField V = input_field(cfg);
  const Box& box = V.domain();
  json rep = header(cfg);
  rep["input"] = cfg.input;
  rep["domain"] = box_to_json(box);
  rep["samples"] = cfg.samples;

  constexpr double ricci_tol = 1e-4, g2_tol = 1e-5, flat_norm = 1e-6;
  rep["thresholds"] = {{"ricci_ratio", ricci_tol}, {"g2_defect", g2_tol}, {"flat_norm", flat_norm}};

  const ConnectionPotential A = potential_for(V);
  const MetricSampler sampler = ansatz_sampler(V, A);

  std::ostringstream csv;
  csv << "nu1,nu2,nu3,mu,curvature_norm,ricci_ratio,bianchi_ratio,rank,sv_gap,g2_defect,flat,ricci_ok,in_g2\n";
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, 1.0);
  json points = json::array();
  bool pass = true;
  int rank_min = 7 * 6 / 2, rank_max = 0;
  double ricci_worst = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    const Vec4 x = random_in_box(rng, box);
    if (!positive_definite(V.value(x))) throw std::runtime_error("metric is singular at a sample point in the box");
    Eigen::VectorXd p(7);
    p << angle(rng), angle(rng), angle(rng), x;
    const CurvatureData R = riemann(sampler, p);
    const double norm = R.norm();
    const bool flat = norm < flat_norm;
    const double ricci_ratio = flat ? R.ricci().norm() : R.ricci().norm() / norm;
    const double bianchi_ratio = flat ? R.bianchi_defect() : R.bianchi_defect() / norm;
    const HolonomySpectrum spec = holonomy_spectrum(R);
    const auto& sv = spec.singular_values;
    double gap = 0.0;
    const auto r = static_cast<std::size_t>(spec.rank);
    if (r > 0 && r < sv.size()) gap = sv[r - 1] / std::max(sv[r], 1e-300);
    const double defect = curvature_g2_defect(R, make_g2_point(build_structure(V, A, x).phi));
    const bool ricci_ok = ricci_ratio < ricci_tol, g2 = defect < g2_tol;
    pass = pass && ricci_ok && g2;
    rank_min = std::min(rank_min, spec.rank);
    rank_max = std::max(rank_max, spec.rank);
    ricci_worst = std::max(ricci_worst, ricci_ratio);

    points.push_back({{"point", vec_json(x)},
                      {"curvature_norm", norm},
                      {"ricci_ratio", ricci_ratio},
                      {"bianchi_ratio", bianchi_ratio},
                      {"rank", spec.rank},
                      {"sv_gap", gap},
                      {"g2_defect", defect},
                      {"flat", flat},
                      {"ricci_ok", ricci_ok},
                      {"in_g2", g2}});
    csv << fmt(x(0)) << ',' << fmt(x(1)) << ',' << fmt(x(2)) << ',' << fmt(x(3)) << ',' << fmt(norm) << ','
        << fmt(ricci_ratio) << ',' << fmt(bianchi_ratio) << ',' << spec.rank << ',' << fmt(gap) << ',' << fmt(defect)
        << ',' << flat << ',' << ricci_ok << ',' << g2 << '\n';
  }
  rep["points"] = points;
  rep["summary"] = {{"rank_min", rank_min}, {"rank_max", rank_max}, {"ricci_ratio_max", ricci_worst}};
  rep["pass"] = pass;
  return {rep, csv.str(), pass};
}

CommandResult cmd_graph(const RunConfig& cfg) {
  cfg.check();
  json rep = header(cfg);
  rep["model"] = cfg.model;
  GraphR4 g;
  if (cfg.model == "c3") {
    g = flat_graph_c3();
  } else if (cfg.model == "t2rc2") {
    g = flat_graph_t2rc2();
  } else if (cfg.model == "bs") {
    g = bs_graph(cfg.eps);
    rep["eps"] = cfg.eps;
    rep["k"] = 2.0 * cfg.eps / (3.0 * std::sqrt(3.0));
  } else {
    throw std::invalid_argument("unknown model '" + cfg.model + "' (expected c3, t2rc2 or bs)");
  }
  const GraphCheck c = check_graph(g);
  rep["graph"] = graph_to_json(g);
  rep["check"] = {{"trivalent", c.trivalent}, {"balanced", c.balanced},     {"level", c.level},
                  {"primitive", c.primitive}, {"consistent", c.consistent}, {"problems", c.problems}};
  rep["pass"] = c.ok();
  return {rep, {}, c.ok()};
}

CommandResult cmd_models(const RunConfig& cfg) {
  cfg.check();
  json rep = header(cfg);
  rep["eps"] = cfg.eps;
  Rng rng(cfg.seed);
  json checks = json::object();

  double roundtrip = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Vec4 v = random_multiscale(rng);
    roundtrip = std::max(roundtrip, (mmm_c3(rho_inverse(v).representative) - v).norm() / std::max(1.0, v.norm()));
  }
  checks["rho_inverse_roundtrip"] = check_entry(roundtrip, 1e-9);

  double invariants = 0.0, torus = 0.0;
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  for (int t = 0; t < 200; ++t) {
    const FlatC3Point pt{0.0, random_complex(rng), random_complex(rng), random_complex(rng)};
    const C3Orbit o = rho_inverse(mmm_c3(pt));
    const Eigen::Vector3d moduli(std::norm(pt.z1), std::norm(pt.z2), std::norm(pt.z3));
    const double scale = std::max(1.0, moduli.norm());
    invariants = std::max(invariants, (o.moduli - moduli).norm() / scale);
    invariants = std::max(invariants, std::abs(o.product - pt.z1 * pt.z2 * pt.z3) / std::max(1.0, std::abs(o.product)));
    const Vec4 m = mmm_c3(pt);
    torus = std::max(torus, (mmm_c3(c3_torus_act(pt, 0.0, ang(rng), ang(rng))) - m).norm() / std::max(1.0, m.norm()));
  }
  checks["rho_inverse_invariants"] = check_entry(invariants, 1e-9);
  checks["c3_torus_invariance"] = check_entry(torus, 1e-12);

  double sphere = 0.0, sigma4 = 0.0, sigma6 = 0.0;
  bool slack_ok = true;
  for (int t = 0; t < 1000; ++t) {
    const FlatT2RC2Point pt{0, 0, 0.0, random_complex(rng), random_complex(rng)};
    const double s = 1.0 + std::norm(pt.z) + std::norm(pt.w);
    sphere = std::max(sphere, std::abs(t2rc2_sphere_defect(pt)) / (s * s));
  }
  for (int t = 0; t < 1000; ++t) {
    const cplx a = random_complex(rng), b = random_complex(rng), c = random_complex(rng);
    const SigmaRelation r4 = sigma_relations_4d(a, b), r6 = sigma_relations_6d(a, b, c);
    sigma4 = std::max(sigma4, std::abs(r4.residual) / std::pow(1.0 + std::norm(a) + std::norm(b), 2));
    sigma6 = std::max(sigma6, std::abs(r6.residual) / std::pow(1.0 + std::norm(a) + std::norm(b) + std::norm(c), 3));
    slack_ok = slack_ok && r4.slack >= 0.0 && r6.slack >= 0.0;
  }
  checks["t2rc2_sphere_identity"] = check_entry(sphere, 1e-12);
  checks["sigma_relations_4d"] = check_entry(sigma4, 1e-12);
  checks["sigma_relations_6d"] = check_entry(sigma6, 1e-12);
  checks["sigma_slack_nonnegative"] = {{"pass", slack_ok}};

  double frame = 0.0;
  for (int t = 0; t < 20; ++t) {
    const QuatPair pt = random_bs_point(rng, cfg.eps);
    const Mat3 printed = bs_Vinv(pt).inverse();
    frame = std::max(frame, (bs_frame_B(pt).inverse() - printed).norm() / printed.norm());
  }
  checks["bs_frame_vs_printed_Vinv"] = check_entry(frame, 1e-8);

  double differential = 0.0;
  for (int i = 0; i < 10; ++i) {
    const QuatPair pt = random_bs_point(rng, cfg.eps);
    for (int d = 0; d < 50; ++d) differential = std::max(differential, bs_mmm_differential_check(pt, random_direction(rng)).residual);
  }
  checks["bs_mmm_differential"] = check_entry(differential, 1e-6);

  double cone = 0.0;
  for (int t = 0; t < 20; ++t) {
    QuatPair pt = random_bs_point(rng, cfg.eps);
    pt.eps = 0.0;
    cone = std::max(cone, (bs_mmm(pt) - cone_mmm_from_forms(pt)).norm() / std::max(1.0, bs_mmm(pt).norm()));
  }
  checks["cone_consistency"] = check_entry(cone, 1e-12);

  const double k = 2.0 * cfg.eps / (3.0 * std::sqrt(3.0));
  const GraphR4 bs = bs_graph(cfg.eps);
  const bool vertices_ok = bs.vertices.size() == 2 && bs.vertices[0] == Vec4(0, 0, k, 0) && bs.vertices[1] == Vec4(0, 0, -k, 0);
  checks["graphs"] = {{"c3", check_graph(flat_graph_c3()).ok()},
                      {"t2rc2", check_graph(flat_graph_t2rc2()).ok()},
                      {"bs", check_graph(bs).ok()},
                      {"bs_vertices", vertices_ok},
                      {"pass", check_graph(flat_graph_c3()).ok() && check_graph(flat_graph_t2rc2()).ok() &&
                                   check_graph(bs).ok() && vertices_ok}};

  bool pass = true;
  for (const auto& [name, c] : checks.items()) pass = pass && c.at("pass").get<bool>();
  rep["checks"] = checks;
  rep["pass"] = pass;
  return {rep, {}, pass};
}

CommandResult cmd_solve(const RunConfig& cfg) {
  cfg.check();
  json rep = header(cfg);
  const std::string model = cfg.model.empty() ? "hierarchy" : cfg.model;
  rep["model"] = model;
  auto with_box = [&](const VField& V) { return cfg.box.empty() ? V : V.with_domain(parse_box(cfg.box, V.domain())); };

  if (model == "mu-dep" || model == "poly-ex" || model == "constant") {
    const VField V = with_box(model == "mu-dep" ? mu_dep_example() : model == "poly-ex" ? poly_ex_example() : constant_example());
    rep["vfield"] = vfield_to_json(V);
    rep["pass"] = true;
    return {rep, {}, true};
  }
  if (model != "hierarchy") throw std::invalid_argument("unknown solve model '" + model + "'");

  const HierarchySolution sol = hierarchy_solve(cfg.degree);
  const Box domain = cfg.box.empty() ? poly_ex_example().domain() : parse_box(cfg.box, poly_ex_example().domain());
  rep["max_degree"] = sol.max_degree;
  json families = json::array();
  for (const HierarchyFamily& f : sol.families) {
    json v11 = json::array();
    for (const Poly4& p : f.v11_basis) v11.push_back(poly_to_json(p));
    families.push_back({{"v33", poly_to_json(f.v33)}, {"v22", poly_to_json(f.v22)}, {"v11_basis", v11}});
  }
  rep["families"] = families;
  json solutions = json::array();
  for (const PolyMatrix& P : sol.triples()) solutions.push_back(vfield_to_json(VField::from_polynomial(P, domain)));
  rep["triple_count"] = sol.triple_count();
  rep["solutions"] = solutions;
  rep["pass"] = true;
  return {rep, {}, true};
}

CommandResult run_command(const RunConfig& cfg) {
  if (cfg.command == "validate") return cmd_validate(cfg);
  if (cfg.command == "curvature") return cmd_curvature(cfg);
  if (cfg.command == "graph") return cmd_graph(cfg);
  if (cfg.command == "models") return cmd_models(cfg);
  if (cfg.command == "solve") return cmd_solve(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace toricg2
