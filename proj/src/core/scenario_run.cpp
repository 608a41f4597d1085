#include "core/scenario_run.hpp"

#include <json.hpp>

#include <cstdio>
#include <random>
#include <sstream>

#include "core/errors.hpp"
#include "core/export.hpp"
#include "core/interface_solver.hpp"
#include "core/neumann.hpp"
#include "core/split_solver.hpp"
#include "core/version.hpp"

namespace dislox {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_manifest(const Scenario& sc, const std::string& command,
                    const std::map<std::string, std::string>& extra) {
  nlohmann::ordered_json j;
  j["tool"] = "dislox";
  j["version"] = kDisloxVersion;
  j["command"] = command;
  j["config_hash"] = content_hash(sc.config_text);
  j["tolerances"]["cg_tol"] = sc.solver.cg_tol;
  j["tolerances"]["cg_maxiter_factor"] = sc.solver.cg_maxiter_factor;
  j["tolerances"]["interface_tol"] = sc.solver.interface_tol;
  if (sc.inverse) j["seed"] = sc.inverse->options.seed;
  for (const auto& [k, v] : extra) j[k] = v;
  atomic_write(sc.output_dir + "/manifest.json", j.dump(2) + "\n");
}

} // namespace

ForwardBundle make_forward_bundle(const Scenario& sc) {
  ForwardBundle fb;
  fb.mesh = std::make_shared<Mesh>(sc.mesh);
  fb.roles = std::make_shared<BoundaryRoles>(sc.roles);
  LoadSpec loads;
  SlipField slip;
  if (sc.has_mms) {
    fb.mms = std::make_shared<MmsCase>(manufactured_case(sc.mms_kind, sc.n));
    *fb.mesh = fb.mms->gm.mesh;
    *fb.roles = fb.mms->gm.roles;
    fb.model = std::make_shared<ElasticModel>(build_elastic_model(fb.mms->mspec, *fb.mesh));
    loads = fb.mms->loads;
    FaultTopology ft = build_fault_topology(*fb.mesh, *fb.roles);
    slip = make_slip(*fb.mesh, ft, fb.mms->slip_fn);
  } else {
    fb.model = std::make_shared<ElasticModel>(build_elastic_model(sc.material, *fb.mesh));
    FaultTopology ft = build_fault_topology(*fb.mesh, *fb.roles);
    slip = sc.build_slip(*fb.mesh, ft);
  }
  fb.setup = ProblemSetup::create(*fb.mesh, *fb.roles, *fb.model, loads, slip);
  return fb;
}

RunResult run_forward(const Scenario& sc, const std::string& method_override) {
  sc.require_for("forward");
  const std::string method = method_override.empty() ? sc.default_method : method_override;
  if (method != "split" && method != "interface")
    throw ConfigError("forward method must be 'split' or 'interface'");

  ForwardBundle fb = make_forward_bundle(sc);
  DirectSolution sol = method == "interface" ? solve_interface_method(fb.setup, sc.solver)
                                             : solve_split_node(fb.setup);

  atomic_write(sc.output_dir + "/displacement.csv", csv_displacement(fb.setup.split, sol.u));
  atomic_write(sc.output_dir + "/displacement.vtk", vtk_displacement(fb.setup.split, sol.u));
  atomic_write(sc.output_dir + "/transmission.txt", sol.report.summary());

  // Surface samples on the measurement patch, if one is tagged.
  if (!fb.roles->xi_tags.empty()) {
    XiSampling xs = make_xi_sampling(*fb.mesh, *fb.roles);
    std::vector<Vec2> u(fb.mesh->num_nodes());
    for (int n = 0; n < fb.mesh->num_nodes(); ++n) u[n] = sol.u[n];
    SurfaceData data;
    data.sampling = xs;
    data.values = sample_on_boundary(*fb.mesh, u, xs);
    atomic_write(sc.output_dir + "/surface_data.csv", csv_surface_data(data));
  }
  write_manifest(sc, "forward", {{"method", method}});

  std::ostringstream os;
  os << "forward solve (" << method << "): " << fb.setup.split.num_nodes() << " nodes, "
     << fb.setup.split.num_elements() << " elements\n";
  if (fb.setup.has_fault())
    os << "weighted slip norm:        " << weighted_slip_norm(fb.setup.slip, fb.setup.ft) << "\n";
  os << sol.report.summary();
  return {os.str(), true};
}

RunResult run_mms(const Scenario& sc, int levels) {
  sc.require_for("mms");
  if (levels < 1) throw ConfigError("mms needs at least 1 level");
  std::vector<int> ns;
  for (int l = 0; l < levels; ++l) ns.push_back(sc.n << l);
  MmsStudy st = run_mms_study(sc.mms_kind, ns, sc.solver, true);

  std::ostringstream csv;
  csv << "level,n,h,l2_split,h1_split,l2_interface,h1_interface,"
         "l2_order_split,h1_order_split,l2_order_interface,h1_order_interface,"
         "stress_jump_gamma_split,method_gap\n";
  for (std::size_t i = 0; i < st.split.levels.size(); ++i) {
    const auto& sl = st.split.levels[i];
    const auto& il = st.interface.levels[i];
    csv << i << "," << sl.n << "," << fmt(1.0 / sl.n) << "," << fmt(sl.err.l2) << ","
        << fmt(sl.err.h1) << "," << fmt(il.err.l2) << "," << fmt(il.err.h1) << ",";
    if (i > 0) {
      csv << fmt(st.split.l2_orders[i - 1]) << "," << fmt(st.split.h1_orders[i - 1]) << ","
          << fmt(st.interface.l2_orders[i - 1]) << "," << fmt(st.interface.h1_orders[i - 1]);
    } else {
      csv << ",,,";
    }
    csv << "," << fmt(sl.report.stress_jump_gamma) << "," << fmt(st.method_gap[i]) << "\n";
  }
  atomic_write(sc.output_dir + "/mms_convergence.csv", csv.str());
  write_manifest(sc, "mms",
                 {{"kind", mms_kind_name(sc.mms_kind)}, {"levels", std::to_string(levels)}});

  std::ostringstream os;
  os << "mms " << mms_kind_name(sc.mms_kind) << ", levels:";
  for (int n : ns) os << " " << n;
  os << "\n  L2 orders (split):";
  for (double o : st.split.l2_orders) os << " " << o;
  os << "\n  H1 orders (split):";
  for (double o : st.split.h1_orders) os << " " << o;
  os << "\n  method gap:";
  for (double g : st.method_gap) os << " " << g;
  os << "\n";
  return {os.str(), true};
}

RunResult run_check(const Scenario& sc) {
  sc.require_for("check");
  std::ostringstream os;
  bool ok = true;

  os << "mesh: " << sc.mesh.num_nodes() << " nodes, " << sc.mesh.num_elements()
     << " elements, " << sc.mesh.region_tags().size() << " regions\n";

  ForwardBundle fb = make_forward_bundle(sc);
  const ProblemSetup& ps = fb.setup;

  // Admissibility.
  AdmissibilityReport rep = check_admissibility(*fb.model, *fb.mesh);
  os << rep.summary();
  ok = ok && rep.pass;

  if (ps.has_fault() && !fb.roles->sigma_tags.empty()) {
    // Interface operator: SPD probe over random trace vectors.
    InterfaceOperator op(ps, sc.solver);
    std::mt19937_64 rng(20240501ull);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double sym_defect = 0.0;
    double min_rayleigh = 1e300;
    for (int t = 0; t < 25; ++t) {
      Vector phi(op.dim()), psi(op.dim());
      for (int i = 0; i < op.dim(); ++i) {
        phi[i] = U(rng);
        psi[i] = U(rng);
      }
      const double a = op.galerkin_pair(psi, phi);
      const double b = op.galerkin_pair(phi, psi);
      sym_defect = std::max(sym_defect, std::abs(a - b) / (phi.norm() * psi.norm()));
      min_rayleigh = std::min(min_rayleigh, op.galerkin_pair(phi, phi) / phi.dot(phi));
    }
    os << "interface operator: symmetry defect " << sym_defect << ", min Rayleigh "
       << min_rayleigh << (min_rayleigh > 0.0 && sym_defect <= 1e-9 ? " (pass)\n" : " (FAIL)\n");
    ok = ok && min_rayleigh > 0.0 && sym_defect <= 1e-9;

    // Zero-slip collapse against the unsplit solve.
    ProblemSetup zero = ps;
    zero.slip = SlipField{};
    for (int node : ps.ft.s_interior_nodes) zero.slip.values[node] = {0, 0};
    for (int node : ps.ft.s_boundary_nodes) zero.slip.values[node] = {0, 0};
    DirectSolution zs = solve_split_node(zero);
    std::vector<Vec2> us = solve_unsplit(zero);
    double err = 0.0, scale = 1e-300;
    for (int n = 0; n < fb.mesh->num_nodes(); ++n) {
      err = std::max({err, std::abs(zs.u[n].x - us[n].x), std::abs(zs.u[n].y - us[n].y)});
      scale = std::max({scale, std::abs(us[n].x), std::abs(us[n].y), 1.0});
    }
    for (const auto& [orig, dup] : zero.ft.split_map)
      err = std::max({err, std::abs(zs.u[dup].x - us[orig].x), std::abs(zs.u[dup].y - us[orig].y)});
    os << "zero-slip collapse: max deviation " << err / scale
       << (err / scale <= 1e-12 ? " (pass)\n" : " (FAIL)\n");
    ok = ok && err / scale <= 1e-12;

    // CG cross-check of the split system against the direct factorization.
    SplitSystem sys = build_split_system(ps);
    if (sys.b.norm() > 0.0) {
      CholeskySolver chol(sys.A);
      const Vector xd = chol.solve(sys.b);
      const Vector xc = solve_spd(sys.A, sys.b, sc.solver.cg_tol, sc.solver.cg_maxiter_factor);
      const double gap = (xd - xc).norm() / std::max(xd.norm(), 1e-300);
      os << "cg vs cholesky: relative gap " << gap << (gap <= 1e-6 ? " (pass)\n" : " (FAIL)\n");
      ok = ok && gap <= 1e-6;
    }

    // Extension independence when an alternate enclosure is configured.
    if (sc.fault_alt_box && sc.generator == "unit_square" && sc.fault_segment) {
      StructuredOpts o;
      o.n = sc.n;
      o.region_boxes.push_back({*sc.fault_alt_box, 2});
      o.omega_minus_tags = {2};
      o.fault_segments.push_back(*sc.fault_segment);
      if (!sc.roles.xi_tags.empty()) o.xi_interval = sc.meshing.xi_interval;
      GeneratedMesh alt = structured_square(o);
      ElasticModel alt_model = build_elastic_model(sc.material, alt.mesh);
      FaultTopology alt_ft = build_fault_topology(alt.mesh, alt.roles);
      SlipField alt_slip = sc.build_slip(alt.mesh, alt_ft);
      ProblemSetup alt_ps =
          ProblemSetup::create(alt.mesh, alt.roles, alt_model, LoadSpec{}, alt_slip);
      DirectSolution sa = solve_interface_method(ps, sc.solver);
      DirectSolution sb = solve_interface_method(alt_ps, sc.solver);
      // Compare on the shared original nodes.
      double num = 0.0, den = 1e-300;
      for (int n = 0; n < sc.mesh.num_nodes(); ++n) {
        num = std::max({num, std::abs(sa.u[n].x - sb.u[n].x), std::abs(sa.u[n].y - sb.u[n].y)});
        den = std::max({den, std::abs(sa.u[n].x), std::abs(sa.u[n].y)});
      }
      os << "extension independence: relative gap " << num / den
         << (num / den <= 1e-6 ? " (pass)\n" : " (FAIL)\n");
      ok = ok && num / den <= 1e-6;
    }
  }

  os << "check: " << (ok ? "pass" : "FAIL") << "\n";
  atomic_write(sc.output_dir + "/check_report.txt", os.str());
  write_manifest(sc, "check", {{"result", ok ? "pass" : "fail"}});
  return {os.str(), ok};
}

RunResult run_inverse(const Scenario& sc) {
  sc.require_for("inverse");
  const InverseConfig& inv = *sc.inverse;

  ForwardContext ctx;
  ctx.material = sc.material;
  ctx.meshing = inv.meshing;
  ctx.solver = sc.solver;

  // Data: measured file or synthetic truth.
  SurfaceData data;
  if (!inv.data_file.empty()) {
    data = parse_csv_surface_data(read_text_file(inv.data_file));
  } else {
    FaultParam truth = inv.fault0;
    truth.heights = inv.synth_heights;
    truth.validate();
    SlipParam sp;
    sp.modes = inv.options.slip_modes;
    if (static_cast<int>(inv.synth_coeffs.size()) != sp.modes)
      throw ConfigError("synth_coeffs length must equal slip_modes");
    sp.coeffs = Eigen::Map<const Eigen::VectorXd>(inv.synth_coeffs.data(), sp.modes);
    RealizedFault rf = realize_fault(truth, ctx.meshing);
    const XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);
    ElasticModel model = build_elastic_model(ctx.material, rf.mesh);
    SlipField slip = slip_from_param(rf.mesh, rf.topo, sp);
    data = forward_on_realized(rf, model, slip, ctx.solver, xs);
    add_noise(data, inv.options.noise_sigma, inv.options.seed);
    atomic_write(sc.output_dir + "/data.csv", csv_surface_data(data));
  }

  SlipParam sp0;
  sp0.modes = inv.options.slip_modes;
  sp0.coeffs = Eigen::VectorXd::Zero(sp0.modes);
  ReconstructResult res = reconstruct(data, inv.fault0, sp0, ctx, inv.options);

  std::ostringstream trace;
  trace << "iter,J,lm_rejected";
  for (std::size_t k = 0; k < inv.fault0.heights.size(); ++k) trace << ",theta" << k;
  for (int k = 0; k < sp0.modes; ++k) trace << ",c" << k;
  trace << "\n";
  for (const auto& row : res.trace) {
    trace << row.iteration << "," << fmt(row.misfit_value) << "," << (row.lm_rejected ? 1 : 0);
    for (double t : row.heights) trace << "," << fmt(t);
    for (int k = 0; k < row.coeffs.size(); ++k) trace << "," << fmt(row.coeffs[k]);
    trace << "\n";
  }
  atomic_write(sc.output_dir + "/reconstruction_trace.csv", trace.str());

  std::ostringstream rec;
  rec << "converged," << (res.converged ? 1 : 0) << "\n";
  rec << "final_misfit," << fmt(res.final_misfit) << "\n";
  for (std::size_t k = 0; k < res.fault.heights.size(); ++k)
    rec << "theta" << k << "," << fmt(res.fault.heights[k]) << "\n";
  for (int k = 0; k < res.slip.coeffs.size(); ++k)
    rec << "c" << k << "," << fmt(res.slip.coeffs[k]) << "\n";
  atomic_write(sc.output_dir + "/reconstruction.csv", rec.str());
  write_manifest(sc, "inverse",
                 {{"iterations", std::to_string(res.trace.size())},
                  {"converged", res.converged ? "true" : "false"}});

  std::ostringstream os;
  os << "inverse: " << res.trace.size() << " trace rows, final misfit " << res.final_misfit
     << (res.converged ? " (converged)\n" : " (max iterations / stalled)\n");
  return {os.str(), true};
}

RunResult run_export(const Scenario& sc, const std::string& format_override) {
  sc.require_for("export");
  const std::string format = format_override.empty() ? sc.export_format : format_override;
  if (format != "csv" && format != "vtk") throw ConfigError("export format must be csv or vtk");

  ForwardBundle fb = make_forward_bundle(sc);
  DirectSolution sol = sc.default_method == "interface"
                           ? solve_interface_method(fb.setup, sc.solver)
                           : solve_split_node(fb.setup);
  const std::string path = sc.output_dir + "/displacement." + format;
  atomic_write(path, format == "vtk" ? vtk_displacement(fb.setup.split, sol.u)
                                     : csv_displacement(fb.setup.split, sol.u));
  write_manifest(sc, "export", {{"format", format}});
  return {"exported " + path + "\n", true};
}

} // namespace dislox
