// Acceptance suite: end-to-end checks of the solver stack at fixed
// tolerances, one PASS/FAIL line per criterion. Exit code = number of
// failing criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "core/export.hpp"
#include "core/interface_solver.hpp"
#include "core/inversion.hpp"
#include "core/mms.hpp"
#include "core/neumann.hpp"
#include "core/scenario_run.hpp"
#include "core/split_solver.hpp"

using namespace dislox;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct DislocationFixture {
  GeneratedMesh gm;
  MaterialSpec mspec;
  std::unique_ptr<ElasticModel> model;
  SlipField slip;

  static DislocationFixture make(int n, std::array<double, 4> box, bool with_slip = true) {
    DislocationFixture f;
    StructuredOpts o;
    o.n = n;
    o.region_boxes.push_back({box, 2});
    o.omega_minus_tags = {2};
    o.fault_segments.push_back({0.25, 0.5, 0.75, 0.5});
    f.gm = structured_square(o);
    f.mspec.regions[1] = {AffineField{1, 0, 0}, AffineField{1, 0, 0}};
    f.mspec.regions[2] = {AffineField{1, 0, 0}, AffineField{1, 0, 0}};
    f.mspec.alpha0 = 0.5;
    f.mspec.beta0 = 2.0;
    f.mspec.lipschitz_M = 10.0;
    f.model = std::make_unique<ElasticModel>(build_elastic_model(f.mspec, f.gm.mesh));
    FaultTopology ft = build_fault_topology(f.gm.mesh, f.gm.roles);
    f.slip = make_slip(f.gm.mesh, ft, [with_slip](const Vec2& p) {
      if (!with_slip) return Vec2{0, 0};
      const double a = (p.x - 0.25) * (0.75 - p.x);
      return Vec2{16.0 * a * a, 0.0};
    });
    return f;
  }

  ProblemSetup setup(const LoadSpec& loads = {}) const {
    return ProblemSetup::create(gm.mesh, gm.roles, *model, loads, slip);
  }
};

// ----------------------------------------------------------------------
// criteria 1, 2 (partly), 6, 7: manufactured studies

std::vector<double> g_method_gaps; // collected across every test mesh

void criteria_mms() {
  const auto t0 = std::chrono::steady_clock::now();
  SolverOptions opts;
  MmsStudy smooth = run_mms_study(MmsKind::SmoothJump, {16, 32, 64}, opts, true);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  auto orders_ok = [](const MmsMethodStudy& m) {
    bool ok = true;
    for (double o : m.l2_orders) ok = ok && o >= 1.9;
    for (double o : m.h1_orders) ok = ok && o >= 0.9;
    return ok;
  };
  {
    std::ostringstream d;
    d << "L2 orders split:";
    for (double o : smooth.split.l2_orders) d << " " << fmt(o);
    d << ", interface:";
    for (double o : smooth.interface.l2_orders) d << " " << fmt(o);
    d << "; H1 split:";
    for (double o : smooth.split.h1_orders) d << " " << fmt(o);
    d << "; " << fmt(elapsed) << " s";
    const bool pass =
        orders_ok(smooth.split) && orders_ok(smooth.interface) && elapsed < 120.0;
    report(1, pass, "manufactured smooth-jump convergence at h = 1/16, 1/32, 1/64", d.str());
  }
  for (double g : smooth.method_gap) g_method_gaps.push_back(g);

  {
    bool decay = true;
    std::ostringstream d;
    d << "stress-jump surrogate on Gamma\\S:";
    for (std::size_t i = 0; i < smooth.split.levels.size(); ++i) {
      const double r = smooth.split.levels[i].report.stress_jump_gamma;
      d << " " << fmt(r);
      if (i > 0) decay = decay && r <= 1.1 * smooth.split.levels[i - 1].report.stress_jump_gamma;
    }
    report(6, decay, "interface traction-jump surrogate decays under refinement", d.str());
  }

  {
    MmsStudy layered = run_mms_study(MmsKind::LayeredJump, {16, 32, 64}, opts, true);
    for (double g : layered.method_gap) g_method_gaps.push_back(g);
    MmsCase c = manufactured_case(MmsKind::LayeredJump, 16);
    ElasticModel model = build_elastic_model(c.mspec, c.gm.mesh);
    AdmissibilityReport rep = check_admissibility(model, c.gm.mesh);
    std::ostringstream d;
    d << "L2 orders split:";
    for (double o : layered.split.l2_orders) d << " " << fmt(o);
    d << "; gaps:";
    for (double g : layered.method_gap) d << " " << fmt(g);
    d << "; admissibility " << (rep.pass ? "pass" : "fail");
    bool pass = orders_ok(layered.split) && orders_ok(layered.interface) && rep.pass;
    for (double g : layered.method_gap) pass = pass && g <= 1e-6;
    report(7, pass, "layered medium (mu ratio 10:1) keeps convergence and equivalence", d.str());
  }
}

// ----------------------------------------------------------------------
// criterion 2: method equivalence on every test mesh

void criterion_equivalence() {
  for (int n : {16, 24}) {
    DislocationFixture f = DislocationFixture::make(n, {0.25, 0.25, 0.75, 0.5});
    ProblemSetup ps = f.setup();
    DirectSolution a = solve_split_node(ps);
    DirectSolution b = solve_interface_method(ps);
    g_method_gaps.push_back(field_l2_diff(ps.split, a.u, b.u) / field_l2(ps.split, a.u));
  }
  bool pass = true;
  double worst = 0.0;
  for (double g : g_method_gaps) {
    worst = std::max(worst, g);
    pass = pass && g <= 1e-6;
  }
  std::ostringstream d;
  d << g_method_gaps.size() << " meshes, worst relative L2 gap " << fmt(worst);
  report(2, pass, "interface and split-node methods agree to 1e-6", d.str());
}

// ----------------------------------------------------------------------
// criterion 3: extension independence

void criterion_extension_independence() {
  DislocationFixture fa = DislocationFixture::make(16, {0.25, 0.25, 0.75, 0.5});
  DislocationFixture fb = DislocationFixture::make(16, {0.25, 0.375, 0.75, 0.5});
  ProblemSetup pa = fa.setup(), pb = fb.setup();
  DirectSolution sa = solve_interface_method(pa);
  DirectSolution sb = solve_interface_method(pb);

  std::map<int, int> dup_b;
  for (const auto& [orig, dup] : pb.ft.split_map) dup_b[orig] = dup;
  std::vector<Vec2> diff(pa.split.num_nodes(), Vec2{0, 0});
  for (int n = 0; n < pa.mesh->num_nodes(); ++n) diff[n] = sa.u[n] - sb.u[n];
  for (const auto& [orig, dup] : pa.ft.split_map) diff[dup] = sa.u[dup] - sb.u[dup_b.at(orig)];
  const double gap = field_l2(pa.split, diff) / field_l2(pa.split, sa.u);
  report(3, gap <= 1e-6, "two interface extensions of the same fault give one solution",
         "relative L2 gap " + fmt(gap));
}

// ----------------------------------------------------------------------
// criterion 4: zero-slip collapse

void criterion_zero_slip() {
  DislocationFixture f = DislocationFixture::make(16, {0.25, 0.25, 0.75, 0.5}, false);
  LoadSpec loads;
  loads.tractions[kTagFree] = [](const Vec2& p) { return Vec2{0.1 * p.x, -0.25}; };
  ProblemSetup ps = f.setup(loads);
  DirectSolution split_sol = solve_split_node(ps);
  std::vector<Vec2> unsplit = solve_unsplit(ps);
  double err = 0.0, scale = 1e-300;
  for (int n = 0; n < ps.mesh->num_nodes(); ++n) {
    err = std::max({err, std::abs(split_sol.u[n].x - unsplit[n].x),
                    std::abs(split_sol.u[n].y - unsplit[n].y)});
    scale = std::max({scale, std::abs(unsplit[n].x), std::abs(unsplit[n].y)});
  }
  for (const auto& [orig, dup] : ps.ft.split_map)
    err = std::max({err, std::abs(split_sol.u[dup].x - unsplit[orig].x),
                    std::abs(split_sol.u[dup].y - unsplit[orig].y)});

  ProblemSetup ps0 = f.setup();
  DirectSolution zero_sol = solve_split_node(ps0);
  double zmax = 0.0;
  for (const auto& v : zero_sol.u) zmax = std::max({zmax, std::abs(v.x), std::abs(v.y)});

  const bool pass = err <= 1e-12 * std::max(scale, 1.0) && zmax <= 1e-12;
  report(4, pass, "zero slip collapses onto the continuous solve",
         "merge deviation " + fmt(err / scale) + ", zero-data field " + fmt(zmax));
}

// ----------------------------------------------------------------------
// criterion 5: interface operator SPD + CG iteration bound

void criterion_interface_spd() {
  bool pass = true;
  std::ostringstream d;
  std::mt19937_64 rng(987654321ull);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int n : {8, 12, 16}) {
    DislocationFixture f = DislocationFixture::make(n, {0.25, 0.25, 0.75, 0.5});
    ProblemSetup ps = f.setup();
    InterfaceOperator op(ps);
    double sym = 0.0, rayleigh = 1e300;
    for (int t = 0; t < 100; ++t) {
      Vector phi(op.dim()), psi(op.dim());
      for (int i = 0; i < op.dim(); ++i) {
        phi[i] = U(rng);
        psi[i] = U(rng);
      }
      const double a = op.galerkin_pair(psi, phi);
      const double b = op.galerkin_pair(phi, psi);
      sym = std::max(sym, std::abs(a - b) / (phi.norm() * psi.norm()));
      rayleigh = std::min(rayleigh, op.galerkin_pair(phi, phi) / phi.dot(phi));
    }
    int iters = 0;
    solve_interface_equation(op, extend_slip(ps.slip, ps.ft), &iters);
    pass = pass && sym <= 1e-9 && rayleigh > 0.0 && iters < 2 * op.dim();
    d << "n=" << n << ": sym " << fmt(sym) << ", min Rayleigh " << fmt(rayleigh) << ", CG "
      << iters << "/" << 2 * op.dim() << "; ";
  }
  report(5, pass, "interface operator symmetric positive definite, CG within budget", d.str());
}

// ----------------------------------------------------------------------
// criteria 8, 9: inverse problem

ForwardContext inverse_context() {
  ForwardContext ctx;
  ctx.material.regions[1] = {AffineField{1, 0, 0}, AffineField{1, 0, 0}};
  ctx.material.regions[2] = {AffineField{1, 0, 0}, AffineField{1, 0, 0}};
  ctx.material.alpha0 = 0.5;
  ctx.material.beta0 = 2.0;
  ctx.meshing.h = 1.0 / 24.0;
  ctx.meshing.xi_interval = {0.375, 0.625}; // 25 percent of the top boundary
  return ctx;
}

void criterion_slip_recovery() {
  ForwardContext ctx = inverse_context();
  FaultParam fp;
  fp.knots = {0.3, 0.4, 0.5, 0.6, 0.7};
  fp.heights = {0.48, 0.5, 0.49, 0.51, 0.5};

  SlipParam truth;
  truth.modes = 8;
  truth.coeffs = Eigen::VectorXd(8);
  truth.coeffs << 0.8, 0.3, -0.2, 0.1, 0.15, -0.1, 0.05, 0.02;

  RealizedFault rf = realize_fault(fp, ctx.meshing);
  XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);
  ElasticModel model = build_elastic_model(ctx.material, rf.mesh);
  SlipField slip = slip_from_param(rf.mesh, rf.topo, truth);
  SurfaceData data = forward_on_realized(rf, model, slip, ctx.solver, xs);

  InverseOptions opts;
  opts.slip_modes = 8;
  opts.freeze_fault = true;
  SlipParam sp0;
  sp0.modes = 8;
  sp0.coeffs = Eigen::VectorXd::Zero(8);
  ReconstructResult res = reconstruct(data, fp, sp0, ctx, opts);

  const Eigen::MatrixXd F = assemble_forward_operator(rf, model, ctx, 8, xs);
  const Eigen::VectorXd c_oracle =
      (F.transpose() * F).ldlt().solve(F.transpose() * data.stacked());

  const double vs_oracle = (res.slip.coeffs - c_oracle).norm() / c_oracle.norm();
  const double vs_truth = (res.slip.coeffs - truth.coeffs).norm() / truth.coeffs.norm();
  const bool pass = vs_oracle <= 1e-6 && vs_truth <= 0.05;
  report(8, pass, "frozen-fault slip recovery from the 25% patch",
         "vs oracle " + fmt(vs_oracle) + ", vs truth " + fmt(vs_truth));
}

void criterion_distinguishability() {
  ForwardContext ctx = inverse_context();
  FaultParam fp1, fp2;
  fp1.knots = fp2.knots = {0.3, 0.5, 0.7};
  fp1.heights = {0.55, 0.55, 0.55};
  const double sep = 0.1 * std::sqrt(2.0); // 0.1 of the domain diameter
  fp2.heights = {0.55 - sep, 0.55 - sep, 0.55 - sep};

  SlipParam sp;
  sp.modes = 8;
  sp.coeffs = Eigen::VectorXd(8);
  sp.coeffs << 0.8, 0.3, -0.2, 0.1, 0.15, -0.1, 0.05, 0.02;

  GapReport same = distinguishability_experiment(fp1, sp, fp1, sp, ctx, 1e-3);
  GapReport diff = distinguishability_experiment(fp1, sp, fp2, sp, ctx, 1e-3);
  const bool pass = same.gap <= 1e-8 && diff.gap > 1e-3;
  report(9, pass, "parallel faults produce distinguishable patch data",
         "identical gap " + fmt(same.gap) + ", separated gap " + fmt(diff.gap));
}

// ----------------------------------------------------------------------
// criterion 10: Neumann variant superposition

void criterion_neumann() {
  DislocationFixture f = DislocationFixture::make(16, {0.25, 0.25, 0.75, 0.5});
  f.gm.roles.free_tags.insert(f.gm.roles.sigma_tags.begin(), f.gm.roles.sigma_tags.end());
  f.gm.roles.sigma_tags.clear();
  LoadSpec loads;
  auto h = [](const Vec2& p) {
    Vec2 nu{0, 0};
    if (p.y <= 0.0)
      nu = {0, -1};
    else if (p.y >= 1.0)
      nu = {0, 1};
    else if (p.x <= 0.0)
      nu = {-1, 0};
    else
      nu = {1, 0};
    const double sxx = 0.4, syy = -0.2, sxy = 0.1;
    return Vec2{sxx * nu.x + sxy * nu.y, sxy * nu.x + syy * nu.y};
  };
  loads.tractions[kTagSigma] = h;
  loads.tractions[kTagFree] = h;
  ProblemSetup ps = f.setup(loads);
  NeumannVariant nv = solve_neumann_variant(ps);
  const double gap = field_l2_diff(ps.split, nv.combined.u, nv.sum.u) /
                     std::max(field_l2(ps.split, nv.combined.u), 1e-300);
  report(10, gap <= 1e-9, "all-Neumann solve equals slip-part plus load-part",
         "relative L2 gap " + fmt(gap));
}

// ----------------------------------------------------------------------
// criterion 11: CLI determinism

std::string forward_cfg() {
  return R"([mesh]
generator = unit_square
n = 16

[roles]
xi_window = [0.375, 0.625]

[fault]
segment = [0.25, 0.5, 0.75, 0.5]
box = [0.25, 0.25, 0.75, 0.5]

[material.1]
lambda = 1.0
mu = 1.0
[material.2]
lambda = 1.0
mu = 1.0

[admissibility]
alpha0 = 0.5
beta0 = 2.0
M = 10.0

[slip]
bump = { center = 0.5, halfwidth = 0.5, amplitude = 0.0625, direction = [1, 0] }
)";
}

std::string mms_cfg() {
  return "[mesh]\ngenerator = mms\nkind = smooth_jump\nn = 16\n";
}

std::string inverse_cfg() {
  return R"([mesh]
generator = fault_param

[fault]
knots = [0.3, 0.5, 0.7]
heights = [0.5, 0.5, 0.5]

[material.1]
lambda = 1.0
mu = 1.0
[material.2]
lambda = 1.0
mu = 1.0

[admissibility]
alpha0 = 0.5
beta0 = 2.0
M = 10.0

[inverse]
knots = [0.3, 0.5, 0.7]
heights0 = [0.49, 0.5, 0.51]
slip_modes = 6
max_iterations = 2
mesh_h = 0.055
xi = [0.375, 0.625]
seed = 77
noise_sigma = 1e-5
synth_heights = [0.5, 0.49, 0.5]
synth_coeffs = [0.8, 0.3, -0.2, 0.1, 0.15, -0.1]
)";
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    if (!fs::exists(b / name)) {
      why = name + " missing";
      return false;
    }
    if (read_text_file((a / name).string()) != read_text_file((b / name).string())) {
      why = name + " differs";
      return false;
    }
  }
  return !names.empty();
}

void criterion_determinism() {
  const char* cli = std::getenv("DISLOX_CLI");
  if (!cli) {
    report(11, false, "CLI determinism", "DISLOX_CLI not set");
    return;
  }
  const fs::path scratch = "acceptance_scratch";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  struct Case {
    std::string name, cfg, args;
  };
  const std::vector<Case> cases = {
      {"forward", forward_cfg(), "forward"},
      {"mms", mms_cfg(), "mms --levels 3"},
      {"inverse", inverse_cfg(), "inverse"},
  };
  bool pass = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    const fs::path cfg = scratch / (c.name + ".cfg");
    atomic_write(cfg.string(), c.cfg);
    for (int run = 1; run <= 2; ++run) {
      const fs::path out = scratch / (c.name + std::to_string(run));
      std::ostringstream cmd;
      cmd << "\"" << cli << "\" " << c.args << " " << cfg << " --output-dir " << out << " > "
          << (scratch / (c.name + std::to_string(run) + ".log")) << " 2>&1";
      const int rc = std::system(cmd.str().c_str());
      if (rc != 0) {
        pass = false;
        d << c.name << " run " << run << " exited " << rc << "; ";
      }
    }
    std::string why;
    if (!dirs_identical(scratch / (c.name + "1"), scratch / (c.name + "2"), why)) {
      pass = false;
      d << c.name << ": " << why << "; ";
    } else {
      d << c.name << " bitwise equal; ";
    }
  }
  report(11, pass, "forward/mms/inverse runs reproduce bitwise", d.str());
}

} // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criteria_mms();            // criteria 1, 6, 7 (+ gaps for 2)
  criterion_equivalence();   // criterion 2
  criterion_extension_independence();
  criterion_zero_slip();
  criterion_interface_spd();
  criterion_slip_recovery();
  criterion_distinguishability();
  criterion_neumann();
  criterion_determinism();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("acceptance: %d failure(s), %.1f s total\n", g_failures, elapsed);
  return g_failures;
}
