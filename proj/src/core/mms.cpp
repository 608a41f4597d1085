#include "core/mms.hpp"

#include <cmath>
#include <tuple>

#include "core/errors.hpp"
#include "core/interface_solver.hpp"
#include "core/quadrature.hpp"
#include "core/split_solver.hpp"

namespace dislox {

MmsKind mms_kind_from_string(const std::string& s) {
  if (s == "zero_jump") return MmsKind::ZeroJump;
  if (s == "smooth_jump") return MmsKind::SmoothJump;
  if (s == "layered_jump") return MmsKind::LayeredJump;
  throw ConfigError("unknown manufactured case kind '" + s + "'");
}

std::string mms_kind_name(MmsKind kind) {
  switch (kind) {
    case MmsKind::ZeroJump: return "zero_jump";
    case MmsKind::SmoothJump: return "smooth_jump";
    case MmsKind::LayeredJump: return "layered_jump";
  }
  return "?";
}

namespace {

// Quartic fault bump 16 (x - 1/4)^2 (3/4 - x)^2, peak 1/16^... peak value
// 16 * 0.25^4 = 0.0625 at x = 1/2; vanishes to second order at the ends.
Poly2 bump_x() {
  Poly2 x = Poly2::var_x();
  Poly2 left = x - Poly2::constant(0.25);
  Poly2 right = Poly2::constant(0.75) - x;
  return left * left * right * right * 16.0;
}

// Quadratic blend 16 (y - 1/4)^2: equals 1 on the fault line y = 1/2 and
// vanishes with its gradient on the bottom edge of the enclosed box.
Poly2 blend_y() {
  Poly2 d = Poly2::var_y() - Poly2::constant(0.25);
  return d * d * 16.0;
}

PolyField quadratic_background() {
  // Strong enough curvature that the interpolation error dominates the mild
  // crack-tip transient inside the h = 1/16 .. 1/64 window.
  PolyField u;
  u.x = Poly2(2, 2);
  u.x.at(2, 0) = 0.9;
  u.x.at(0, 2) = -0.9;
  u.x.at(1, 1) = 0.45;
  u.y = Poly2(2, 2);
  u.y.at(1, 1) = 0.72;
  u.y.at(0, 2) = -0.54;
  u.y.at(2, 0) = 0.18;
  return u;
}

// Layered background (a(y), b(y)) with quadratic profiles per layer,
// continuous displacement and continuous traction sigma.e2 across y = Y:
// the slopes scale with the modulus ratio, the curvatures are free.
std::pair<PolyField, PolyField> layered_profiles(double Y, double mu1, double m1, double mu2,
                                                 double m2) {
  auto profile = [](double c0, double c1, double c2, double y0) {
    // c0 + c1 (y - y0) + c2 (y - y0)^2 as a Poly2 in y
    Poly2 p(0, 2);
    p.at(0, 0) = c0 - c1 * y0 + c2 * y0 * y0;
    p.at(0, 1) = c1 - 2.0 * c2 * y0;
    p.at(0, 2) = c2;
    return p;
  };
  const double a1_1 = 0.8, a1_2 = 1.2; // a1(y) = a1_1 y + a1_2 y^2
  const double b1_1 = 0.4, b1_2 = 0.8;
  PolyField u1;
  u1.x = profile(0.0, a1_1, a1_2, 0.0);
  u1.y = profile(0.0, b1_1, b1_2, 0.0);

  const double a1Y = a1_1 * Y + a1_2 * Y * Y;
  const double da1Y = a1_1 + 2.0 * a1_2 * Y;
  const double b1Y = b1_1 * Y + b1_2 * Y * Y;
  const double db1Y = b1_1 + 2.0 * b1_2 * Y;
  PolyField u2;
  u2.x = profile(a1Y, (mu1 / mu2) * da1Y, 0.9, Y);
  u2.y = profile(b1Y, (m1 / m2) * db1Y, 0.6, Y);
  return {u1, u2};
}

PolyField linear_field(double ax, double bx, double cx, double ay, double by, double cy) {
  PolyField u;
  u.x = Poly2(1, 1);
  u.x.at(0, 0) = cx;
  u.x.at(1, 0) = ax;
  u.x.at(0, 1) = bx;
  u.y = Poly2(1, 1);
  u.y.at(0, 0) = cy;
  u.y.at(1, 0) = ay;
  u.y.at(0, 1) = by;
  return u;
}

constexpr double kLayerY = 9.0 / 16.0;

} // namespace

MmsCase manufactured_case(MmsKind kind, int n) {
  if (n % 16 != 0) throw ConfigError("manufactured cases need n divisible by 16");
  MmsCase c;
  c.kind = kind;

  StructuredOpts sopts;
  sopts.n = n;
  sopts.region_boxes.push_back({{0.25, 0.25, 0.75, 0.5}, 2});
  if (kind == MmsKind::LayeredJump) sopts.region_boxes.push_back({{0.0, kLayerY, 1.0, 1.0}, 3});
  sopts.omega_minus_tags = {2};
  sopts.fault_segments.push_back({0.25, 0.5, 0.75, 0.5});
  c.gm = structured_square(sopts);

  AffineField lam1, mu1, lam3, mu3;
  PolyField base1, base3; // exact background per layer
  if (kind == MmsKind::LayeredJump) {
    lam1 = {1.0, 0.0, 0.0};
    mu1 = {1.0, 0.0, 0.0};
    lam3 = {10.0, 0.0, 0.0};
    mu3 = {10.0, 0.0, 0.0};
    std::tie(base1, base3) =
        layered_profiles(kLayerY, mu1.a, lam1.a + 2 * mu1.a, mu3.a, lam3.a + 2 * mu3.a);
    c.mspec.alpha0 = 0.5;
    c.mspec.beta0 = 1.0;
    c.mspec.lipschitz_M = 25.0;
  } else if (kind == MmsKind::SmoothJump) {
    lam1 = {1.0, 0.0, 0.2};
    mu1 = {1.5, 0.1, 0.0};
    base1 = quadratic_background();
    c.mspec.alpha0 = 1.0;
    c.mspec.beta0 = 4.0;
    c.mspec.lipschitz_M = 10.0;
  } else {
    lam1 = {1.0, 0.0, 0.0};
    mu1 = {1.0, 0.0, 0.0};
    base1 = linear_field(0.3, 0.1, 0.05, 0.15, -0.2, 0.02);
    c.mspec.alpha0 = 0.5;
    c.mspec.beta0 = 2.0;
    c.mspec.lipschitz_M = 10.0;
  }

  c.mspec.regions[1] = {lam1, mu1};
  c.mspec.regions[2] = {lam1, mu1};
  if (kind == MmsKind::LayeredJump) c.mspec.regions[3] = {lam3, mu3};

  // Jump carrier w = (bump(x) blend(y), 0), supported in the enclosed box,
  // vanishing with its gradient on the box edges other than the fault.
  PolyField w;
  w.x = bump_x() * blend_y();
  w.y = Poly2();

  c.exact[1] = base1;
  if (kind == MmsKind::ZeroJump) {
    c.exact[2] = base1;
  } else {
    PolyField minus;
    minus.x = base1.x - w.x;
    minus.y = base1.y - w.y;
    c.exact[2] = minus;
  }
  if (kind == MmsKind::LayeredJump) c.exact[3] = base3;

  // Slip = [u] = u_plus - u_minus = w on the fault line.
  if (kind == MmsKind::ZeroJump) {
    c.slip_fn = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  } else {
    const Poly2 bx = bump_x();
    c.slip_fn = [bx](const Vec2& p) { return Vec2{bx.eval(p), 0.0}; };
  }

  // Body force per region.
  std::map<int, PolyField> force;
  force[1] = poly_neg_div_stress(c.exact.at(1), lam1, mu1);
  force[2] = poly_neg_div_stress(c.exact.at(2), lam1, mu1);
  if (kind == MmsKind::LayeredJump) force[3] = poly_neg_div_stress(c.exact.at(3), lam3, mu3);
  c.loads.body = [force](int region, const Vec2& p) { return force.at(region).eval(p); };

  // Top boundary traction from the exact field of the top region.
  const int top_region = kind == MmsKind::LayeredJump ? 3 : 1;
  const auto stress_top =
      poly_stress(c.exact.at(top_region), kind == MmsKind::LayeredJump ? lam3 : lam1,
                  kind == MmsKind::LayeredJump ? mu3 : mu1);
  auto h_top = [stress_top](const Vec2& p) { return poly_traction(stress_top, p, {0.0, 1.0}); };
  c.loads.tractions[kTagFree] = h_top;
  c.loads.tractions[kTagXi] = h_top;

  // Dirichlet values on the clamped sides from the exact field.
  if (kind == MmsKind::LayeredJump) {
    const PolyField e1 = base1, e3 = base3;
    c.loads.dirichlet = [e1, e3](int, const Vec2& p) {
      return p.y >= kLayerY ? e3.eval(p) : e1.eval(p);
    };
  } else {
    const PolyField e1 = base1;
    c.loads.dirichlet = [e1](int, const Vec2& p) { return e1.eval(p); };
  }

  // The exact field carries a traction jump across the fault; it enters the
  // discrete problem as a known interface datum j = sigma(w) n.
  if (kind != MmsKind::ZeroJump) {
    const auto stress_w = poly_stress(w, lam1, mu1);
    c.loads.fault_traction_jump = [stress_w](const Vec2& p) {
      return poly_traction(stress_w, p, {0.0, 1.0});
    };
  }

  return c;
}

MmsErrors mms_errors(const MmsCase& c, const ProblemSetup& ps, const std::vector<Vec2>& u) {
  // Per-region gradients of the exact field.
  std::map<int, std::array<Poly2, 4>> grads;
  for (const auto& [region, pf] : c.exact)
    grads[region] = {pf.x.dx(), pf.x.dy(), pf.y.dx(), pf.y.dy()};

  const Mesh& split = ps.split;
  const auto& rule = tri_rule(6);
  double l2 = 0.0, h1 = 0.0;
  for (int e = 0; e < split.num_elements(); ++e) {
    const auto& el = split.elements[e];
    const Vec2 p0 = split.nodes[el.v[0]], p1 = split.nodes[el.v[1]], p2 = split.nodes[el.v[2]];
    const double area = split.element_area(e);
    const double area2 = 2.0 * area;
    const Vec2 g[3] = {rot90(p2 - p1) / area2, rot90(p0 - p2) / area2, rot90(p1 - p0) / area2};
    // Constant discrete gradient per element.
    double gh[4] = {0, 0, 0, 0};
    for (int k = 0; k < 3; ++k) {
      const Vec2& uv = u[el.v[k]];
      gh[0] += uv.x * g[k].x;
      gh[1] += uv.x * g[k].y;
      gh[2] += uv.y * g[k].x;
      gh[3] += uv.y * g[k].y;
    }
    const auto& pf = c.exact.at(el.region);
    const auto& gd = grads.at(el.region);
    for (const auto& q : rule) {
      const Vec2 x = p0 * q.l0 + p1 * q.l1 + p2 * q.l2;
      const Vec2 uh = u[el.v[0]] * q.l0 + u[el.v[1]] * q.l1 + u[el.v[2]] * q.l2;
      const Vec2 ue = pf.eval(x);
      const Vec2 du = uh - ue;
      l2 += area * q.w * dot(du, du);
      const double dg[4] = {gh[0] - gd[0].eval(x), gh[1] - gd[1].eval(x), gh[2] - gd[2].eval(x),
                            gh[3] - gd[3].eval(x)};
      h1 += area * q.w * (dg[0] * dg[0] + dg[1] * dg[1] + dg[2] * dg[2] + dg[3] * dg[3]);
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

MmsStudy run_mms_study(MmsKind kind, const std::vector<int>& ns, const SolverOptions& opts,
                       bool with_interface) {
  MmsStudy study;
  study.kind = kind;
  study.with_interface = with_interface;

  for (int n : ns) {
    MmsCase c = manufactured_case(kind, n);
    ElasticModel model = build_elastic_model(c.mspec, c.gm.mesh);
    FaultTopology ft_probe = build_fault_topology(c.gm.mesh, c.gm.roles);
    SlipField slip = make_slip(c.gm.mesh, ft_probe, c.slip_fn);
    ProblemSetup ps = ProblemSetup::create(c.gm.mesh, c.gm.roles, model, c.loads, slip);

    DirectSolution s = solve_split_node(ps);
    study.split.levels.push_back({n, mms_errors(c, ps, s.u), s.report});

    if (with_interface) {
      DirectSolution si = solve_interface_method(ps, opts);
      study.interface.levels.push_back({n, mms_errors(c, ps, si.u), si.report});
      const double denom = std::max(field_l2(ps.split, s.u), 1e-300);
      study.method_gap.push_back(field_l2_diff(ps.split, s.u, si.u) / denom);
    }
  }

  auto orders = [](MmsMethodStudy& m) {
    for (std::size_t i = 0; i + 1 < m.levels.size(); ++i) {
      const double rl = m.levels[i].err.l2 / m.levels[i + 1].err.l2;
      const double rh = m.levels[i].err.h1 / m.levels[i + 1].err.h1;
      const double step = std::log2(static_cast<double>(m.levels[i + 1].n) / m.levels[i].n);
      m.l2_orders.push_back(std::log2(rl) / step);
      m.h1_orders.push_back(std::log2(rh) / step);
    }
  };
  orders(study.split);
  if (with_interface) orders(study.interface);
  return study;
}

} // namespace dislox
