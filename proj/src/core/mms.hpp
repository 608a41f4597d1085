#pragma once

#include <map>
#include <string>

#include "core/dislocation.hpp"
#include "core/meshgen.hpp"
#include "core/poly2.hpp"

namespace dislox {

enum class MmsKind { ZeroJump, SmoothJump, LayeredJump };

MmsKind mms_kind_from_string(const std::string& s);
std::string mms_kind_name(MmsKind kind);

/// A manufactured problem on the structured unit square: exact piecewise
/// polynomial displacement with a prescribed jump across the interior fault,
/// the matching body force, boundary tractions, Dirichlet data and the fault
/// traction datum that keeps the discrete problem consistent. Every load is
/// computed analytically from the exact field.
struct MmsCase {
  MmsKind kind = MmsKind::SmoothJump;
  GeneratedMesh gm;
  MaterialSpec mspec;
  LoadSpec loads;
  std::map<int, PolyField> exact; // per region tag
  std::function<Vec2(const Vec2&)> slip_fn;

  Vec2 exact_u(int region, const Vec2& p) const { return exact.at(region).eval(p); }
};

MmsCase manufactured_case(MmsKind kind, int n);

struct MmsErrors {
  double l2 = 0.0;
  double h1 = 0.0;
};

/// Quadrature errors of a split-mesh nodal field against the exact solution
/// (degree-6 rule; the exact side is chosen by the element's region tag).
MmsErrors mms_errors(const MmsCase& c, const ProblemSetup& ps, const std::vector<Vec2>& u);

struct MmsLevel {
  int n = 0;
  MmsErrors err;
  TransmissionReport report;
};

struct MmsMethodStudy {
  std::vector<MmsLevel> levels;
  std::vector<double> l2_orders; // between consecutive levels
  std::vector<double> h1_orders;
};

struct MmsStudy {
  MmsKind kind;
  MmsMethodStudy split;
  MmsMethodStudy interface;
  bool with_interface = false;
  std::vector<double> method_gap; // relative L2 distance between the methods per level
};

MmsStudy run_mms_study(MmsKind kind, const std::vector<int>& ns, const SolverOptions& opts,
                       bool with_interface);

} // namespace dislox
