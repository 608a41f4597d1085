#include "core/assembly.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace dislox {

SpMat assemble_stiffness(const Mesh& mesh, const ElasticModel& model, const DofMap& dofs) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(dofs.elems.size() * 36);

  for (int e : dofs.elems) {
    const auto& el = mesh.elements[e];
    const Vec2 p0 = mesh.nodes[el.v[0]], p1 = mesh.nodes[el.v[1]], p2 = mesh.nodes[el.v[2]];
    const double area2 = signed_area2(p0, p1, p2);
    if (!(area2 > 0.0)) throw AssemblyError("degenerate element " + std::to_string(e));
    const double area = 0.5 * area2;
    const Vec2 g[3] = {rot90(p2 - p1) / area2, rot90(p0 - p2) / area2, rot90(p1 - p0) / area2};

    const Vec2 c = (p0 + p1 + p2) / 3.0;
    const double lam = model.lambda(el.region, c);
    const double mu = model.mu(el.region, c);

    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < 2; ++a) {
        const int di = dofs.dof(el.v[i], a);
        for (int j = 0; j < 3; ++j) {
          const double gij = dot(g[i], g[j]);
          for (int b = 0; b < 2; ++b) {
            const int dj = dofs.dof(el.v[j], b);
            const double gia = a == 0 ? g[i].x : g[i].y;
            const double gib = b == 0 ? g[i].x : g[i].y;
            const double gja = a == 0 ? g[j].x : g[j].y;
            const double gjb = b == 0 ? g[j].x : g[j].y;
            double v = lam * gia * gjb + mu * gib * gja;
            if (a == b) v += mu * gij;
            trip.emplace_back(di, dj, area * v);
          }
        }
      }
    }
  }

  SpMat K(dofs.num_dofs(), dofs.num_dofs());
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

Vector assemble_body_force(const Mesh& mesh, const DofMap& dofs, const BodyForce& f) {
  Vector l = Vector::Zero(dofs.num_dofs());
  if (!f) return l;
  const auto& rule = tri_rule(6);
  for (int e : dofs.elems) {
    const auto& el = mesh.elements[e];
    const Vec2 p0 = mesh.nodes[el.v[0]], p1 = mesh.nodes[el.v[1]], p2 = mesh.nodes[el.v[2]];
    const double area = mesh.element_area(e);
    for (const auto& q : rule) {
      const Vec2 x = p0 * q.l0 + p1 * q.l1 + p2 * q.l2;
      const Vec2 fv = f(el.region, x);
      const double hats[3] = {q.l0, q.l1, q.l2};
      for (int i = 0; i < 3; ++i) {
        l[dofs.dof(el.v[i], 0)] += area * q.w * fv.x * hats[i];
        l[dofs.dof(el.v[i], 1)] += area * q.w * fv.y * hats[i];
      }
    }
  }
  return l;
}

Vector assemble_facet_load(const Mesh& mesh, const DofMap& dofs,
                           const std::vector<FacetLoad>& loads) {
  Vector l = Vector::Zero(dofs.num_dofs());
  const auto& rule = edge_rule(4);
  for (const auto& load : loads) {
    const Vec2 a = mesh.nodes[load.v[0]], b = mesh.nodes[load.v[1]];
    const double len = dist(a, b);
    for (const auto& q : rule) {
      const Vec2 x = a * (1.0 - q.t) + b * q.t;
      const Vec2 hv = load.h(x);
      const double hats[2] = {1.0 - q.t, q.t};
      for (int i = 0; i < 2; ++i) {
        const int d0 = dofs.dof(load.v[i], 0);
        if (d0 < 0) throw ConfigError("facet load touches a node outside the dof map");
        l[d0] += len * q.w * hv.x * hats[i];
        l[dofs.dof(load.v[i], 1)] += len * q.w * hv.y * hats[i];
      }
    }
  }
  return l;
}

Vector lumped_mass(const Mesh& mesh, const DofMap& dofs) {
  Vector m = Vector::Zero(dofs.num_dofs());
  for (int e : dofs.elems) {
    const auto& el = mesh.elements[e];
    const double third = mesh.element_area(e) / 3.0;
    for (int k = 0; k < 3; ++k) {
      m[dofs.dof(el.v[k], 0)] += third;
      m[dofs.dof(el.v[k], 1)] += third;
    }
  }
  return m;
}

Eigen::MatrixXd rigid_motion_basis(const Mesh& mesh, const DofMap& dofs) {
  const int n = dofs.num_dofs();
  Eigen::MatrixXd R(n, 3);
  R.setZero();
  for (std::size_t i = 0; i < dofs.active_nodes.size(); ++i) {
    const Vec2& p = mesh.nodes[dofs.active_nodes[i]];
    R(2 * i, 0) = 1.0;
    R(2 * i + 1, 1) = 1.0;
    R(2 * i, 2) = -p.y;
    R(2 * i + 1, 2) = p.x;
  }
  const Vector m = lumped_mass(mesh, dofs);
  // Gram-Schmidt in the lumped-mass inner product.
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < k; ++j) {
      const double proj = (R.col(j).array() * m.array() * R.col(k).array()).sum();
      R.col(k) -= proj * R.col(j);
    }
    const double nrm = std::sqrt((R.col(k).array() * m.array() * R.col(k).array()).sum());
    R.col(k) /= nrm;
  }
  return R;
}

std::vector<Vec2> recover_traction(const SpMat& K, const Vector& u, const Vector& l,
                                   const DofMap& dofs, const std::vector<int>& nodes) {
  const Vector r = K * u - l;
  std::vector<Vec2> t;
  t.reserve(nodes.size());
  for (int node : nodes) {
    const int d = dofs.dof(node, 0);
    if (d < 0) throw DomainError("traction requested at node outside the subdomain");
    t.push_back({r[d], r[d + 1]});
  }
  return t;
}

ReducedSystem reduce_system(const SpMat& K, const Vector& l, const DofMap& dofs) {
  const int nf = dofs.num_free();
  ReducedSystem red;
  red.b = Vector::Zero(nf);
  for (int i = 0; i < nf; ++i) red.b[i] = l[dofs.free_dofs[i]];

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(K.nonZeros());
  for (int col = 0; col < K.outerSize(); ++col) {
    const int jf = dofs.free_index[col];
    for (SpMat::InnerIterator it(K, col); it; ++it) {
      const int ifree = dofs.free_index[static_cast<int>(it.row())];
      if (ifree < 0) continue;
      if (jf >= 0) {
        trip.emplace_back(ifree, jf, it.value());
      } else {
        red.b[ifree] -= it.value() * dofs.dirichlet_value[col];
      }
    }
  }
  red.A.resize(nf, nf);
  red.A.setFromTriplets(trip.begin(), trip.end());
  return red;
}

Vector expand_solution(const Vector& x_free, const DofMap& dofs) {
  Vector u = Vector::Zero(dofs.num_dofs());
  for (int d = 0; d < dofs.num_dofs(); ++d)
    u[d] = dofs.is_constrained[d] ? dofs.dirichlet_value[d] : x_free[dofs.free_index[d]];
  return u;
}

} // namespace dislox
