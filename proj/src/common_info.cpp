// SPDX-License-Identifier: Apache-2.0

#include "pput/common_info.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pput {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

CommonPart common_part(const JointPmf& p_xy, const Tolerances& tol) {
  if (p_xy.rank() != 2) throw std::invalid_argument("common_part: 2-axis joint");
  std::size_t nx = p_xy.axis(0).size(), ny = p_xy.axis(1).size();
  // Nodes 0..nx-1 are X symbols, nx..nx+ny-1 are Y symbols.
  UnionFind uf(nx + ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (p_xy.at(x, y) > tol.support) uf.unite(x, nx + y);
    }
  }
  Pmf px = marginal_pmf(p_xy, 0);
  Pmf py = marginal_pmf(p_xy, 1);

  // Component ids in order of first appearance along the X axis, then Y.
  std::map<std::size_t, std::size_t> root_to_u;
  std::vector<std::size_t> u_of_x(nx), u_of_y(ny);
  std::vector<double> pu;
  bool has_null = false;
  auto assign = [&](std::size_t node, double mass, bool accumulate) {
    std::size_t root = uf.find(node);
    auto it = root_to_u.find(root);
    std::size_t u;
    if (it == root_to_u.end()) {
      u = pu.size();
      root_to_u.emplace(root, u);
      pu.push_back(0.0);
    } else {
      u = it->second;
    }
    if (accumulate) pu[u] += mass;
    return u;
  };
  std::size_t null_marker = static_cast<std::size_t>(-1);
  for (std::size_t x = 0; x < nx; ++x) {
    u_of_x[x] = px[x] > tol.support ? assign(x, px[x], true) : null_marker;
    has_null = has_null || u_of_x[x] == null_marker;
  }
  for (std::size_t y = 0; y < ny; ++y) {
    u_of_y[y] = py[y] > tol.support ? assign(nx + y, 0.0, false) : null_marker;
    has_null = has_null || u_of_y[y] == null_marker;
  }

  std::vector<std::string> labels;
  for (std::size_t u = 0; u < pu.size(); ++u) labels.push_back("u" + std::to_string(u));
  std::vector<double> probs = pu;
  if (has_null) {
    labels.push_back("null");
    probs.push_back(0.0);
    std::size_t null_idx = probs.size() - 1;
    for (auto& u : u_of_x)
      if (u == null_marker) u = null_idx;
    for (auto& u : u_of_y)
      if (u == null_marker) u = null_idx;
  }
  Alphabet u_alpha(labels);
  return CommonPart{u_alpha, std::move(u_of_x), std::move(u_of_y),
                    Pmf(u_alpha, std::move(probs), tol), has_null};
}

double gk_common_information(const JointPmf& p_xy, const Tolerances& tol) {
  return entropy(common_part(p_xy, tol).p_u, tol);
}

bool ci_equals_mi(const JointPmf& p_xy, const Tolerances& tol) {
  CommonPart cp = common_part(p_xy, tol);
  std::size_t nx = p_xy.axis(0).size(), ny = p_xy.axis(1).size();
  std::size_t nu = cp.u_alphabet.size();
  // P_{X,U,Y} with U = u(X) deterministic.
  std::vector<double> t(nx * nu * ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      t[(x * nu + cp.u_of_x[x]) * ny + y] += p_xy.at(x, y);
    }
  }
  JointPmf xuy({p_xy.axis(0), cp.u_alphabet, p_xy.axis(1)}, std::move(t), tol);
  return is_markov(xuy, tol);
}

std::optional<GapWitness> strict_gap_witness(const JointPmf& p_xy,
                                            const Tolerances& tol) {
  std::size_t nx = p_xy.axis(0).size(), ny = p_xy.axis(1).size();
  Channel x_given_y = condition(p_xy, 1, tol);
  for (std::size_t x0 = 0; x0 < nx; ++x0) {
    for (std::size_t x1 = 0; x1 < nx; ++x1) {
      for (std::size_t y0 = 0; y0 < ny; ++y0) {
        for (std::size_t y1 = 0; y1 < ny; ++y1) {
          if (y0 == y1) continue;
          if (p_xy.at(x0, y0) <= tol.support) continue;
          if (p_xy.at(x0, y1) <= tol.support) continue;
          double a = x_given_y.row(y0)[x1];
          double b = x_given_y.row(y1)[x1];
          if (std::abs(a - b) > tol.info) {
            return GapWitness{x0, x1, y0, y1};
          }
        }
      }
    }
  }
  return std::nullopt;
}

BinaryReleaseConstruction binary_release_construction(const JointPmf& p_xy,
                                       const BinaryReleaseParams& params,
                                       const Tolerances& tol) {
  auto w = strict_gap_witness(p_xy, tol);
  if (!w) {
    throw std::invalid_argument(
        "binary_release_construction: C(X;Y) = I(X;Y), no witness exists");
  }
  double s = params.s;
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("binary_release_construction: s must be in (0,1)");
  }
  Channel y_given_x = condition(p_xy, 0, tol);
  double py1_x0 = y_given_x.row(w->x0)[w->y1];
  double py0_x0 = y_given_x.row(w->x0)[w->y0];
  double t_max = std::min((1.0 - s) / py1_x0, s / py0_x0);
  double t = params.t > 0.0 ? params.t : 0.5 * t_max;
  if (!(t > 0.0 && t < t_max)) {
    throw std::invalid_argument("binary_release_construction: t out of range");
  }

  const Alphabet& ax = p_xy.axis(0);
  const Alphabet& ay = p_xy.axis(1);
  Alphabet az({"0", "1"});
  Alphabet axy = Alphabet::product(ax, ay);
  std::vector<std::vector<double>> rows(axy.size());
  for (std::size_t x = 0; x < ax.size(); ++x) {
    for (std::size_t y = 0; y < ay.size(); ++y) {
      double p0 = s;
      if (x == w->x0 && y == w->y0) p0 = s + t * py1_x0;
      if (x == w->x0 && y == w->y1) p0 = s - t * py0_x0;
      rows[x * ay.size() + y] = {p0, 1.0 - p0};
    }
  }
  Channel mech_fd(axy, az, std::move(rows), tol);

  // P_{Z'|Y} := P_{Z|Y} from the composed joint.
  JointPmf xyz = push_mechanism(p_xy, Channel::identity(axy), mech_fd, tol);
  Channel mech_op = condition(marginal(xyz, {1, 2}), 0, tol);
  return BinaryReleaseConstruction{std::move(mech_fd), std::move(mech_op), *w, s, t};
}

}  // namespace pput
