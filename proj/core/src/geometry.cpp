#include "aclab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aclab/operators.hpp"

namespace aclab {

struct Shape::Node {
  enum class Op { ball, half_space, box, unite, intersect, complement };
  Op op;
  Point a{};
  Point b{};
  double radius = 0.0;
  int dim = 3;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;

  double distance(const Point& x) const {
    switch (op) {
      case Op::ball: {
        const double dx = x[0] - a[0], dy = x[1] - a[1], dz = x[2] - a[2];
        return radius - std::sqrt(dx * dx + dy * dy + dz * dz);
      }
      case Op::half_space:
        return -((x[0] - a[0]) * b[0] + (x[1] - a[1]) * b[1] + (x[2] - a[2]) * b[2]);
      case Op::box: {
        double outside = 0.0;
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < dim; ++k) {
          const auto uk = static_cast<std::size_t>(k);
          const double q = std::max(a[uk] - x[uk], x[uk] - b[uk]);
          worst = std::max(worst, q);
          if (q > 0.0) outside += q * q;
        }
        return worst > 0.0 ? -std::sqrt(outside) : -worst;
      }
      case Op::unite:
        return std::max(left->distance(x), right->distance(x));
      case Op::intersect:
        return std::min(left->distance(x), right->distance(x));
      case Op::complement:
        return -left->distance(x);
    }
    return 0.0;
  }
};

Shape Shape::ball(const Point& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Shape::ball: radius must be positive");
  auto n = std::make_shared<Node>();
  n->op = Node::Op::ball;
  n->a = center;
  n->radius = radius;
  return Shape(std::move(n));
}

Shape Shape::half_space(const Point& point, const Point& normal) {
  const double len = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]);
  if (!(len > 0.0)) throw std::invalid_argument("Shape::half_space: zero normal");
  auto n = std::make_shared<Node>();
  n->op = Node::Op::half_space;
  n->a = point;
  n->b = {normal[0] / len, normal[1] / len, normal[2] / len};
  return Shape(std::move(n));
}

Shape Shape::box(const Point& lo, const Point& hi, int dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("Shape::box: dimension must be 1, 2 or 3");
  for (int k = 0; k < dim; ++k) {
    if (!(hi[static_cast<std::size_t>(k)] > lo[static_cast<std::size_t>(k)])) {
      throw std::invalid_argument("Shape::box: hi must exceed lo on every axis");
    }
  }
  auto n = std::make_shared<Node>();
  n->op = Node::Op::box;
  n->a = lo;
  n->b = hi;
  n->dim = dim;
  return Shape(std::move(n));
}

Shape Shape::unite(Shape a, Shape b) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::unite;
  n->left = std::move(a.node_);
  n->right = std::move(b.node_);
  return Shape(std::move(n));
}

Shape Shape::intersect(Shape a, Shape b) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::intersect;
  n->left = std::move(a.node_);
  n->right = std::move(b.node_);
  return Shape(std::move(n));
}

Shape Shape::complement(Shape a) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::complement;
  n->left = std::move(a.node_);
  return Shape(std::move(n));
}

double Shape::signed_distance(const Point& x) const { return node_->distance(x); }

double Shape::truncated_distance(const Point& x, double level) const {
  return smooth_clamp(signed_distance(x), level);
}

bool Shape::is_primitive() const {
  return node_->op == Node::Op::ball || node_->op == Node::Op::half_space ||
         node_->op == Node::Op::box;
}

void Shape::check_regular(const Grid& grid, double band) const {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<double> d(n);
  parallel_for(n, [&](std::size_t c) { d[c] = node_->distance(grid.center(c)); });

  for (std::size_t c = 0; c < n; ++c) {
    for (int a = 0; a < grid.dim(); ++a) {
      const auto idx = grid.index(c);
      if (idx[static_cast<std::size_t>(a)] + 1 >= grid.resolution(a)) continue;
      const std::size_t nb = grid.neighbor(c, a, +1);
      if (std::abs(d[c] - d[nb]) > h * (1.0 + 1e-9) + 1e-14) {
        std::ostringstream msg;
        msg << "shape: signed distance is not 1-Lipschitz near cell " << c;
        throw std::invalid_argument(msg.str());
      }
    }
  }

  std::function<void(const Node&)> visit = [&](const Node& node) {
    if (node.op == Node::Op::unite) {
      for (std::size_t c = 0; c < n; ++c) {
        const Point x = grid.center(c);
        if (std::abs(node.left->distance(x)) < band && std::abs(node.right->distance(x)) < band) {
          std::ostringstream msg;
          msg << "shape: union operands come within the transition band (" << band
              << ") of each other near cell " << c << "; the max composition is not a distance there";
          throw std::invalid_argument(msg.str());
        }
      }
    }
    if (node.left) visit(*node.left);
    if (node.right) visit(*node.right);
  };
  visit(*node_);
}

double smooth_clamp(double d, double level) {
  const double half = 0.5 * level;
  const double m = std::abs(d);
  if (m <= half) return d;
  return std::copysign(half + half * std::tanh((m - half) / half), d);
}

namespace {

double smooth_clamp_slope(double d, double level) {
  const double half = 0.5 * level;
  const double m = std::abs(d);
  if (m <= half) return 1.0;
  const double c = std::cosh((m - half) / half);
  return 1.0 / (c * c);
}

// Interfaces must stay 10 eps away from periodic faces and may only meet
// reflective faces orthogonally (zero normal derivative of the distance).
void check_boundary_layer(const Grid& grid, const std::function<double(const Point&)>& dist,
                          double level) {
  const double h = grid.spacing();
  const double required = level - 0.5 * h - 1e-9 * level;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const auto idx = grid.index(c);
    for (int a = 0; a < grid.dim(); ++a) {
      const int i = idx[static_cast<std::size_t>(a)];
      if (i != 0 && i != grid.resolution(a) - 1) continue;
      const Point x = grid.center(c);
      const double d = dist(x);
      if (std::abs(d) >= required) continue;
      if (grid.boundary(a) == Boundary::periodic) {
        std::ostringstream msg;
        msg << "initial data: interface lies " << std::abs(d) + 0.5 * h
            << " from a periodic face on axis " << a << ", closer than 10 eps = " << level;
        throw std::invalid_argument(msg.str());
      }
      Point xp = x, xm = x;
      const double delta = 0.25 * h;
      xp[static_cast<std::size_t>(a)] += delta;
      xm[static_cast<std::size_t>(a)] -= delta;
      const double normal_slope = (dist(xp) - dist(xm)) / (2.0 * delta);
      if (std::abs(normal_slope) > 1e-6) {
        std::ostringstream msg;
        msg << "initial data: interface meets the reflective face on axis " << a
            << " non-orthogonally (normal slope " << normal_slope << ") within 10 eps";
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

void check_resolution(double eps, const Grid& grid) {
  const double ratio = eps / grid.spacing();
  if (ratio < 2.0 * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "initial data: eps/h = " << ratio << " is below the required ratio 2 (eps = " << eps
        << ", h = " << grid.spacing() << ")";
    throw std::invalid_argument(msg.str());
  }
}

double norm(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

}  // namespace

void ReferenceFlow::validate() const {
  if (dim < 2 || dim > 3) throw std::invalid_argument("ReferenceFlow: dimension must be 2 or 3");
  if (!(r0 > 0.0)) throw std::invalid_argument("ReferenceFlow: radius must be positive");
  if (kind == Kind::truncated_sphere && !(t_cut > 0.0 && t_cut < extinction_time())) {
    throw std::invalid_argument("ReferenceFlow: t_cut must lie strictly before extinction");
  }
}

double ReferenceFlow::extinction_time() const { return r0 * r0 / (2.0 * (dim - 1)); }

double ReferenceFlow::vanishing_time() const {
  return kind == Kind::truncated_sphere ? t_cut : extinction_time();
}

double exact_flow_radius(const ReferenceFlow& flow, double t) {
  if (t < 0.0) throw std::invalid_argument("exact_flow_radius: t must be >= 0");
  if (t >= flow.vanishing_time()) return 0.0;
  return std::sqrt(flow.r0 * flow.r0 - 2.0 * (flow.dim - 1) * t);
}

double exact_flow_radius_rate(const ReferenceFlow& flow, double t) {
  const double r = exact_flow_radius(flow, t);
  return r > 0.0 ? -(flow.dim - 1) / r : 0.0;
}

PhaseField prepare_initial_data(const Shape& shape, double eps, const Grid& grid,
                                const Potential& potential) {
  check_resolution(eps, grid);
  const double level = 10.0 * eps;
  check_boundary_layer(grid, [&](const Point& x) { return shape.signed_distance(x); }, level);
  shape.check_regular(grid, level);
  auto field = ScalarField::sample(grid, [&](const Point& x) {
    return potential.profile(shape.truncated_distance(x, level) / eps);
  });
  return {std::move(field), eps, 0.0};
}

PhaseTrajectory sample_reference_flow(const ReferenceFlow& flow, const Grid& grid, double eps,
                                      std::span<const double> times, const Potential& potential) {
  flow.validate();
  check_resolution(eps, grid);
  const double level = 10.0 * eps;
  check_boundary_layer(
      grid,
      [&](const Point& x) {
        const Point rel{x[0] - flow.center[0], x[1] - flow.center[1], x[2] - flow.center[2]};
        return flow.r0 - norm(rel);
      },
      level);
  PhaseTrajectory traj("analytic", 0.0);
  for (double t : times) {
    const double r = exact_flow_radius(flow, t);
    const double rdot = exact_flow_radius_rate(flow, t);
    std::vector<double> phi(grid.size(), -1.0);
    std::vector<double> rate(grid.size(), 0.0);
    if (r > 0.0) {
      parallel_for(grid.size(), [&](std::size_t c) {
        const Point x = grid.center(c);
        const Point rel{x[0] - flow.center[0], x[1] - flow.center[1], x[2] - flow.center[2]};
        const double d = r - norm(rel);
        const double z = smooth_clamp(d, level) / eps;
        phi[c] = potential.profile(z);
        rate[c] = potential.profile_slope(z) * smooth_clamp_slope(d, level) * rdot / eps;
      });
    }
    ScalarField rate_field(grid, std::move(rate));
    traj.append({PhaseField(ScalarField(grid, std::move(phi)), eps, t), std::move(rate_field)}, 0.0);
  }
  return traj;
}

ScalarField phase_indicator(const PhaseField& phase) {
  const auto v = phase.values();
  std::vector<double> out(v.size());
  parallel_for(v.size(), [&](std::size_t c) { out[c] = v[c] >= 0.0 ? 1.0 : 0.0; });
  return {phase.grid(), std::move(out)};
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 lerp_zero(const Vec3& p, double vp, const Vec3& q, double vq) {
  const double t = vp / (vp - vq);
  return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]), p[2] + t * (q[2] - p[2])};
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const Vec3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const Vec3 w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  return 0.5 * std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
}

double segment_length(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

// Dual cells are spanned by cell centers; periodic axes include the
// wrap-around cell, reflective axes stop one short.
int dual_count(const Grid& g, int axis) {
  return g.boundary(axis) == Boundary::periodic ? g.resolution(axis) : g.resolution(axis) - 1;
}

double crossings_1d(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto v = f.values();
  double count = 0.0;
  for (int i = 0; i < dual_count(g, 0); ++i) {
    const auto c = static_cast<std::size_t>(i);
    if ((v[c] >= 0.0) != (v[g.neighbor(c, 0, +1)] >= 0.0)) count += 1.0;
  }
  return count;
}

double marching_squares(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto v = f.values();
  const double h = g.spacing();
  const int n0 = dual_count(g, 0);
  const int n1 = dual_count(g, 1);
  std::vector<double> row_length(static_cast<std::size_t>(n0), 0.0);
  parallel_for(static_cast<std::size_t>(n0), [&](std::size_t i) {
    double total = 0.0;
    for (int j = 0; j < n1; ++j) {
      const std::size_t c00 = g.flat({static_cast<int>(i), j, 0});
      const std::size_t c10 = g.neighbor(c00, 0, +1);
      const std::size_t c01 = g.neighbor(c00, 1, +1);
      const std::size_t c11 = g.neighbor(c10, 1, +1);
      const double v00 = v[c00], v10 = v[c10], v01 = v[c01], v11 = v[c11];
      const Vec3 p00{0, 0, 0}, p10{h, 0, 0}, p01{0, h, 0}, p11{h, h, 0};
      // Edges: 0 = (00,10), 1 = (10,11), 2 = (01,11), 3 = (00,01).
      std::array<bool, 4> cut{};
      std::array<Vec3, 4> pt{};
      auto edge = [&](int e, const Vec3& a, double va, const Vec3& b, double vb) {
        if ((va >= 0.0) != (vb >= 0.0)) {
          cut[static_cast<std::size_t>(e)] = true;
          pt[static_cast<std::size_t>(e)] = lerp_zero(a, va, b, vb);
        }
      };
      edge(0, p00, v00, p10, v10);
      edge(1, p10, v10, p11, v11);
      edge(2, p01, v01, p11, v11);
      edge(3, p00, v00, p01, v01);
      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      if (ncut == 2) {
        std::array<int, 2> e{};
        int k = 0;
        for (int q = 0; q < 4; ++q) {
          if (cut[static_cast<std::size_t>(q)]) e[static_cast<std::size_t>(k++)] = q;
        }
        total += segment_length(pt[static_cast<std::size_t>(e[0])], pt[static_cast<std::size_t>(e[1])]);
      } else if (ncut == 4) {
        const bool center_in = 0.25 * (v00 + v10 + v01 + v11) >= 0.0;
        if (center_in == (v00 >= 0.0)) {
          total += segment_length(pt[0], pt[1]) + segment_length(pt[2], pt[3]);
        } else {
          total += segment_length(pt[0], pt[3]) + segment_length(pt[1], pt[2]);
        }
      }
    }
    row_length[i] = total;
  });
  return pairwise_sum(row_length);
}

double marching_tetrahedra(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto v = f.values();
  const double h = g.spacing();
  const int n0 = dual_count(g, 0);
  const int n1 = dual_count(g, 1);
  const int n2 = dual_count(g, 2);
  // Kuhn subdivision of the cube: one tetrahedron per axis permutation,
  // running from corner 0 to corner 7 along the main diagonal.
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<double> slab(static_cast<std::size_t>(n0), 0.0);
  parallel_for(static_cast<std::size_t>(n0), [&](std::size_t i) {
    double total = 0.0;
    for (int j = 0; j < n1; ++j) {
      for (int k = 0; k < n2; ++k) {
        std::array<double, 8> val{};
        std::array<Vec3, 8> pos{};
        const std::size_t base = g.flat({static_cast<int>(i), j, k});
        for (int corner = 0; corner < 8; ++corner) {
          std::size_t c = base;
          Vec3 p{0, 0, 0};
          for (int a = 0; a < 3; ++a) {
            if (corner & (1 << a)) {
              c = g.neighbor(c, a, +1);
              p[static_cast<std::size_t>(a)] = h;
            }
          }
          val[static_cast<std::size_t>(corner)] = v[c];
          pos[static_cast<std::size_t>(corner)] = p;
        }
        for (const auto& perm : kPerms) {
          const int c1 = 1 << perm[0];
          const int c2 = c1 | (1 << perm[1]);
          const std::array<int, 4> tet = {0, c1, c2, 7};
          std::array<int, 4> in{}, out{};
          int nin = 0, nout = 0;
          for (int q : tet) {
            if (val[static_cast<std::size_t>(q)] >= 0.0) {
              in[static_cast<std::size_t>(nin++)] = q;
            } else {
              out[static_cast<std::size_t>(nout++)] = q;
            }
          }
          auto cross = [&](int a, int b) {
            return lerp_zero(pos[static_cast<std::size_t>(a)], val[static_cast<std::size_t>(a)],
                             pos[static_cast<std::size_t>(b)], val[static_cast<std::size_t>(b)]);
          };
          if (nin == 1 || nout == 1) {
            const int lone = nin == 1 ? in[0] : out[0];
            const auto& rest = nin == 1 ? out : in;
            total += triangle_area(cross(lone, rest[0]), cross(lone, rest[1]), cross(lone, rest[2]));
          } else if (nin == 2) {
            const Vec3 p00 = cross(in[0], out[0]);
            const Vec3 p01 = cross(in[0], out[1]);
            const Vec3 p11 = cross(in[1], out[1]);
            const Vec3 p10 = cross(in[1], out[0]);
            total += triangle_area(p00, p01, p11) + triangle_area(p00, p11, p10);
          }
        }
      }
    }
    slab[i] = total;
  });
  return pairwise_sum(slab);
}


double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const Vec3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const Vec3 w{d[0] - a[0], d[1] - a[1], d[2] - a[2]};
  return std::abs(u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                  u[2] * (v[0] * w[1] - v[1] * w[0])) /
         6.0;
}

// Measure of {L >= 0} inside a simplex of `n + 1` vertices with the linear
// interpolant L of the vertex values.
double positive_measure(int n, const std::array<Vec3, 4>& p, const std::array<double, 4>& f) {
  std::array<int, 4> in{}, out{};
  int nin = 0, nout = 0;
  for (int q = 0; q <= n; ++q) {
    if (f[static_cast<std::size_t>(q)] >= 0.0) {
      in[static_cast<std::size_t>(nin++)] = q;
    } else {
      out[static_cast<std::size_t>(nout++)] = q;
    }
  }
  auto at = [&](int q) -> const Vec3& { return p[static_cast<std::size_t>(q)]; };
  auto cross = [&](int a, int b) {
    return lerp_zero(at(a), f[static_cast<std::size_t>(a)], at(b), f[static_cast<std::size_t>(b)]);
  };
  auto whole = [&] {
    if (n == 1) return segment_length(at(0), at(1));
    if (n == 2) return triangle_area(at(0), at(1), at(2));
    return tet_volume(at(0), at(1), at(2), at(3));
  };
  if (nout == 0) return whole();
  if (nin == 0) return 0.0;
  // Corner simplex cut off at the lone vertex.
  auto corner = [&](int lone, const std::array<int, 4>& rest) {
    if (n == 1) return segment_length(at(lone), cross(lone, rest[0]));
    if (n == 2) return triangle_area(at(lone), cross(lone, rest[0]), cross(lone, rest[1]));
    return tet_volume(at(lone), cross(lone, rest[0]), cross(lone, rest[1]), cross(lone, rest[2]));
  };
  if (nin == 1) return corner(in[0], out);
  if (nout == 1) return whole() - corner(out[0], in);
  // Tetrahedron split two and two: a prism with planar faces.
  const Vec3& a0 = at(in[0]);
  const Vec3 b0 = cross(in[0], out[0]);
  const Vec3 c0 = cross(in[0], out[1]);
  const Vec3& a1 = at(in[1]);
  const Vec3 b1 = cross(in[1], out[0]);
  const Vec3 c1 = cross(in[1], out[1]);
  return tet_volume(a0, b0, c0, c1) + tet_volume(a0, b0, b1, c1) + tet_volume(a0, a1, b1, c1);
}

}  // namespace

double zero_level_set_measure(const ScalarField& f) {
  switch (f.grid().dim()) {
    case 1:
      return crossings_1d(f);
    case 2:
      return marching_squares(f);
    default:
      return marching_tetrahedra(f);
  }
}

VolumePerimeter volume_and_perimeter(const PhaseField& phase, const Potential& potential) {
  const Grid& g = phase.grid();
  const ScalarField indicator = phase_indicator(phase);
  VolumePerimeter out;
  out.volume = pairwise_sum(indicator.values()) * g.cell_volume();

  const VectorField grad = spatial_gradient(phase.field());
  const auto v = phase.values();
  std::vector<double> density(g.size());
  parallel_for(g.size(), [&](std::size_t c) {
    double sq = 0.0;
    for (const auto& comp : grad) sq += comp[c] * comp[c];
    density[c] = potential.sqrt_2W(v[c]) * std::sqrt(sq);
  });
  out.perimeter_modica_mortola = pairwise_sum(density) * g.cell_volume() / potential.sigma();
  out.perimeter_contour = zero_level_set_measure(phase.field());
  return out;
}

double interpolated_phase_integral(const PhaseField& phase,
                                   const std::function<double(const Point&)>& weight) {
  const Grid& g = phase.grid();
  const auto v = phase.values();
  const int n = g.dim();
  const double h = g.spacing();
  std::array<int, 3> count{1, 1, 1};
  for (int a = 0; a < n; ++a) count[static_cast<std::size_t>(a)] = dual_count(g, a);
  // Kuhn simplices: one per axis permutation, from corner 0 to the far corner.
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> perm{0, 1, 2};
  do {
    bool ok = true;
    for (int a = n; a < 3; ++a) ok = ok && perm[static_cast<std::size_t>(a)] == a;
    if (ok) perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> slab(static_cast<std::size_t>(count[0]), 0.0);
  parallel_for(slab.size(), [&](std::size_t i) {
    double total = 0.0;
    for (int j = 0; j < count[1]; ++j) {
      for (int k = 0; k < count[2]; ++k) {
        const std::size_t base = g.flat({static_cast<int>(i), j, k});
        const Point origin = g.center(base);
        for (const auto& pm : perms) {
          std::array<Vec3, 4> pos{};
          std::array<double, 4> val{};
          std::size_t c = base;
          Vec3 x{0.0, 0.0, 0.0};
          val[0] = v[c];
          for (int s = 0; s < n; ++s) {
            const int axis = pm[static_cast<std::size_t>(s)];
            c = g.neighbor(c, axis, +1);
            x[static_cast<std::size_t>(axis)] += h;
            pos[static_cast<std::size_t>(s + 1)] = x;
            val[static_cast<std::size_t>(s + 1)] = v[c];
          }
          const double m = positive_measure(n, pos, val);
          if (m == 0.0) continue;
          Point centroid = origin;
          for (int s = 0; s <= n; ++s) {
            for (int a = 0; a < 3; ++a) {
              centroid[static_cast<std::size_t>(a)] +=
                  pos[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] / (n + 1);
            }
          }
          total += m * weight(centroid);
        }
      }
    }
    slab[i] = total;
  });
  return pairwise_sum(slab);
}

}  // namespace aclab
