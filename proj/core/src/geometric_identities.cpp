#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "aclab/checks.hpp"

namespace aclab {

namespace {

void require_before_extinction(const ReferenceFlow& flow, double t) {
  flow.validate();
  if (flow.kind != ReferenceFlow::Kind::smooth_sphere) {
    throw std::invalid_argument("geometric identities need a smooth sphere flow");
  }
  if (!(t >= 0.0 && t < flow.extinction_time())) {
    std::ostringstream msg;
    msg << "geometric identities: t = " << t << " is not before extinction at "
        << flow.extinction_time();
    throw std::invalid_argument(msg.str());
  }
}

// Unit directions sampling the sphere S^{n-1}.
std::vector<Point> directions(int dim, int count) {
  std::vector<Point> out;
  const double pi = std::numbers::pi;
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    if (dim == 2) {
      const double th = 2.0 * pi * (i + 0.5) / count;
      out.push_back({std::cos(th), std::sin(th), 0.0});
    } else {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      out.push_back({s * std::cos(golden * i), s * std::sin(golden * i), z});
    }
  }
  return out;
}

// Point of the space-time boundary for parameters (angles..., t); the last
// coordinate is time.
std::array<double, 4> surface_point(const ReferenceFlow& flow, const std::array<double, 3>& p) {
  if (flow.dim == 2) {
    const double r = exact_flow_radius(flow, p[1]);
    return {flow.center[0] + r * std::cos(p[0]), flow.center[1] + r * std::sin(p[0]), p[1], 0.0};
  }
  const double r = exact_flow_radius(flow, p[2]);
  return {flow.center[0] + r * std::sin(p[0]) * std::cos(p[1]),
          flow.center[1] + r * std::sin(p[0]) * std::sin(p[1]), flow.center[2] + r * std::cos(p[0]),
          p[2]};
}

// Solves the m x m system G a = b by Gaussian elimination with partial pivoting.
template <std::size_t M>
std::array<double, M> solve(std::array<std::array<double, M>, M> g, std::array<double, M> b,
                            std::size_t m) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    }
    std::swap(g[col], g[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = g[r][col] / g[col][col];
      for (std::size_t c = col; c < m; ++c) g[r][c] -= f * g[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, M> x{};
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= g[i][c] * x[c];
    x[i] = s / g[i][i];
  }
  return x;
}

}  // namespace

double coarea_factor(const ReferenceFlow& flow, double t) {
  require_before_extinction(flow, t);
  const double h = (flow.dim - 1) / exact_flow_radius(flow, t);
  return 1.0 / std::sqrt(1.0 + h * h);
}

CheckOutcome geometric_identity_check(const ReferenceFlow& flow, const std::vector<double>& times,
                                      double tolerance) {
  if (times.empty()) throw std::invalid_argument("geometric_identities: no sample times");
  const int n = flow.dim;
  double coarea = 0.0, slicing = 0.0, normal = 0.0, unit = 0.0, law = 0.0;
  for (double t : times) {
    require_before_extinction(flow, t);
    const double r = exact_flow_radius(flow, t);
    const double rdot = exact_flow_radius_rate(flow, t);
    for (const Point& u : directions(n, 64)) {
      // Mean curvature vector of the sphere: h = -(n - 1) / r * nu_t with nu_t = u.
      Point hvec{};
      for (int a = 0; a < n; ++a) hvec[static_cast<std::size_t>(a)] = -(n - 1) / r * u[static_cast<std::size_t>(a)];
      const double h_dot_nu = hvec[0] * u[0] + hvec[1] * u[1] + hvec[2] * u[2];
      const double h_norm = std::sqrt(hvec[0] * hvec[0] + hvec[1] * hvec[1] + hvec[2] * hvec[2]);
      law = std::max(law, std::abs(rdot - h_dot_nu));

      // Space-time normal by normalizing grad F for F(x, t) = |x - c|^2 - r(t)^2:
      // grad F = (2 (x - c), -2 r r') at x = c + r u.
      std::array<double, 4> gf{};
      for (int a = 0; a < n; ++a) gf[static_cast<std::size_t>(a)] = 2.0 * r * u[static_cast<std::size_t>(a)];
      gf[static_cast<std::size_t>(n)] = -2.0 * r * rdot;
      double len = 0.0;
      for (int a = 0; a <= n; ++a) len += gf[static_cast<std::size_t>(a)] * gf[static_cast<std::size_t>(a)];
      len = std::sqrt(len);
      std::array<double, 4> nu_e{};
      for (int a = 0; a <= n; ++a) nu_e[static_cast<std::size_t>(a)] = gf[static_cast<std::size_t>(a)] / len;

      double p2 = 0.0;
      for (int a = 0; a < n; ++a) p2 += nu_e[static_cast<std::size_t>(a)] * nu_e[static_cast<std::size_t>(a)];
      const double q = nu_e[static_cast<std::size_t>(n)];
      unit = std::max(unit, std::abs(p2 + q * q - 1.0));

      // |grad^{dE} q| = |e_t - (e_t . nu_E) nu_E| = sqrt(1 - q^2).
      const double tangential = std::sqrt(std::max(0.0, 1.0 - q * q));
      coarea = std::max(coarea, std::abs(tangential - 1.0 / std::sqrt(1.0 + h_norm * h_norm)));

      const double p = std::sqrt(p2);
      const double scale = 1.0 / std::sqrt(1.0 + h_norm * h_norm);
      for (int a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        slicing = std::max(slicing, std::abs(nu_e[ua] / p - u[ua]));
        normal = std::max(normal, std::abs(nu_e[ua] - scale * u[ua]));
      }
      normal = std::max(normal, std::abs(q - scale * (-h_dot_nu)));
    }
  }
  const double worst = std::max({coarea, slicing, normal, unit, law});
  return CheckOutcome::make(worst, 0.0, tolerance, Sided::upper,
                            {{"coarea_factor", coarea},
                             {"slicing", slicing},
                             {"spacetime_normal", normal},
                             {"unit_normal", unit},
                             {"radius_rate", law}});
}

CheckOutcome coarea_mesh_check(const ReferenceFlow& flow, double t, double size, double tolerance) {
  require_before_extinction(flow, t);
  if (!(size > 0.0)) throw std::invalid_argument("coarea_mesh: simplex size must be positive");
  if (t + size >= flow.extinction_time()) throw std::invalid_argument("coarea_mesh: simplex crosses extinction");
  const double expected = coarea_factor(flow, t);
  const auto m = static_cast<std::size_t>(flow.dim);  // parameter dimension: n - 1 angles + time

  // Patch base points in parameter space (angles), spread over the sphere.
  std::vector<std::array<double, 3>> bases;
  for (int i = 0; i < 8; ++i) {
    if (flow.dim == 2) {
      bases.push_back({0.3 + 0.75 * i, t, 0.0});
    } else {
      bases.push_back({0.4 + 0.3 * i, 0.2 + 0.7 * i, t});
    }
  }
  std::vector<std::array<std::size_t, 3>> perms;
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    if (m == 2 && perm[2] != 2) continue;
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double worst = 0.0;
  double simplices = 0.0;
  for (const auto& base : bases) {
    for (const auto& pi : perms) {
      // Kuhn simplex: walk from the base corner along the permuted axes.
      std::array<std::array<double, 4>, 4> vert{};
      std::array<double, 3> p = base;
      vert[0] = surface_point(flow, p);
      for (std::size_t s = 0; s < m; ++s) {
        p[pi[s]] += size;
        vert[s + 1] = surface_point(flow, p);
      }
      std::array<std::array<double, 4>, 3> edge{};
      std::array<double, 3> dq{};
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a <= m; ++a) edge[i][a] = vert[i + 1][a] - vert[0][a];
        dq[i] = vert[i + 1][m] - vert[0][m];
      }
      std::array<std::array<double, 3>, 3> gram{};
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          double s = 0.0;
          for (std::size_t a = 0; a <= m; ++a) s += edge[i][a] * edge[j][a];
          gram[i][j] = s;
        }
      }
      // Tangential gradient g = sum alpha_j E_j with E_i . g = dq_i; |g|^2 = alpha . dq.
      const auto alpha = solve<3>(gram, dq, m);
      double g2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) g2 += alpha[i] * dq[i];
      worst = std::max(worst, std::abs(std::sqrt(g2) - expected));
      simplices += 1.0;
    }
  }
  return CheckOutcome::make(worst, 0.0, tolerance, Sided::upper,
                            {{"expected_factor", expected}, {"simplices", simplices}, {"size", size}});
}

}  // namespace aclab
