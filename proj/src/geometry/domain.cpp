// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "acoustic_layer/core/chebyshev.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/periodic.hpp"
#include "acoustic_layer/geometry.hpp"

namespace acoustic_layer::geometry
{

namespace
{

std::uint64_t next_domain_id()
{
  static std::atomic<std::uint64_t> counter{1};
  return counter++;
}

Vec2 rot90(const Vec2 &v) { return Vec2(-v.y(), v.x()); }

double wrap(double s, double period)
{
  double r = std::fmod(s, period);
  return r < 0.0 ? r + period : r;
}

// Circle component. outer = true: counterclockwise with outward normal e_r.
// outer = false: clockwise with outward normal -e_r (hole boundary).
BoundaryComponent circle_component(double radius, int n, bool outer)
{
  BoundaryComponent c;
  c.length = 2.0 * kPi * radius;
  c.uniform = true;
  for (int j = 0; j < n; ++j)
  {
    const double s = c.length * j / n;
    const double theta = outer ? s / radius : -s / radius;
    const Vec2 er(std::cos(theta), std::sin(theta));
    const Vec2 normal = outer ? er : Vec2(-er);
    c.s.push_back(s);
    c.x.push_back(radius * er);
    c.normal.push_back(normal);
    c.tangent.push_back(rot90(normal));
    c.curvature.push_back(outer ? 1.0 / radius : -1.0 / radius);
    c.weight.push_back(c.length / n);
  }
  return c;
}

double segment_distance(const Point &x, const Point &a, const Point &b, double &t)
{
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  t = len2 > 0.0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (x - (a + t * ab)).norm();
}

}  // namespace

std::string to_string(DomainKind kind)
{
  switch (kind)
  {
    case DomainKind::disc: return "disc";
    case DomainKind::annulus: return "annulus";
    case DomainKind::ellipse: return "ellipse";
    case DomainKind::rectangle: return "rectangle";
    case DomainKind::mesh: return "mesh";
  }
  return "unknown";
}

DomainKind parse_domain_kind(const std::string &name)
{
  static const std::map<std::string, DomainKind> kinds = {{"disc", DomainKind::disc},
                                                          {"annulus", DomainKind::annulus},
                                                          {"ellipse", DomainKind::ellipse},
                                                          {"rectangle", DomainKind::rectangle},
                                                          {"mesh", DomainKind::mesh}};
  const auto it = kinds.find(name);
  if (it == kinds.end())
  {
    throw ConfigurationError("unknown domain kind '" + name + "'");
  }
  return it->second;
}

CutoffValue cutoff_profile(double d, double delta)
{
  const double a = delta / 3.0;
  if (d <= a)
  {
    return {1.0, 0.0, 0.0};
  }
  if (d >= 2.0 * a)
  {
    return {0.0, 0.0, 0.0};
  }
  // chi = 1 / (1 + e^q), q = 1/(1-t) - 1/t, t = (d - a)/a.
  const double t = (d - a) / a;
  const double q = 1.0 / (1.0 - t) - 1.0 / t;
  const double q1 = 1.0 / ((1.0 - t) * (1.0 - t)) + 1.0 / (t * t);
  const double q2 = 2.0 / std::pow(1.0 - t, 3) - 2.0 / std::pow(t, 3);
  const double u = q > 0.0 ? std::exp(-q) / (1.0 + std::exp(-q)) : 1.0 / (1.0 + std::exp(q));
  const double uu = u * (1.0 - u);
  const double g1 = -q1 * uu;
  const double g2 = -q2 * uu + q1 * q1 * uu * (1.0 - 2.0 * u);
  return {u, g1 / a, g2 / (a * a)};
}

// ---------------------------------------------------------------------------
// Ellipse arc length

struct Domain::EllipseArc
{
  double a, b, mean_speed;
  periodic::TrigInterpolant speed;

  EllipseArc(double a_, double b_) : a(a_), b(b_)
  {
    const int m = 512;
    std::vector<cplx> samples(m);
    for (int j = 0; j < m; ++j)
    {
      const double t = 2.0 * kPi * j / m;
      samples[j] = std::sqrt(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t));
    }
    speed = periodic::TrigInterpolant(samples, 2.0 * kPi);
    mean_speed = speed.coefficient(0).real();
  }

  double length() const { return 2.0 * kPi * mean_speed; }

  double s_of_t(double t) const
  {
    double s = mean_speed * t;
    const int n = static_cast<int>(speed.size());
    for (int k = 1; k < n / 2; ++k)
    {
      // Real speed: c_{-k} = conj(c_k).
      const cplx c = speed.coefficient(k);
      s += 2.0 * (c * (std::exp(cplx(0.0, k * t)) - 1.0) / cplx(0.0, k)).real();
    }
    return s;
  }

  double t_of_s(double s) const
  {
    double t = s / mean_speed;
    for (int it = 0; it < 50; ++it)
    {
      const double f = s_of_t(t) - s;
      const double ds = std::sqrt(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t));
      const double dt = f / ds;
      t -= dt;
      if (std::abs(dt) < 1e-15)
      {
        break;
      }
    }
    return t;
  }

  BoundaryFrame frame_at_t(double t) const
  {
    BoundaryFrame f;
    f.x = Point(a * std::cos(t), b * std::sin(t));
    const Vec2 n(b * std::cos(t), a * std::sin(t));
    f.normal = n.normalized();
    f.tangent = rot90(f.normal);
    const double q = a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t);
    f.curvature = a * b / std::pow(q, 1.5);
    return f;
  }
};

// Closest point on the ellipse (x/a)^2 + (y/b)^2 = 1 to an interior point,
// by bisection on the foot-point equation in the first quadrant.
static Point ellipse_foot(double a, double b, const Point &p)
{
  const double x0 = std::abs(p.x()), y0 = std::abs(p.y());
  const bool swap = a < b;
  const double e0 = swap ? b : a, e1 = swap ? a : b;
  const double y0s = swap ? x0 : y0, x0s = swap ? y0 : x0;
  double fx, fy;
  if (y0s > 0.0)
  {
    if (x0s > 0.0)
    {
      const double z0 = x0s / e0, z1 = y0s / e1, r0 = (e0 / e1) * (e0 / e1);
      auto g = [&](double s) {
        const double u = r0 * z0 / (s + r0), v = z1 / (s + 1.0);
        return u * u + v * v - 1.0;
      };
      double s0 = z1 - 1.0;
      double s1 = g(0.0) < 0.0 ? 0.0 : std::hypot(r0 * z0, z1) - 1.0;
      for (int it = 0; it < 200; ++it)
      {
        const double sm = 0.5 * (s0 + s1);
        if (sm == s0 || sm == s1)
        {
          break;
        }
        if (g(sm) > 0.0)
        {
          s0 = sm;
        }
        else
        {
          s1 = sm;
        }
      }
      const double sbar = 0.5 * (s0 + s1);
      fx = r0 * x0s / (sbar + r0);
      fy = y0s / (sbar + 1.0);
    }
    else
    {
      fx = 0.0;
      fy = e1;
    }
  }
  else
  {
    const double limit = (e0 * e0 - e1 * e1) / e0;
    if (x0s < limit)
    {
      fx = e0 * e0 * x0s / (e0 * e0 - e1 * e1);
      fy = e1 * std::sqrt(std::max(0.0, 1.0 - (fx / e0) * (fx / e0)));
    }
    else
    {
      fx = e0;
      fy = 0.0;
    }
  }
  double rx = swap ? fy : fx, ry = swap ? fx : fy;
  return Point(std::copysign(rx, p.x()), std::copysign(ry, p.y()));
}

// ---------------------------------------------------------------------------
// Mesh point location

struct Domain::MeshIndex
{
  Point lo, hi;
  int nx = 1, ny = 1;
  std::vector<std::vector<int>> cells;
  // Per boundary component: node indices along the loop.
  std::vector<std::vector<int>> loops;

  int cell(int i, int j) const { return j * nx + i; }
};

// ---------------------------------------------------------------------------
// Factories

void Domain::finish(std::optional<double> delta, double default_delta, double reach)
{
  id_ = next_domain_id();
  if (delta)
  {
    if (!(*delta > 0.0))
    {
      throw ConfigurationError("tubular width must be positive");
    }
    if (kind_ != DomainKind::rectangle && kind_ != DomainKind::mesh && !(*delta < reach))
    {
      std::ostringstream msg;
      msg << "tubular width " << *delta << " must be below the reach " << reach;
      throw ConfigurationError(msg.str());
    }
    delta_ = *delta;
  }
  else
  {
    delta_ = default_delta;
  }
}

Domain Domain::disc(double radius, std::optional<double> delta, int boundary_samples)
{
  if (!(radius > 0.0))
  {
    throw ConfigurationError("disc radius must be positive");
  }
  Domain d;
  d.kind_ = DomainKind::disc;
  d.params_ = {radius};
  d.area_ = kPi * radius * radius;
  d.boundary_ = std::make_shared<std::vector<BoundaryComponent>>(
    std::vector<BoundaryComponent>{circle_component(radius, boundary_samples, true)});
  d.finish(delta, 0.5 * radius, radius);
  return d;
}

Domain Domain::annulus(double inner, double outer, std::optional<double> delta, int boundary_samples)
{
  if (!(inner > 0.0 && outer > inner))
  {
    throw ConfigurationError("annulus radii must satisfy 0 < inner < outer");
  }
  Domain d;
  d.kind_ = DomainKind::annulus;
  d.params_ = {inner, outer};
  d.area_ = kPi * (outer * outer - inner * inner);
  d.boundary_ = std::make_shared<std::vector<BoundaryComponent>>(std::vector<BoundaryComponent>{
    circle_component(outer, boundary_samples, true), circle_component(inner, boundary_samples, false)});
  const double reach = std::min(outer, 0.5 * (outer - inner));
  d.finish(delta, 0.5 * reach, reach);
  return d;
}

Domain Domain::ellipse(double a, double b, std::optional<double> delta, int boundary_samples)
{
  if (!(a > 0.0 && b > 0.0))
  {
    throw ConfigurationError("ellipse semi-axes must be positive");
  }
  Domain d;
  d.kind_ = DomainKind::ellipse;
  d.params_ = {a, b};
  d.area_ = kPi * a * b;
  auto arc = std::make_shared<EllipseArc>(a, b);
  BoundaryComponent c;
  c.length = arc->length();
  c.uniform = true;
  for (int j = 0; j < boundary_samples; ++j)
  {
    const double s = c.length * j / boundary_samples;
    const auto f = arc->frame_at_t(arc->t_of_s(s));
    c.s.push_back(s);
    c.x.push_back(f.x);
    c.normal.push_back(f.normal);
    c.tangent.push_back(f.tangent);
    c.curvature.push_back(f.curvature);
    c.weight.push_back(c.length / boundary_samples);
  }
  d.arc_ = arc;
  d.boundary_ = std::make_shared<std::vector<BoundaryComponent>>(std::vector<BoundaryComponent>{c});
  const double reach = std::min(a, b) * std::min(a, b) / std::max(a, b);
  d.finish(delta, 0.5 * reach, reach);
  return d;
}

Domain Domain::rectangle(double lx, double ly, std::optional<double> delta, int samples_per_side)
{
  if (!(lx > 0.0 && ly > 0.0))
  {
    throw ConfigurationError("rectangle sides must be positive");
  }
  Domain d;
  d.kind_ = DomainKind::rectangle;
  d.params_ = {lx, ly};
  d.area_ = lx * ly;
  // Each side carries its own Chebyshev-Lobatto samples; segment starts are
  // recorded through the arc-length jumps of s.
  BoundaryComponent c;
  c.length = 2.0 * (lx + ly);
  c.uniform = false;
  const std::array<Point, 4> start = {Point(0, 0), Point(lx, 0), Point(lx, ly), Point(0, ly)};
  const std::array<Vec2, 4> dir = {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)};
  const std::array<double, 4> len = {lx, ly, lx, ly};
  double s0 = 0.0;
  const int n = std::max(4, samples_per_side);
  for (int side = 0; side < 4; ++side)
  {
    chebyshev::Grid grid(0.0, len[side], n);
    // Clenshaw-Curtis weights on [0, len].
    std::vector<double> w(n + 1, 0.0);
    for (int j = 0; j <= n; ++j)
    {
      double sum = 0.0;
      for (int k = 0; k <= n; k += 2)
      {
        const double ck = (k == 0 || k == n) ? 1.0 : 2.0;
        sum += ck / (1.0 - k * k) * std::cos(kPi * k * j / n);
      }
      const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
      w[j] = cj * sum / n * len[side] * 0.5;
    }
    const Vec2 normal(dir[side].y(), -dir[side].x());
    for (int j = n; j >= 0; --j)
    {
      const double local = grid.nodes()(j);
      c.s.push_back(s0 + local);
      c.x.push_back(start[side] + local * dir[side]);
      c.normal.push_back(normal);
      c.tangent.push_back(dir[side]);
      c.curvature.push_back(0.0);
      c.weight.push_back(w[j]);
    }
    s0 += len[side];
  }
  d.boundary_ = std::make_shared<std::vector<BoundaryComponent>>(std::vector<BoundaryComponent>{c});
  d.finish(delta, 0.25 * std::min(lx, ly), std::numeric_limits<double>::infinity());
  return d;
}

Domain Domain::from_mesh(Mesh mesh, std::optional<double> delta)
{
  validate_mesh(mesh);
  Domain d;
  d.kind_ = DomainKind::mesh;
  auto index = std::make_shared<MeshIndex>();

  // Orient boundary edges as they appear in counterclockwise triangles.
  std::map<std::pair<int, int>, int> directed;
  for (const auto &t : mesh.triangles)
  {
    for (int e = 0; e < 3; ++e)
    {
      directed[{t[e], t[(e + 1) % 3]}] = 1;
    }
  }
  std::map<int, int> next;
  for (const auto &e : mesh.boundary_edges)
  {
    if (directed.count({e[0], e[1]}))
    {
      next[e[0]] = e[1];
    }
    else if (directed.count({e[1], e[0]}))
    {
      next[e[1]] = e[0];
    }
    else
    {
      throw MeshError("boundary edge does not belong to any triangle");
    }
  }
  std::map<int, bool> used;
  std::vector<BoundaryComponent> comps;
  for (const auto &[first, unused] : next)
  {
    if (used[first])
    {
      continue;
    }
    std::vector<int> loop;
    int v = first;
    do
    {
      used[v] = true;
      loop.push_back(v);
      v = next.at(v);
    } while (v != first);
    const std::size_t m = loop.size();
    BoundaryComponent c;
    c.uniform = false;
    std::vector<double> edge_len(m);
    std::vector<Vec2> edge_dir(m);
    for (std::size_t j = 0; j < m; ++j)
    {
      const Vec2 e = mesh.nodes[loop[(j + 1) % m]] - mesh.nodes[loop[j]];
      edge_len[j] = e.norm();
      edge_dir[j] = e / edge_len[j];
    }
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
    {
      const std::size_t jm = (j + m - 1) % m;
      const Vec2 t = (edge_dir[jm] + edge_dir[j]).normalized();
      const double turn = std::atan2(edge_dir[jm].x() * edge_dir[j].y() - edge_dir[jm].y() * edge_dir[j].x(),
                                     edge_dir[jm].dot(edge_dir[j]));
      const double w = 0.5 * (edge_len[jm] + edge_len[j]);
      c.s.push_back(s);
      c.x.push_back(mesh.nodes[loop[j]]);
      c.tangent.push_back(t);
      c.normal.push_back(Vec2(t.y(), -t.x()));
      c.curvature.push_back(turn / w);
      c.weight.push_back(w);
      s += edge_len[j];
    }
    c.length = s;
    comps.push_back(std::move(c));
    index->loops.push_back(std::move(loop));
  }

  double area = 0.0;
  for (const auto &t : mesh.triangles)
  {
    const Vec2 e1 = mesh.nodes[t[1]] - mesh.nodes[t[0]], e2 = mesh.nodes[t[2]] - mesh.nodes[t[0]];
    area += 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  }
  d.area_ = area;

  // Bucket grid for point location.
  index->lo = mesh.nodes[0];
  index->hi = mesh.nodes[0];
  for (const auto &p : mesh.nodes)
  {
    index->lo = index->lo.cwiseMin(p);
    index->hi = index->hi.cwiseMax(p);
  }
  const int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(mesh.triangles.size()) / 2.0)));
  index->nx = index->ny = cells;
  index->cells.assign(static_cast<std::size_t>(cells * cells), {});
  const Vec2 span = (index->hi - index->lo).cwiseMax(Vec2(1e-300, 1e-300));
  auto cell_of = [&](double v, double lo, double sp) {
    return std::clamp(static_cast<int>((v - lo) / sp * cells), 0, cells - 1);
  };
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti)
  {
    Point lo = mesh.nodes[mesh.triangles[ti][0]], hi = lo;
    for (int k = 1; k < 3; ++k)
    {
      lo = lo.cwiseMin(mesh.nodes[mesh.triangles[ti][k]]);
      hi = hi.cwiseMax(mesh.nodes[mesh.triangles[ti][k]]);
    }
    for (int j = cell_of(lo.y(), index->lo.y(), span.y()); j <= cell_of(hi.y(), index->lo.y(), span.y()); ++j)
    {
      for (int i = cell_of(lo.x(), index->lo.x(), span.x()); i <= cell_of(hi.x(), index->lo.x(), span.x());
           ++i)
      {
        index->cells[index->cell(i, j)].push_back(static_cast<int>(ti));
      }
    }
  }

  // Default width: half of the smaller of the minimum radius of curvature
  // and half the separation between geometrically distinct boundary parts.
  double kmax = 0.0;
  for (const auto &c : comps)
  {
    for (double k : c.curvature)
    {
      kmax = std::max(kmax, std::abs(k));
    }
  }
  const double rcurv = kmax > 0.0 ? 1.0 / kmax : std::numeric_limits<double>::infinity();
  double separation = std::numeric_limits<double>::infinity();
  for (std::size_t ci = 0; ci < comps.size(); ++ci)
  {
    for (std::size_t j = 0; j < comps[ci].size(); ++j)
    {
      for (std::size_t cj = 0; cj < comps.size(); ++cj)
      {
        const auto &other = comps[cj];
        for (std::size_t e = 0; e < other.size(); ++e)
        {
          if (ci == cj)
          {
            const double gap = std::abs(other.s[e] - comps[ci].s[j]);
            const double arc = std::min(gap, other.length - gap);
            if (arc < kPi * rcurv)
            {
              continue;
            }
          }
          double t;
          separation = std::min(separation, segment_distance(comps[ci].x[j], other.x[e],
                                                             other.x[(e + 1) % other.size()], t));
        }
      }
    }
  }
  const double default_delta = 0.5 * std::min(rcurv, 0.5 * separation);

  d.boundary_ = std::make_shared<std::vector<BoundaryComponent>>(std::move(comps));
  d.mesh_ = std::make_shared<Mesh>(std::move(mesh));
  d.index_ = index;
  d.finish(delta, default_delta, std::numeric_limits<double>::infinity());
  return d;
}

double Domain::boundary_length() const
{
  double sum = 0.0;
  for (const auto &c : *boundary_)
  {
    sum += c.length;
  }
  return sum;
}

std::optional<std::pair<int, Eigen::Vector3d>> Domain::locate(const Point &x) const
{
  if (!mesh_)
  {
    return std::nullopt;
  }
  const auto &idx = *index_;
  const Vec2 span = (idx.hi - idx.lo).cwiseMax(Vec2(1e-300, 1e-300));
  const int i = static_cast<int>((x.x() - idx.lo.x()) / span.x() * idx.nx);
  const int j = static_cast<int>((x.y() - idx.lo.y()) / span.y() * idx.ny);
  if (i < 0 || j < 0 || i > idx.nx || j > idx.ny)
  {
    return std::nullopt;
  }
  const auto &cell = idx.cells[idx.cell(std::min(i, idx.nx - 1), std::min(j, idx.ny - 1))];
  const double tol = 1e-12;
  for (int ti : cell)
  {
    const auto &t = mesh_->triangles[ti];
    const Point &a = mesh_->nodes[t[0]], &b = mesh_->nodes[t[1]], &c = mesh_->nodes[t[2]];
    Eigen::Matrix2d m;
    m.col(0) = b - a;
    m.col(1) = c - a;
    const Eigen::Vector2d l = m.partialPivLu().solve(x - a);
    const Eigen::Vector3d bary(1.0 - l.sum(), l.x(), l.y());
    if (bary.minCoeff() >= -tol)
    {
      return std::make_pair(ti, bary);
    }
  }
  return std::nullopt;
}

const std::vector<std::vector<int>> &Domain::mesh_boundary_nodes() const
{
  if (!index_)
  {
    throw CapabilityError("boundary node indices exist for meshes only");
  }
  return index_->loops;
}

bool Domain::contains(const Point &x, double tol) const
{
  const auto &p = params_;
  switch (kind_)
  {
    case DomainKind::disc: return x.norm() <= p[0] * (1.0 + tol) + tol;
    case DomainKind::annulus:
    {
      const double r = x.norm();
      return r <= p[1] * (1.0 + tol) + tol && r >= p[0] * (1.0 - tol) - tol;
    }
    case DomainKind::ellipse:
      return (x.x() / p[0]) * (x.x() / p[0]) + (x.y() / p[1]) * (x.y() / p[1]) <= 1.0 + tol;
    case DomainKind::rectangle:
      return x.x() >= -tol && x.y() >= -tol && x.x() <= p[0] + tol && x.y() <= p[1] + tol;
    case DomainKind::mesh: return locate(x).has_value();
  }
  return false;
}

ChartPoint Domain::chart_point(const Point &x) const
{
  if (!contains(x, 1e-12))
  {
    std::ostringstream msg;
    msg << "point (" << x.x() << ", " << x.y() << ") lies outside the domain";
    throw DomainError(msg.str());
  }
  ChartPoint cp;
  const auto &p = params_;
  switch (kind_)
  {
    case DomainKind::disc:
    case DomainKind::annulus:
    {
      const double r = x.norm();
      const double d_out = std::max(0.0, p.back() - r);
      const double d_in = kind_ == DomainKind::annulus ? std::max(0.0, r - p[0])
                                                       : std::numeric_limits<double>::infinity();
      const bool inner = d_in < d_out;
      cp.d = inner ? d_in : d_out;
      cp.in_tube = cp.d < delta_;
      if (cp.in_tube)
      {
        const double radius = inner ? p[0] : p.back();
        const Vec2 er = x / r;
        const double theta = std::atan2(x.y(), x.x());
        cp.component = inner ? 1 : 0;
        cp.proj = radius * er;
        cp.grad_d = inner ? er : Vec2(-er);
        const double length = 2.0 * kPi * radius;
        cp.s = wrap(inner ? -theta * radius : theta * radius, length);
      }
      return cp;
    }
    case DomainKind::ellipse:
    {
      const Point foot = ellipse_foot(p[0], p[1], x);
      cp.d = (x - foot).norm();
      cp.in_tube = cp.d < delta_;
      if (cp.in_tube)
      {
        const double t = std::atan2(foot.y() / p[1], foot.x() / p[0]);
        const auto f = arc_->frame_at_t(t);
        cp.proj = foot;
        cp.grad_d = cp.d > 1e-14 ? Vec2((x - foot) / cp.d) : Vec2(-f.normal);
        cp.s = wrap(arc_->s_of_t(t), arc_->length());
      }
      return cp;
    }
    case DomainKind::rectangle:
    {
      const std::array<double, 4> dist = {x.y(), p[0] - x.x(), p[1] - x.y(), x.x()};
      const std::array<Point, 4> feet = {Point(x.x(), 0.0), Point(p[0], x.y()), Point(x.x(), p[1]),
                                         Point(0.0, x.y())};
      const std::array<Vec2, 4> inward = {Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1), Vec2(1, 0)};
      const std::array<double, 4> s_at = {x.x(), p[0] + x.y(), p[0] + p[1] + (p[0] - x.x()),
                                          2.0 * p[0] + p[1] + (p[1] - x.y())};
      int best = 0;
      for (int k = 1; k < 4; ++k)
      {
        if (dist[k] < dist[best])
        {
          best = k;
        }
      }
      cp.d = std::max(0.0, dist[best]);
      cp.in_tube = cp.d < delta_;
      if (cp.in_tube)
      {
        for (int k = 0; k < 4; ++k)
        {
          if (k != best && std::abs(dist[k] - dist[best]) <= 1e-12 * std::max(1.0, dist[best]))
          {
            throw AmbiguityError("nearest boundary point is not unique near a corner", feet[best], feet[k]);
          }
        }
        cp.proj = feet[best];
        cp.grad_d = inward[best];
        cp.s = s_at[best];
      }
      return cp;
    }
    case DomainKind::mesh:
    {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0, best_e = 0;
      double best_t = 0.0;
      const auto &comps = *boundary_;
      for (std::size_t c = 0; c < comps.size(); ++c)
      {
        const auto &bc = comps[c];
        for (std::size_t e = 0; e < bc.size(); ++e)
        {
          double t;
          const double dd = segment_distance(x, bc.x[e], bc.x[(e + 1) % bc.size()], t);
          if (dd < best)
          {
            best = dd;
            best_c = c;
            best_e = e;
            best_t = t;
          }
        }
      }
      const auto &bc = comps[best_c];
      const Point a = bc.x[best_e], b = bc.x[(best_e + 1) % bc.size()];
      cp.d = best;
      cp.in_tube = cp.d < delta_;
      if (cp.in_tube)
      {
        cp.component = best_c;
        cp.proj = a + best_t * (b - a);
        const Vec2 edge = (b - a).normalized();
        cp.grad_d = cp.d > 1e-14 ? Vec2((x - cp.proj) / cp.d) : Vec2(rot90(edge));
        cp.s = wrap(bc.s[best_e] + best_t * (b - a).norm(), bc.length);
      }
      return cp;
    }
  }
  return cp;
}

double Domain::cutoff(const Point &x) const
{
  // Distance only; ambiguity of the foot point does not matter here.
  double d;
  if (kind_ == DomainKind::rectangle)
  {
    d = std::min({x.x(), x.y(), params_[0] - x.x(), params_[1] - x.y()});
    if (!contains(x))
    {
      throw DomainError("point lies outside the domain");
    }
  }
  else
  {
    d = chart_point(x).d;
  }
  return cutoff_profile(d, delta_).value;
}

BoundaryFrame Domain::frame(std::size_t component, double s) const
{
  const auto &comps = *boundary_;
  if (component >= comps.size())
  {
    throw ConfigurationError("boundary component index out of range");
  }
  const auto &bc = comps[component];
  s = wrap(s, bc.length);
  BoundaryFrame f;
  switch (kind_)
  {
    case DomainKind::disc:
    case DomainKind::annulus:
    {
      const bool inner = component == 1;
      const double radius = inner ? params_[0] : params_.back();
      const double theta = inner ? -s / radius : s / radius;
      const Vec2 er(std::cos(theta), std::sin(theta));
      f.x = radius * er;
      f.normal = inner ? Vec2(-er) : er;
      f.tangent = rot90(f.normal);
      f.curvature = inner ? -1.0 / radius : 1.0 / radius;
      return f;
    }
    case DomainKind::ellipse: return arc_->frame_at_t(arc_->t_of_s(s));
    case DomainKind::rectangle:
    {
      const double lx = params_[0], ly = params_[1];
      if (s < lx)
      {
        f = {Point(s, 0), Vec2(0, -1), Vec2(1, 0), 0.0};
      }
      else if (s < lx + ly)
      {
        f = {Point(lx, s - lx), Vec2(1, 0), Vec2(0, 1), 0.0};
      }
      else if (s < 2 * lx + ly)
      {
        f = {Point(lx - (s - lx - ly), ly), Vec2(0, 1), Vec2(-1, 0), 0.0};
      }
      else
      {
        f = {Point(0, ly - (s - 2 * lx - ly)), Vec2(-1, 0), Vec2(0, -1), 0.0};
      }
      return f;
    }
    case DomainKind::mesh:
    {
      const std::size_t m = bc.size();
      std::size_t e = static_cast<std::size_t>(std::upper_bound(bc.s.begin(), bc.s.end(), s) - bc.s.begin());
      e = e == 0 ? 0 : e - 1;
      const Point a = bc.x[e], b = bc.x[(e + 1) % m];
      const double len = (b - a).norm();
      const double t = std::clamp((s - bc.s[e]) / len, 0.0, 1.0);
      f.x = a + t * (b - a);
      f.tangent = (b - a) / len;
      f.normal = Vec2(f.tangent.y(), -f.tangent.x());
      f.curvature = (1.0 - t) * bc.curvature[e] + t * bc.curvature[(e + 1) % m];
      return f;
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Tangential derivative

namespace
{

// Fornberg weights for the first derivative at x0 from the given nodes.
std::vector<double> fornberg_first(double x0, const std::vector<double> &x)
{
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i)
  {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j)
    {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1)
      {
        for (std::size_t k = mn; k >= 1; --k)
        {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
      {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    w[i] = c[i][1];
  }
  return w;
}

template <typename T>
std::vector<T> tangential_derivative_impl(const std::vector<T> &f, const BoundaryComponent &chart)
{
  const std::size_t n = chart.size();
  if (f.size() != n)
  {
    throw ConfigurationError("boundary samples do not match the chart grid");
  }
  if (chart.uniform)
  {
    std::vector<T> g(f);
    return periodic::derivative(g, chart.length, 1);
  }
  if (chart.weight.size() != n)
  {
    throw ConfigurationError("non-uniform boundary grid needs quadrature weights");
  }
  std::vector<T> out(n);
  // Piecewise-smooth charts (rectangles) have repeated corner samples; each
  // straight segment is differentiated with its own Chebyshev matrix.
  std::vector<std::size_t> starts{0};
  for (std::size_t j = 1; j < n; ++j)
  {
    if ((chart.x[j] - chart.x[j - 1]).norm() < 1e-14 * std::max(1.0, chart.length))
    {
      starts.push_back(j);
    }
  }
  if (starts.size() > 1)
  {
    starts.push_back(n);
    for (std::size_t k = 0; k + 1 < starts.size(); ++k)
    {
      const std::size_t a = starts[k], b = starts[k + 1];
      const int deg = static_cast<int>(b - a) - 1;
      const double lo = chart.s[a], hi = chart.s[b - 1];
      chebyshev::Grid grid(lo, hi, deg);
      // Samples are stored from lo to hi while the grid runs from hi to lo.
      for (int i = 0; i <= deg; ++i)
      {
        T sum{};
        for (int j = 0; j <= deg; ++j)
        {
          sum += grid.diff()(deg - i, deg - j) * f[a + j];
        }
        out[a + i] = sum;
      }
    }
    return out;
  }
  // Closed polyline: 4th-order five-point stencils on the periodic grid.
  for (std::size_t j = 0; j < n; ++j)
  {
    std::vector<double> xs(5);
    std::vector<std::size_t> idx(5);
    for (int k = -2; k <= 2; ++k)
    {
      const long raw = static_cast<long>(j) + k;
      const std::size_t i = static_cast<std::size_t>((raw % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
      double sv = chart.s[i];
      if (raw < 0)
      {
        sv -= chart.length;
      }
      if (raw >= static_cast<long>(n))
      {
        sv += chart.length;
      }
      xs[k + 2] = sv;
      idx[k + 2] = i;
    }
    const auto w = fornberg_first(chart.s[j], xs);
    T sum{};
    for (int k = 0; k < 5; ++k)
    {
      sum += w[k] * f[idx[k]];
    }
    out[j] = sum;
  }
  return out;
}

}  // namespace

std::vector<cplx> tangential_derivative(const std::vector<cplx> &f, const BoundaryComponent &chart)
{
  return tangential_derivative_impl(f, chart);
}

std::vector<double> tangential_derivative(const std::vector<double> &f, const BoundaryComponent &chart)
{
  return tangential_derivative_impl(f, chart);
}

}  // namespace acoustic_layer::geometry
