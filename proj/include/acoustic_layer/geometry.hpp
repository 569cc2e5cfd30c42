// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_GEOMETRY_HPP
#define ACOUSTIC_LAYER_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acoustic_layer/core/types.hpp"

namespace acoustic_layer::geometry
{

enum class DomainKind
{
  disc,
  annulus,
  ellipse,
  rectangle,
  mesh
};

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string &name);

// Triangulation with 0-based connectivity.
struct Mesh
{
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> boundary_edges;
};

// Plain-text format: "nodes N triangles M boundary_edges K", then N lines
// "x y", M lines "i j k", K lines "i j".
Mesh read_mesh(std::istream &in);
Mesh read_mesh_file(const std::string &path);
void write_mesh(std::ostream &out, const Mesh &mesh);

// Throws MeshError on degenerate triangles, bad indices or open boundary loops.
void validate_mesh(const Mesh &mesh);

// Structured meshes used by tests and the CLI. The rectangle is
// [0, lx] x [0, ly]; the disc and ellipse are centered at the origin.
Mesh rectangle_mesh(double lx, double ly, int nx, int ny);
Mesh disc_mesh(double radius, int rings);
Mesh ellipse_mesh(double a, double b, int rings);

// Samples of one closed boundary component. Analytic kinds use a grid that
// is uniform in arc length; mesh boundaries use the mesh nodes.
// Orientation: t is the outward normal rotated by +90 degrees, so (t, -n)
// is right-handed, and the curvature enters the metric as h = 1 - kappa*d.
struct BoundaryComponent
{
  double length = 0.0;
  bool uniform = true;
  std::vector<double> s;
  std::vector<Point> x;
  std::vector<Vec2> normal;
  std::vector<Vec2> tangent;
  std::vector<double> curvature;
  std::vector<double> weight;

  std::size_t size() const { return s.size(); }
};

// Boundary frame at an arbitrary arc length.
struct BoundaryFrame
{
  Point x;
  Vec2 normal;
  Vec2 tangent;
  double curvature = 0.0;
};

// Result of the nearest-point chart. proj, grad_d, component and s are only
// meaningful when in_tube is true.
struct ChartPoint
{
  double d = 0.0;
  bool in_tube = false;
  std::size_t component = 0;
  double s = 0.0;
  Point proj = Point::Zero();
  Vec2 grad_d = Vec2::Zero();
};

// Cutoff chi(d) with its first two derivatives in d.
struct CutoffValue
{
  double value, d1, d2;
};

// chi = 1 for d <= delta/3, 0 for d >= 2 delta/3, exp(-1/t) glue between.
CutoffValue cutoff_profile(double d, double delta);

class Domain
{
public:
  static Domain disc(double radius, std::optional<double> delta = {}, int boundary_samples = 256);
  static Domain annulus(double inner, double outer, std::optional<double> delta = {},
                        int boundary_samples = 256);
  static Domain ellipse(double a, double b, std::optional<double> delta = {}, int boundary_samples = 256);
  static Domain rectangle(double lx, double ly, std::optional<double> delta = {},
                          int samples_per_side = 64);
  static Domain from_mesh(Mesh mesh, std::optional<double> delta = {});

  DomainKind kind() const { return kind_; }
  const std::vector<double> &parameters() const { return params_; }
  double tubular_width() const { return delta_; }
  bool corner_domain() const { return kind_ == DomainKind::rectangle; }
  bool is_polar() const { return kind_ == DomainKind::disc || kind_ == DomainKind::annulus; }
  double area() const { return area_; }
  double boundary_length() const;
  // Identity shared by copies; fields and quadratures record it.
  std::uint64_t id() const { return id_; }

  const std::vector<BoundaryComponent> &boundary() const { return *boundary_; }
  const Mesh *mesh() const { return mesh_.get(); }

  bool contains(const Point &x, double tol = 1e-12) const;
  ChartPoint chart_point(const Point &x) const;
  double cutoff(const Point &x) const;
  BoundaryFrame frame(std::size_t component, double s) const;

  // Index of the mesh triangle containing x and its barycentric
  // coordinates; mesh kind only.
  std::optional<std::pair<int, Eigen::Vector3d>> locate(const Point &x) const;
  // Mesh node index of every boundary sample, per component; mesh kind only.
  const std::vector<std::vector<int>> &mesh_boundary_nodes() const;

private:
  struct MeshIndex;
  struct EllipseArc;

  Domain() = default;
  void finish(std::optional<double> delta, double default_delta, double reach);

  DomainKind kind_ = DomainKind::disc;
  std::vector<double> params_;
  double delta_ = 0.0;
  double area_ = 0.0;
  std::uint64_t id_ = 0;
  std::shared_ptr<const std::vector<BoundaryComponent>> boundary_;
  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const MeshIndex> index_;
  std::shared_ptr<const EllipseArc> arc_;
};

// Arc-length derivative of boundary samples: trigonometric differentiation
// on uniform grids, 4th-order finite differences on non-uniform ones.
std::vector<cplx> tangential_derivative(const std::vector<cplx> &f, const BoundaryComponent &chart);
std::vector<double> tangential_derivative(const std::vector<double> &f, const BoundaryComponent &chart);

// ---------------------------------------------------------------------------
// Quadrature

struct InteriorNode
{
  Point x;
  double w;
};

struct BoundaryNode
{
  Point x;
  double w;
  std::size_t component;
  std::size_t index;
};

// Node of the tubular layer rule in chart coordinates; w includes the
// area element h ds dd.
struct LayerNode
{
  Point x;
  double w;
  std::size_t component;
  std::size_t index;
  double d;
};

struct QuadratureOptions
{
  // Gauss-Legendre order per panel (one of 7, 10, 15, 20, 25, 30).
  int order = 10;
  // Radial or per-axis panels of the interior rule.
  int panels = 12;
  // Angular trapezoid points for polar and elliptic rules.
  int angular = 128;
  // Build the layer rule graded in zeta = d / sqrt(eps).
  std::optional<double> eps;
};

// Interior rule over all of the domain, boundary rule on the boundary
// sample grid and, when eps is given, a layer rule over the tube
// d < 2 delta / 3. integrate() splits integrands with the cutoff: the
// interior rule takes f (1 - chi) and the layer rule takes f chi.
class QuadratureSet
{
public:
  std::uint64_t domain_id = 0;
  double delta = 0.0;
  std::optional<double> eps;
  std::vector<InteriorNode> interior;
  std::vector<BoundaryNode> boundary;
  std::vector<LayerNode> layer;
  // Cutoff weight 1 - chi at each interior node.
  std::vector<double> interior_partition;

  bool has_layer() const { return !layer.empty(); }
};

QuadratureSet build_quadrature(const Domain &domain, const QuadratureOptions &options = {});

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int order, double a, double b, std::vector<double> &x, std::vector<double> &w);

}  // namespace acoustic_layer::geometry

#endif  // ACOUSTIC_LAYER_GEOMETRY_HPP
