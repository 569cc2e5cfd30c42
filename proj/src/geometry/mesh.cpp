// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/geometry.hpp"

namespace acoustic_layer::geometry
{

Mesh read_mesh(std::istream &in)
{
  std::string w1, w2, w3;
  long n = -1, m = -1, k = -1;
  if (!(in >> w1 >> n >> w2 >> m >> w3 >> k) || w1 != "nodes" || w2 != "triangles" || w3 != "boundary_edges" ||
      n < 0 || m < 0 || k < 0)
  {
    throw MeshError("mesh header must read 'nodes N triangles M boundary_edges K'");
  }
  Mesh mesh;
  mesh.nodes.resize(static_cast<std::size_t>(n));
  for (auto &p : mesh.nodes)
  {
    if (!(in >> p.x() >> p.y()))
    {
      throw MeshError("truncated node list");
    }
  }
  mesh.triangles.resize(static_cast<std::size_t>(m));
  for (auto &t : mesh.triangles)
  {
    if (!(in >> t[0] >> t[1] >> t[2]))
    {
      throw MeshError("truncated triangle list");
    }
  }
  mesh.boundary_edges.resize(static_cast<std::size_t>(k));
  for (auto &e : mesh.boundary_edges)
  {
    if (!(in >> e[0] >> e[1]))
    {
      throw MeshError("truncated boundary edge list");
    }
  }
  return mesh;
}

Mesh read_mesh_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw MeshError("cannot open mesh file '" + path + "'");
  }
  return read_mesh(in);
}

void write_mesh(std::ostream &out, const Mesh &mesh)
{
  out << "nodes " << mesh.nodes.size() << " triangles " << mesh.triangles.size() << " boundary_edges "
      << mesh.boundary_edges.size() << '\n';
  out << std::setprecision(17);
  for (const auto &p : mesh.nodes)
  {
    out << p.x() << ' ' << p.y() << '\n';
  }
  for (const auto &t : mesh.triangles)
  {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  for (const auto &e : mesh.boundary_edges)
  {
    out << e[0] << ' ' << e[1] << '\n';
  }
}

void validate_mesh(const Mesh &mesh)
{
  const int n = static_cast<int>(mesh.nodes.size());
  if (n < 3 || mesh.triangles.empty())
  {
    throw MeshError("mesh needs at least one triangle");
  }
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i)
  {
    const auto &t = mesh.triangles[i];
    for (int v : t)
    {
      if (v < 0 || v >= n)
      {
        throw MeshError("triangle index out of range");
      }
    }
    const Vec2 e1 = mesh.nodes[t[1]] - mesh.nodes[t[0]], e2 = mesh.nodes[t[2]] - mesh.nodes[t[0]];
    const double area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
    if (area < 1e-14)
    {
      std::ostringstream msg;
      msg << "degenerate triangle " << i << " with area " << area;
      throw MeshError(msg.str());
    }
  }
  if (mesh.boundary_edges.empty())
  {
    throw MeshError("mesh has no boundary edges");
  }
  std::map<int, int> degree;
  for (const auto &e : mesh.boundary_edges)
  {
    if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n || e[0] == e[1])
    {
      throw MeshError("boundary edge index out of range");
    }
    ++degree[e[0]];
    ++degree[e[1]];
  }
  for (const auto &[v, deg] : degree)
  {
    if (deg != 2)
    {
      throw MeshError("boundary edges do not form closed loops (node " + std::to_string(v) + ")");
    }
  }
}

namespace
{

// Orient a triangle counterclockwise.
std::array<int, 3> ccw(const std::vector<Point> &nodes, int a, int b, int c)
{
  const Vec2 e1 = nodes[b] - nodes[a], e2 = nodes[c] - nodes[a];
  if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0)
  {
    return {a, c, b};
  }
  return {a, b, c};
}

}  // namespace

Mesh rectangle_mesh(double lx, double ly, int nx, int ny)
{
  if (nx < 1 || ny < 1)
  {
    throw MeshError("rectangle mesh needs at least one cell per direction");
  }
  Mesh mesh;
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
  {
    for (int i = 0; i <= nx; ++i)
    {
      mesh.nodes.emplace_back(lx * i / nx, ly * j / ny);
    }
  }
  for (int j = 0; j < ny; ++j)
  {
    for (int i = 0; i < nx; ++i)
    {
      // Alternate the diagonal to avoid a directional bias.
      if ((i + j) % 2 == 0)
      {
        mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      }
      else
      {
        mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        mesh.triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  }
  for (int i = 0; i < nx; ++i)
  {
    mesh.boundary_edges.push_back({id(i, 0), id(i + 1, 0)});
    mesh.boundary_edges.push_back({id(i, ny), id(i + 1, ny)});
  }
  for (int j = 0; j < ny; ++j)
  {
    mesh.boundary_edges.push_back({id(0, j), id(0, j + 1)});
    mesh.boundary_edges.push_back({id(nx, j), id(nx, j + 1)});
  }
  return mesh;
}

Mesh disc_mesh(double radius, int rings)
{
  if (rings < 1)
  {
    throw MeshError("disc mesh needs at least one ring");
  }
  Mesh mesh;
  mesh.nodes.emplace_back(0.0, 0.0);
  std::vector<std::vector<int>> ring_ids{{0}};
  std::vector<std::vector<double>> ring_angles{{0.0}};
  for (int i = 1; i <= rings; ++i)
  {
    const int count = 6 * i;
    std::vector<int> ids;
    std::vector<double> angles;
    for (int j = 0; j < count; ++j)
    {
      const double a = 2.0 * kPi * j / count;
      ids.push_back(static_cast<int>(mesh.nodes.size()));
      angles.push_back(a);
      mesh.nodes.emplace_back(radius * i / rings * std::cos(a), radius * i / rings * std::sin(a));
    }
    ring_ids.push_back(ids);
    ring_angles.push_back(angles);
  }
  // Center fan.
  for (int j = 0; j < 6; ++j)
  {
    mesh.triangles.push_back(ccw(mesh.nodes, 0, ring_ids[1][j], ring_ids[1][(j + 1) % 6]));
  }
  // Zip consecutive rings by angle.
  for (int i = 2; i <= rings; ++i)
  {
    const auto &in = ring_ids[i - 1], &out = ring_ids[i];
    const auto &ain = ring_angles[i - 1], &aout = ring_angles[i];
    const std::size_t m = in.size(), n = out.size();
    std::size_t a = 0, b = 0;
    while (a < m || b < n)
    {
      const double next_in = a + 1 < m ? ain[a + 1] : 2.0 * kPi;
      const double next_out = b + 1 < n ? aout[b + 1] : 2.0 * kPi;
      if (b < n && (a == m || next_out <= next_in))
      {
        mesh.triangles.push_back(ccw(mesh.nodes, in[a % m], out[b % n], out[(b + 1) % n]));
        ++b;
      }
      else
      {
        mesh.triangles.push_back(ccw(mesh.nodes, in[a % m], out[b % n], in[(a + 1) % m]));
        ++a;
      }
    }
  }
  const auto &outer = ring_ids.back();
  for (std::size_t j = 0; j < outer.size(); ++j)
  {
    mesh.boundary_edges.push_back({outer[j], outer[(j + 1) % outer.size()]});
  }
  return mesh;
}

Mesh ellipse_mesh(double a, double b, int rings)
{
  Mesh mesh = disc_mesh(1.0, rings);
  for (auto &p : mesh.nodes)
  {
    p = Point(a * p.x(), b * p.y());
  }
  return mesh;
}

}  // namespace acoustic_layer::geometry
