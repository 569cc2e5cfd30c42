// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "acoustic_layer/core/errors.hpp"

namespace acoustic_layer::cli
{

using nlohmann::json;

namespace
{

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where)
{
  if (!j.is_object())
  {
    throw ConfigurationError(where + " must be an object");
  }
  for (const auto &[key, value] : j.items())
  {
    if (!allowed.count(key))
    {
      throw ConfigurationError("unknown key " + where + "." + key);
    }
  }
}

double read_number(const json &v, const std::string &name)
{
  if (v.is_number())
  {
    return v.get<double>();
  }
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
  {
    return std::numeric_limits<double>::infinity();
  }
  throw ConfigurationError(name + " must be a number");
}

template <typename T>
void read(const json &j, const char *key, T &out)
{
  if (!j.contains(key))
  {
    return;
  }
  try
  {
    if constexpr (std::is_same_v<T, double>)
    {
      out = read_number(j.at(key), key);
    }
    else
    {
      out = j.at(key).get<T>();
    }
  }
  catch (const json::exception &)
  {
    throw ConfigurationError(std::string(key) + " has the wrong type");
  }
}

std::vector<double> read_list(const json &v, const std::string &name)
{
  std::vector<double> out;
  if (v.is_array())
  {
    for (const auto &x : v)
    {
      out.push_back(read_number(x, name));
    }
  }
  else
  {
    out.push_back(read_number(v, name));
  }
  return out;
}

}  // namespace

std::string format_number(double v)
{
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  if (std::isnan(v))
  {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json number(double v)
{
  if (!std::isfinite(v))
  {
    return format_number(v);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

void RunConfig::validate() const
{
  op.validate();
  static const std::set<std::string> kinds{"disc", "annulus", "ellipse", "rectangle", "mesh"};
  if (!kinds.count(domain.kind))
  {
    throw ConfigurationError("unknown domain kind " + domain.kind);
  }
  if (domain.kind == "mesh" && domain.mesh.empty())
  {
    throw ConfigurationError("mesh domains need a mesh path");
  }
  if (domain.boundary_samples < 16)
  {
    throw ConfigurationError("boundary_samples must be at least 16");
  }
  if (modes < 1)
  {
    throw ConfigurationError("modes must be positive");
  }
  if (order < 0 || order > 2)
  {
    throw ConfigurationError("order must be 0, 1 or 2");
  }
  if (eps.empty())
  {
    throw ConfigurationError("eps grid must not be empty");
  }
  for (std::size_t i = 0; i < eps.size(); ++i)
  {
    if (!(eps[i] > 0.0 && eps[i] < 1.0))
    {
      throw ConfigurationError("eps values must lie in (0, 1)");
    }
    if (i > 0 && !(eps[i] < eps[i - 1]))
    {
      throw ConfigurationError("eps grid must be strictly decreasing");
    }
  }
  if (p.empty())
  {
    throw ConfigurationError("p list must not be empty");
  }
  for (double v : p)
  {
    if (!(v >= 1.0))
    {
      throw ConfigurationError("p values must be at least 1");
    }
  }
  if (mode_index < 1 || mode_index > modes)
  {
    throw ConfigurationError("mode_index must lie between 1 and modes");
  }
  if (sign != 1 && sign != -1)
  {
    throw ConfigurationError("sign must be +1 or -1");
  }
  if (!(classification_tol > 0.0) || !(degeneracy_tol > 0.0) || !(compat_tol > 0.0))
  {
    throw ConfigurationError("tolerances must be positive");
  }
  if (!(simulate.T > 0.0))
  {
    throw ConfigurationError("simulate.T must be positive");
  }
  if (simulate.dt < 0.0)
  {
    throw ConfigurationError("simulate.dt must not be negative");
  }
  if (simulate.forcing != "zero" && simulate.forcing != "step")
  {
    throw ConfigurationError("simulate.forcing must be zero or step");
  }
  if (simulate.csv_stride < 1)
  {
    throw ConfigurationError("simulate.csv_stride must be positive");
  }
  if (output.empty())
  {
    throw ConfigurationError("output directory must not be empty");
  }
}

json RunConfig::to_json() const
{
  json d{{"kind", domain.kind}, {"boundary_samples", domain.boundary_samples}};
  if (domain.kind == "disc")
  {
    d["radius"] = number(domain.radius);
  }
  else if (domain.kind == "annulus")
  {
    d["inner"] = number(domain.inner);
    d["outer"] = number(domain.outer);
  }
  else if (domain.kind == "ellipse")
  {
    d["a"] = number(domain.a);
    d["b"] = number(domain.b);
  }
  else if (domain.kind == "rectangle")
  {
    d["lx"] = number(domain.lx);
    d["ly"] = number(domain.ly);
  }
  else
  {
    d["mesh"] = domain.mesh;
  }
  if (domain.delta)
  {
    d["delta"] = number(*domain.delta);
  }
  json e = json::array(), pp = json::array();
  for (double v : eps)
  {
    e.push_back(number(v));
  }
  for (double v : p)
  {
    pp.push_back(number(v));
  }
  return json{{"domain", d},
              {"operator",
               {{"nu", number(op.nu)}, {"xi", number(op.xi)}, {"gamma", number(op.gamma)}, {"chi", number(op.chi)}}},
              {"modes", modes},
              {"order", order},
              {"eps", e},
              {"p", pp},
              {"mode_index", mode_index},
              {"sign", sign},
              {"tolerances",
               {{"classification", number(classification_tol)},
                {"degeneracy", number(degeneracy_tol)},
                {"compat", number(compat_tol)}}},
              {"simulate",
               {{"T", number(simulate.T)},
                {"dt", number(simulate.dt)},
                {"b0", number(simulate.b0)},
                {"forcing", simulate.forcing},
                {"amplitude", number(simulate.amplitude)},
                {"csv_stride", simulate.csv_stride}}},
              {"seed", seed}};
}

geometry::Domain RunConfig::make_domain() const
{
  const auto &d = domain;
  if (d.kind == "disc")
  {
    return geometry::Domain::disc(d.radius, d.delta, d.boundary_samples);
  }
  if (d.kind == "annulus")
  {
    return geometry::Domain::annulus(d.inner, d.outer, d.delta, d.boundary_samples);
  }
  if (d.kind == "ellipse")
  {
    return geometry::Domain::ellipse(d.a, d.b, d.delta, d.boundary_samples);
  }
  if (d.kind == "rectangle")
  {
    return geometry::Domain::rectangle(d.lx, d.ly, d.delta);
  }
  return geometry::Domain::from_mesh(geometry::read_mesh_file(d.mesh), d.delta);
}

RunConfig parse_config(const json &j)
{
  RunConfig c;
  check_keys(j, {"domain", "operator", "modes", "order", "eps", "p", "mode_index", "sign", "tolerances", "simulate",
                 "output", "seed"},
             "config");
  if (j.contains("domain"))
  {
    const auto &d = j.at("domain");
    check_keys(d, {"kind", "radius", "inner", "outer", "a", "b", "lx", "ly", "delta", "boundary_samples", "mesh"},
               "domain");
    read(d, "kind", c.domain.kind);
    read(d, "radius", c.domain.radius);
    read(d, "inner", c.domain.inner);
    read(d, "outer", c.domain.outer);
    read(d, "a", c.domain.a);
    read(d, "b", c.domain.b);
    read(d, "lx", c.domain.lx);
    read(d, "ly", c.domain.ly);
    if (d.contains("delta"))
    {
      c.domain.delta = read_number(d.at("delta"), "delta");
    }
    read(d, "boundary_samples", c.domain.boundary_samples);
    read(d, "mesh", c.domain.mesh);
  }
  if (j.contains("operator"))
  {
    const auto &o = j.at("operator");
    check_keys(o, {"nu", "xi", "gamma", "chi"}, "operator");
    read(o, "nu", c.op.nu);
    read(o, "xi", c.op.xi);
    read(o, "gamma", c.op.gamma);
    read(o, "chi", c.op.chi);
  }
  read(j, "modes", c.modes);
  read(j, "order", c.order);
  if (j.contains("eps"))
  {
    c.eps = read_list(j.at("eps"), "eps");
  }
  if (j.contains("p"))
  {
    c.p = read_list(j.at("p"), "p");
  }
  read(j, "mode_index", c.mode_index);
  read(j, "sign", c.sign);
  if (j.contains("tolerances"))
  {
    const auto &t = j.at("tolerances");
    check_keys(t, {"classification", "degeneracy", "compat"}, "tolerances");
    read(t, "classification", c.classification_tol);
    read(t, "degeneracy", c.degeneracy_tol);
    read(t, "compat", c.compat_tol);
  }
  if (j.contains("simulate"))
  {
    const auto &s = j.at("simulate");
    check_keys(s, {"T", "dt", "b0", "forcing", "amplitude", "csv_stride"}, "simulate");
    read(s, "T", c.simulate.T);
    read(s, "dt", c.simulate.dt);
    read(s, "b0", c.simulate.b0);
    read(s, "forcing", c.simulate.forcing);
    read(s, "amplitude", c.simulate.amplitude);
    read(s, "csv_stride", c.simulate.csv_stride);
  }
  read(j, "output", c.output);
  read(j, "seed", c.seed);
  return c;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigurationError("cannot read config " + path);
  }
  json j;
  try
  {
    j = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigurationError("malformed config " + path);
  }
  return parse_config(j);
}

}  // namespace acoustic_layer::cli
