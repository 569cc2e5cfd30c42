// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "acoustic_layer/cli/verification.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/parallel.hpp"
#include "acoustic_layer/damping.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::cli
{

using nlohmann::json;

namespace
{

std::string fmt(double v)
{
  return format_number(v);
}

std::string fmt(std::size_t v)
{
  return std::to_string(v);
}

std::string fmt(int v)
{
  return std::to_string(v);
}

json complex_json(cplx z)
{
  return json{{"re", number(z.real())}, {"im", number(z.imag())}};
}

std::vector<spectrum::NeumannMode> compute_modes(const RunConfig &cfg, const geometry::Domain &domain)
{
  return spectrum::solve(domain, cfg.modes);
}

std::vector<layer::DampingRate> compute_rates(const RunConfig &cfg, const std::vector<spectrum::NeumannMode> &modes,
                                              int sign)
{
  std::vector<layer::DampingRate> rates(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) { rates[i] = layer::damping_rate(modes[i], cfg.op, sign, 0.0); });
  return rates;
}

CommandOutput cmd_spectrum(const RunConfig &cfg)
{
  const auto domain = cfg.make_domain();
  auto modes = compute_modes(cfg, domain);
  const auto groups = spectrum::group_eigenvalues(modes, spectrum::default_cluster_tolerance(modes));
  std::vector<std::size_t> group_of(modes.size());
  for (std::size_t g = 0; g < groups.size(); ++g)
  {
    for (std::size_t m : groups[g].members)
    {
      group_of[m] = g;
    }
  }
  std::vector<double> bint(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) { bint[i] = spectrum::boundary_gradient_integral(modes[i], modes[i]); });
  const auto cls = damping::classify(compute_rates(cfg, modes, 1), cfg.classification_tol, domain.boundary_length());
  CommandOutput out;
  out.csv_header = {"k", "lambda0", "multiplicity_group", "boundary_grad_integral", "class"};
  json jm = json::array(), jg = json::array();
  for (std::size_t i = 0; i < modes.size(); ++i)
  {
    const std::string src = modes[i].smooth() ? "closed_form" : "fem";
    const std::string cl = cls.damped(static_cast<std::size_t>(modes[i].index)) ? "I" : "J";
    out.csv_rows.push_back({fmt(static_cast<std::size_t>(modes[i].index)), fmt(modes[i].lambda0), fmt(group_of[i]),
                            fmt(bint[i]), cl});
    jm.push_back({{"k", modes[i].index},
                  {"lambda0", number(modes[i].lambda0)},
                  {"multiplicity_group", group_of[i]},
                  {"boundary_grad_integral", number(bint[i])},
                  {"class", cl},
                  {"source", src}});
  }
  for (const auto &g : groups)
  {
    json members = json::array();
    for (std::size_t m : g.members)
    {
      members.push_back(modes[m].index);
    }
    jg.push_back({{"lambda", number(g.lambda0)}, {"members", members}});
  }
  out.results = {{"domain", geometry::to_string(domain.kind())}, {"modes", jm}, {"groups", jg}};
  return out;
}

CommandOutput cmd_damping(const RunConfig &cfg)
{
  const auto domain = cfg.make_domain();
  const auto modes = compute_modes(cfg, domain);
  const auto plus = compute_rates(cfg, modes, 1);
  const auto minus = compute_rates(cfg, modes, -1);
  const auto cls = damping::classify(plus, cfg.classification_tol, domain.boundary_length());
  CommandOutput out;
  out.csv_header = {"k",         "sign",           "lambda",         "a",
                    "re_Lambda", "im_Lambda",      "boundary_integral", "re_i_lambda1",
                    "im_i_lambda1", "re_quadrature", "im_quadrature",  "relative_gap",
                    "class"};
  json table = json::array();
  for (const auto *rates : {&plus, &minus})
  {
    for (const auto &r : *rates)
    {
      const std::string c = cls.damped(r.k) ? "I" : "J";
      out.csv_rows.push_back({fmt(r.k), fmt(r.sign), fmt(r.lambda0), fmt(r.a), fmt(r.Lambda.real()),
                              fmt(r.Lambda.imag()), fmt(r.boundary_integral), fmt(r.i_lambda1.real()),
                              fmt(r.i_lambda1.imag()), fmt(r.i_lambda1_quadrature.real()),
                              fmt(r.i_lambda1_quadrature.imag()), fmt(r.relative_gap()), c});
      table.push_back({{"k", r.k},
                       {"sign", r.sign},
                       {"lambda", number(r.lambda0)},
                       {"a", number(r.a)},
                       {"Lambda", complex_json(r.Lambda)},
                       {"boundary_integral", number(r.boundary_integral)},
                       {"i_lambda1", complex_json(r.i_lambda1)},
                       {"i_lambda1_quadrature", complex_json(r.i_lambda1_quadrature)},
                       {"i_lambda1_eigen", complex_json(r.i_lambda1_eigen)},
                       {"relative_gap", number(r.relative_gap())},
                       {"class", c}});
    }
  }
  out.results = {{"rates", table},
                 {"I", cls.I_set},
                 {"J", cls.J_set},
                 {"inconsistent_J", cls.inconsistent},
                 {"tolerance", number(cls.tol)}};
  return out;
}

layer::LayerExpansion expansion_for(const RunConfig &cfg, const geometry::Domain &domain)
{
  const auto modes = spectrum::solve_closed_form(domain, cfg.modes);
  layer::ExpansionOptions opts;
  opts.degeneracy_tol = cfg.degeneracy_tol;
  opts.compat_tol = cfg.compat_tol;
  return layer::build_expansion(modes, cfg.mode_index, cfg.sign, cfg.order, cfg.op, opts);
}

json expansion_log(const layer::LayerExpansion &e)
{
  json group = json::array();
  for (const auto &m : e.group)
  {
    group.push_back(m.index);
  }
  json coeffs = json::array();
  for (std::size_t i = 0; i < e.lambda_coeffs.size(); ++i)
  {
    coeffs.push_back({{"order", i}, {"i_lambda", complex_json(e.lambda_coeffs[i])}});
  }
  double compat1 = 0.0;
  for (const auto &c : e.compat1)
  {
    compat1 = std::max(compat1, std::abs(c));
  }
  json q1 = json::array();
  for (Eigen::Index i = 0; i < e.q1.eigenvalues.size(); ++i)
  {
    q1.push_back(number(e.q1.eigenvalues(i)));
  }
  json log{{"k", e.k},
           {"sign", e.tau},
           {"order", e.order},
           {"group", group},
           {"q1_eigenvalues", q1},
           {"q1_symmetry_defect", number(e.q1.symmetry_defect)},
           {"lambda_coefficients", coeffs},
           {"damping",
            {{"i_lambda1", complex_json(e.damping.i_lambda1)},
             {"i_lambda1_eigen", complex_json(e.damping.i_lambda1_eigen)},
             {"relative_gap", number(e.damping.relative_gap())}}}};
  if (e.order >= 1)
  {
    log["max_compat1"] = number(compat1);
  }
  if (e.lambda2)
  {
    json a = json::array(), l2 = json::array();
    for (const auto &v : e.lambda2->a_kl1)
    {
      a.push_back(complex_json(v));
    }
    for (const auto &v : e.lambda2->i_lambda2)
    {
      l2.push_back(complex_json(v));
    }
    log["case"] = e.lambda2->case_id;
    log["a_kl1"] = a;
    log["i_lambda2"] = l2;
    log["q2_symmetry_defect"] = number(e.lambda2->q2_symmetry_defect);
  }
  json undetermined = json::array();
  for (const auto &t : e.terms)
  {
    undetermined.push_back(t.p0_undetermined);
  }
  log["p0_undetermined"] = undetermined;
  return log;
}

CommandOutput cmd_layer(const RunConfig &cfg)
{
  const auto domain = cfg.make_domain();
  const auto e = expansion_for(cfg, domain);
  CommandOutput out;
  out.csv_header = {"k", "sign", "order", "re_i_lambda", "im_i_lambda"};
  for (std::size_t i = 0; i < e.lambda_coeffs.size(); ++i)
  {
    out.csv_rows.push_back(
      {fmt(e.k), fmt(e.tau), fmt(i), fmt(e.lambda_coeffs[i].real()), fmt(e.lambda_coeffs[i].imag())});
  }
  out.results = expansion_log(e);
  return out;
}

CommandOutput cmd_residual(const RunConfig &cfg)
{
  const auto domain = cfg.make_domain();
  const auto e = expansion_for(cfg, domain);
  const auto sweep = layer::residual_sweep(e, cfg.eps, cfg.p);
  CommandOutput out;
  out.csv_header = {"k", "sign", "N", "eps", "p", "residual_norm", "diff_norm"};
  json rows = json::array();
  for (const auto &v : sweep)
  {
    out.csv_rows.push_back(
      {fmt(e.k), fmt(e.tau), fmt(e.order), fmt(v.eps), fmt(v.p), fmt(v.residual), fmt(v.diff)});
    rows.push_back({{"eps", number(v.eps)},
                    {"p", number(v.p)},
                    {"residual_norm", number(v.residual)},
                    {"diff_norm", number(v.diff)}});
  }
  json slopes = json::array();
  if (cfg.eps.size() >= 2)
  {
    for (double p : cfg.p)
    {
      std::vector<double> x, r, d;
      for (const auto &v : sweep)
      {
        if (v.p == p)
        {
          x.push_back(std::sqrt(v.eps));
          r.push_back(v.residual);
          d.push_back(v.diff);
        }
      }
      const double expected = cfg.order + (std::isinf(p) ? 0.0 : 1.0 / p);
      slopes.push_back({{"p", number(p)},
                        {"residual_slope", number(layer::loglog_slope(x, r))},
                        {"diff_slope", number(layer::loglog_slope(x, d))},
                        {"expected_residual_slope", number(expected)}});
    }
  }
  out.results = {{"expansion", expansion_log(e)}, {"sweep", rows}};
  if (!slopes.empty())
  {
    out.results["slopes"] = slopes;
  }
  return out;
}

CommandOutput cmd_simulate(const RunConfig &cfg)
{
  const auto domain = cfg.make_domain();
  const auto modes = compute_modes(cfg, domain);
  const auto rates = compute_rates(cfg, modes, cfg.sign);
  const auto cls = damping::classify(rates, cfg.classification_tol, domain.boundary_length());
  const auto forcing = cfg.simulate.forcing == "step" ? damping::ForcingSpec::step(cfg.simulate.amplitude)
                                                      : damping::ForcingSpec::zero_forcing();
  const std::size_t ne = cfg.eps.size();
  std::vector<damping::AmplitudeTrajectory> tr(modes.size() * ne);
  parallel_for(tr.size(), [&](std::size_t idx) {
    const auto &r = rates[idx / ne];
    const double eps = cfg.eps[idx % ne];
    const cplx il = damping::truncated_eigenvalue(cplx(0.0, cfg.sign * r.lambda0), r.i_lambda1_eigen, 0.0, eps);
    tr[idx] = damping::solve_amplitude(il, eps, cfg.simulate.b0, forcing, cfg.simulate.T, cfg.simulate.dt);
  });
  CommandOutput out;
  out.csv_header = {"k", "eps", "t", "re_b", "im_b", "abs_b"};
  json jm = json::array();
  const auto stride = static_cast<std::size_t>(cfg.simulate.csv_stride);
  for (std::size_t m = 0; m < modes.size(); ++m)
  {
    json norms = json::array();
    std::vector<damping::AmplitudeTrajectory> mine;
    for (std::size_t e = 0; e < ne; ++e)
    {
      const auto &t = tr[m * ne + e];
      for (std::size_t j = 0; j < t.t.size(); ++j)
      {
        if (j % stride == 0 || j + 1 == t.t.size())
        {
          out.csv_rows.push_back({fmt(rates[m].k), fmt(t.eps), fmt(t.t[j]), fmt(t.b[j].real()), fmt(t.b[j].imag()),
                                  fmt(std::abs(t.b[j]))});
        }
      }
      norms.push_back({{"eps", number(t.eps)},
                       {"l2_norm", number(t.l2_norm)},
                       {"initial_part", number(t.initial_part)}});
      mine.push_back(t);
    }
    json entry{{"k", rates[m].k},
               {"mu", number(rates[m].i_lambda1_eigen.real())},
               {"class", cls.damped(rates[m].k) ? "I" : "J"},
               {"norms", norms}};
    try
    {
      entry["decay_exponent"] = number(damping::decay_fit(cfg.eps, mine));
    }
    catch (const ConfigurationError &)
    {
      // Fit needs zero forcing and a grid spanning two decades.
    }
    jm.push_back(entry);
  }
  out.results = {{"modes", jm}, {"I", cls.I_set}, {"J", cls.J_set}};
  return out;
}

CommandOutput cmd_duality(const RunConfig &cfg)
{
  const auto domain = cfg.make_domain();
  const auto q = geometry::build_quadrature(domain);
  CommandOutput out;
  out.csv_header = {"eps", "defect"};
  json rows = json::array();
  for (double eps : cfg.eps)
  {
    const auto u = acoustic::slip_swirl(domain, 0.0, cfg.op, eps);
    const auto m = acoustic::slip_swirl(domain, 0.3, cfg.op, eps);
    const double d = acoustic::duality_check(domain, u, m, cfg.op, eps, q);
    out.csv_rows.push_back({fmt(eps), fmt(d)});
    rows.push_back({{"eps", number(eps)}, {"defect", number(d)}});
  }
  out.results = {{"defects", rows}};
  return out;
}

CommandOutput cmd_verify(const RunConfig &cfg)
{
  const auto results = run_criteria(cfg.seed);
  CommandOutput out;
  out.csv_header = {"id", "name", "passed", "known_failure"};
  for (const auto &r : results)
  {
    out.csv_rows.push_back({fmt(r.id), r.name, r.passed ? "true" : "false", r.known_failure ? "true" : "false"});
    out.ok = out.ok && r.passed;
  }
  out.results = criteria_report(results);
  return out;
}

}  // namespace

const std::vector<std::string> &subcommands()
{
  static const std::vector<std::string> names{"spectrum", "damping", "layer", "residual",
                                              "simulate", "duality", "verify"};
  return names;
}

CommandOutput execute(const std::string &subcommand, const RunConfig &cfg)
{
  cfg.validate();
  if (subcommand == "spectrum")
  {
    return cmd_spectrum(cfg);
  }
  if (subcommand == "damping")
  {
    return cmd_damping(cfg);
  }
  if (subcommand == "layer")
  {
    return cmd_layer(cfg);
  }
  if (subcommand == "residual")
  {
    return cmd_residual(cfg);
  }
  if (subcommand == "simulate")
  {
    return cmd_simulate(cfg);
  }
  if (subcommand == "duality")
  {
    return cmd_duality(cfg);
  }
  if (subcommand == "verify")
  {
    return cmd_verify(cfg);
  }
  throw ConfigurationError("unknown subcommand " + subcommand);
}

std::string render_csv(const CommandOutput &out)
{
  std::string s;
  auto line = [&s](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
      if (i)
      {
        s += ',';
      }
      s += cells[i];
    }
    s += '\n';
  };
  line(out.csv_header);
  for (const auto &r : out.csv_rows)
  {
    line(r);
  }
  return s;
}

std::string render_report(const std::string &subcommand, const RunConfig &cfg, const CommandOutput &out)
{
  const json report{{"software", {{"name", kSoftwareName}, {"version", kSoftwareVersion}}},
                    {"command", subcommand},
                    {"config", cfg.to_json()},
                    {"ok", out.ok},
                    {"results", out.results}};
  return report.dump(2) + "\n";
}

void write_atomic(const std::string &path, const std::string &content)
{
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
    {
      throw ConfigurationError("cannot write " + tmp.string());
    }
    f << content;
    f.flush();
    if (!f)
    {
      throw ConfigurationError("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

int run(const std::string &subcommand, const RunConfig &cfg)
{
  const CommandOutput out = execute(subcommand, cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.output, ec);
  if (ec)
  {
    throw ConfigurationError("cannot create output directory " + cfg.output);
  }
  const std::string csv = render_csv(out);
  const std::string report = render_report(subcommand, cfg, out);
  write_atomic(cfg.output + "/" + subcommand + ".csv", csv);
  write_atomic(cfg.output + "/report.json", report);
  return out.ok ? 0 : 1;
}

}  // namespace acoustic_layer::cli
