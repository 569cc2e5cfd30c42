// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acoustic_layer/cli/commands.hpp"
#include "acoustic_layer/cli/config.hpp"
#include "acoustic_layer/core/errors.hpp"

namespace
{

struct Overrides
{
  std::string config;
  std::optional<std::string> out;
  std::optional<double> nu, xi, gamma, chi;
  std::optional<std::size_t> modes, k;
  std::optional<int> order, sign;
  std::optional<std::uint64_t> seed;
  std::vector<double> eps, p;
};

void add_options(CLI::App &app, Overrides &o)
{
  app.add_option("-c,--config", o.config, "JSON run configuration");
  app.add_option("-o,--out", o.out, "Output directory");
  app.add_option("--nu", o.nu, "Viscosity");
  app.add_option("--xi", o.xi, "Second viscosity");
  app.add_option("--gamma", o.gamma, "Adiabatic index");
  app.add_option("--chi", o.chi, "Slip coefficient");
  app.add_option("--modes", o.modes, "Number of Neumann modes");
  app.add_option("--order", o.order, "Truncation order N");
  app.add_option("--eps", o.eps, "Epsilon grid")->delimiter(',');
  app.add_option("--p", o.p, "Lebesgue exponents")->delimiter(',');
  app.add_option("--k", o.k, "1-based mode index");
  app.add_option("--sign", o.sign, "Branch sign, +1 or -1");
  app.add_option("--seed", o.seed, "Random seed");
}

acoustic_layer::cli::RunConfig resolve(const Overrides &o)
{
  using acoustic_layer::cli::RunConfig;
  RunConfig cfg = o.config.empty() ? RunConfig{} : acoustic_layer::cli::load_config(o.config);
  if (o.out) cfg.output = *o.out;
  if (o.nu) cfg.op.nu = *o.nu;
  if (o.xi) cfg.op.xi = *o.xi;
  if (o.gamma) cfg.op.gamma = *o.gamma;
  if (o.chi) cfg.op.chi = *o.chi;
  if (o.modes) cfg.modes = *o.modes;
  if (o.order) cfg.order = *o.order;
  if (o.k) cfg.mode_index = *o.k;
  if (o.sign) cfg.sign = *o.sign;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.eps.empty()) cfg.eps = o.eps;
  if (!o.p.empty()) cfg.p = o.p;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Viscous acoustic boundary layers on 2D domains"};
  app.set_version_flag("--version", std::string(acoustic_layer::cli::kSoftwareVersion));
  app.require_subcommand(1, 1);
  Overrides o;
  for (const auto &name : acoustic_layer::cli::subcommands())
  {
    add_options(*app.add_subcommand(name), o);
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForVersion &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    std::fprintf(stderr, "config_error: %s\n", e.what());
    return 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try
  {
    return acoustic_layer::cli::run(sub, resolve(o));
  }
  catch (const acoustic_layer::ConfigurationError &e)
  {
    std::fprintf(stderr, "%s: %s\n", e.category().c_str(), e.what());
    return 2;
  }
  catch (const acoustic_layer::Error &e)
  {
    std::fprintf(stderr, "%s: %s\n", e.category().c_str(), e.what());
    return 1;
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "internal_error: %s\n", e.what());
    return 1;
  }
}
