// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "acoustic_layer/cli/commands.hpp"
#include "acoustic_layer/cli/config.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/layer.hpp"

namespace al = acoustic_layer;
using nlohmann::json;

namespace
{

std::string error_line(const json &j)
{
  try
  {
    al::cli::parse_config(j).validate();
  }
  catch (const al::Error &e)
  {
    return e.category() + ": " + e.what();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsAreValid)
{
  EXPECT_NO_THROW(al::cli::RunConfig{}.validate());
  EXPECT_NO_THROW(al::cli::load_config(ACOUSTIC_LAYER_CONFIG_DIR "/disc.json").validate());
}

TEST(Config, ZeroViscosityMessage)
{
  EXPECT_EQ(error_line({{"operator", {{"nu", 0.0}}}}), "config_error: nu must be positive");
}

TEST(Config, RejectsBadInput)
{
  EXPECT_EQ(error_line({{"modez", 3}}), "config_error: unknown key config.modez");
  EXPECT_EQ(error_line({{"order", 3}}), "config_error: order must be 0, 1 or 2");
  EXPECT_EQ(error_line({{"eps", {1e-3, 1e-2}}}), "config_error: eps grid must be strictly decreasing");
  EXPECT_EQ(error_line({{"eps", {1.5}}}), "config_error: eps values must lie in (0, 1)");
  EXPECT_EQ(error_line({{"sign", 0}}), "config_error: sign must be +1 or -1");
  EXPECT_THROW(al::cli::load_config("/nonexistent/config.json"), al::ConfigurationError);
}

TEST(Config, EchoRoundTrips)
{
  al::cli::RunConfig cfg;
  cfg.op.nu = 0.25;
  cfg.eps = {1e-2, 1e-4};
  cfg.p = {2.0, std::numeric_limits<double>::infinity()};
  const auto back = al::cli::parse_config(cfg.to_json());
  EXPECT_EQ(back.op.nu, 0.25);
  EXPECT_EQ(back.eps, cfg.eps);
  EXPECT_TRUE(std::isinf(back.p[1]));
  EXPECT_EQ(back.to_json().dump(), cfg.to_json().dump());
}

TEST(Config, NumbersKeepTwelveDigits)
{
  EXPECT_EQ(al::cli::format_number(1.8411837813406593), "1.84118378134");
  EXPECT_EQ(al::cli::format_number(0.0), "0");
  EXPECT_EQ(al::cli::format_number(-2.5e-7), "-2.5e-07");
}

TEST(Commands, SpectrumIsDeterministic)
{
  al::cli::RunConfig cfg;
  cfg.modes = 6;
  const auto a = al::cli::execute("spectrum", cfg);
  const auto b = al::cli::execute("spectrum", cfg);
  EXPECT_EQ(al::cli::render_csv(a), al::cli::render_csv(b));
  EXPECT_EQ(al::cli::render_report("spectrum", cfg, a), al::cli::render_report("spectrum", cfg, b));
  EXPECT_EQ(al::cli::render_csv(a).substr(0, 57), "k,lambda0,multiplicity_group,boundary_grad_integral,class");
}

TEST(Commands, DampingMatchesLibrary)
{
  al::cli::RunConfig cfg;
  cfg.modes = 4;
  const auto out = al::cli::execute("damping", cfg);
  const auto modes = al::spectrum::solve_closed_form(cfg.make_domain(), 4);
  const auto d = al::layer::damping_rate(modes[2], cfg.op, 1);
  const auto &row = out.results["rates"][2];
  EXPECT_EQ(row["i_lambda1"]["re"], al::cli::number(d.i_lambda1.real()));
  EXPECT_EQ(row["i_lambda1"]["im"], al::cli::number(d.i_lambda1.imag()));
}

TEST(Commands, ResidualWithOneEpsOmitsSlope)
{
  al::cli::RunConfig cfg;
  cfg.domain.delta = 0.9;
  cfg.eps = {1e-3};
  cfg.order = 0;
  const auto out = al::cli::execute("residual", cfg);
  EXPECT_FALSE(out.results.contains("slopes"));
  EXPECT_EQ(out.csv_rows.size(), cfg.p.size());
}

TEST(Commands, UnknownSubcommand)
{
  EXPECT_THROW(al::cli::execute("frobnicate", al::cli::RunConfig{}), al::ConfigurationError);
}
