// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CLI_COMMANDS_HPP
#define ACOUSTIC_LAYER_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acoustic_layer/cli/config.hpp"

namespace acoustic_layer::cli
{

struct CommandOutput
{
  nlohmann::json results;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  // verify: false when a criterion failed.
  bool ok = true;
};

const std::vector<std::string> &subcommands();

// Runs one subcommand without touching the file system.
CommandOutput execute(const std::string &subcommand, const RunConfig &cfg);

// Runs a subcommand and writes <output>/report.json and
// <output>/<subcommand>.csv. Returns the process exit status.
int run(const std::string &subcommand, const RunConfig &cfg);

std::string render_csv(const CommandOutput &out);
std::string render_report(const std::string &subcommand, const RunConfig &cfg, const CommandOutput &out);
// Writes to a temporary sibling and renames it over path.
void write_atomic(const std::string &path, const std::string &content);

}  // namespace acoustic_layer::cli

#endif  // ACOUSTIC_LAYER_CLI_COMMANDS_HPP
