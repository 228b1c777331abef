// Copyright 2026 The mzqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MZQBC_CLI_COMMANDS_H
#define MZQBC_CLI_COMMANDS_H

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.h"

namespace mzqbc::cli {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitGuard = 3;

int cmd_run(const Config &config, std::ostream &out);
int cmd_sweep(const Config &config, std::ostream &out);
int cmd_strategies(const Config &config, std::ostream &out);
int cmd_nogo(const Config &config, std::ostream &out);
int cmd_counterfactual(const Config &config, std::ostream &out);
int cmd_verify(const Config &config, std::ostream &out, std::ostream &err);

std::vector<std::string> command_names();

/// Parses flags, loads the config, runs the command and maps errors to exit
/// codes. Messages go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace mzqbc::cli

#endif
