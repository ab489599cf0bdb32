// Copyright 2026 The qavg Authors
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


#ifndef QAVG_CLI_COMMANDS_HPP
#define QAVG_CLI_COMMANDS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "qavg_cli/run_config.hpp"

/// File-in, file-out drivers behind the `qavg` subcommands. Each writes into
/// `config.out` and reports what it wrote.
namespace qavg::cli {

struct CommandResult {
    std::vector<std::filesystem::path> written;
    /// One or more human-readable lines for stdout.
    std::string summary;
};

using Paths = std::vector<std::filesystem::path>;

CommandResult cmd_fci(const RunConfig &c);
/// Monte Carlo histograms for every (sector, orbital, shift); log1a also
/// writes the survival table.
CommandResult cmd_sample(const RunConfig &c);
/// Noiseless outcome distributions in the histogram format.
CommandResult cmd_exact_dist(const RunConfig &c);
/// One fit per sector present in the inputs.
CommandResult cmd_optimize(const RunConfig &c, const Paths &histograms);
/// Density of states from one electron and one hole fit; no inputs uses
/// the exact parameters of the configured dimer.
CommandResult cmd_dos(const RunConfig &c, const Paths &fits);
/// Per-shift densities of states read straight off the histograms.
CommandResult cmd_direct(const RunConfig &c, const Paths &histograms);
CommandResult cmd_landscape(const RunConfig &c, const Paths &histograms);
/// Noisy log1a runs reduced to the checkpoint table only.
CommandResult cmd_survival(const RunConfig &c);

/// File name used for one histogram.
std::string histogram_file_name(const std::string &prefix, const vernier::Histogram &h);

}  // namespace qavg::cli

#endif
