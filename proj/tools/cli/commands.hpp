/*
 * Copyright 2026 The irqsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Subcommands of the irqsim tool. Each returns the process exit status:
//   0 success, 1 configuration error, 2 load/output file error,
//   3 internal invariant violation.
// Diagnostics go to `err` as a single line.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "config.hpp"
#include "irqsim/engine.hpp"
#include "irqsim/time.hpp"

namespace irqsim::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitLoad = 2, kExitInternal = 3 };

/// Flags that override configuration-file fields.
struct Overrides {
    std::optional<std::filesystem::path> out;
    std::optional<OutputFormat> format;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> trace;
    std::optional<std::filesystem::path> pcap;
    unsigned jobs = 1;
};

int cmd_run(const std::filesystem::path& config, const Overrides& flags, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& config, const Overrides& flags, std::ostream& out, std::ostream& err);
int cmd_gen(const std::filesystem::path& config, const Overrides& flags, std::ostream& out, std::ostream& err);
int cmd_inspect_pcap(const std::filesystem::path& capture, const std::vector<Nanos>& edges,
                     const Overrides& flags, std::ostream& out, std::ostream& err);

/// Decade edges from 1 ns to 10 s used when inspect-pcap gets no --edges.
std::vector<Nanos> default_histogram_edges();

/// Applies --trace/--pcap/--seed/--out/--format to a parsed configuration.
void apply_overrides(ExperimentConfig& cfg, const Overrides& flags);

/// Trace provider for a configuration: synthetic loads regenerate per grid
/// point, file loads are read once up front.
TraceProvider make_provider(const ExperimentConfig& cfg);

/// The configured axes plus the effective seed list.
SweepGrid build_grid(const ExperimentConfig& cfg);

/// Runs the configured sweep; what `sweep` writes, before formatting.
std::vector<SweepEntry> run_sweep(const ExperimentConfig& cfg, unsigned jobs = 1);

}  // namespace irqsim::cli
