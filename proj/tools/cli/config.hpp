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

// Experiment configuration: one JSON document describing the load, the NIC,
// the workload, optional sweep axes and seeds, and where results go.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irqsim/engine.hpp"
#include "irqsim/nic.hpp"
#include "irqsim/trace.hpp"

namespace irqsim::cli {

/// Malformed or inconsistent configuration (exit status 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trace or capture could not be read or written (exit status 2).
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TraceFileLoad {
    std::filesystem::path path;
};
struct PcapFileLoad {
    std::filesystem::path path;
};

using LoadSource = std::variant<UniformLoadSpec, PoissonLoadSpec, TraceFileLoad, PcapFileLoad>;

enum class OutputFormat { Csv, Json };

struct SweepAxes {
    std::optional<std::vector<std::uint64_t>> counter_threshold;
    std::optional<std::vector<Nanos>> timer_delay;
    std::optional<std::vector<double>> lambda;

    bool any() const noexcept { return counter_threshold || timer_delay || lambda; }
};

struct ExperimentConfig {
    LoadSource load;
    NicConfig nic;
    WorkloadSpec workload;
    SweepAxes sweep;
    std::vector<std::uint64_t> seeds;
    bool truncate_at_completion = false;
    std::optional<std::filesystem::path> output_path;
    OutputFormat format = OutputFormat::Csv;
};

/// Parses a configuration document. Relative load paths resolve against
/// `base_dir`. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Seeds a run should use: the configured list, else the Poisson spec seed,
/// else a single 0.
std::vector<std::uint64_t> effective_seeds(const ExperimentConfig& cfg);

/// JSON Schema (draft 2020-12) for configuration files.
std::string_view config_schema();

std::string_view format_name(OutputFormat f);
OutputFormat parse_format(std::string_view name);

}  // namespace irqsim::cli
