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

/**
 * @file metrics.hpp
 * @brief Analysis views over simulation results.
 *
 * Percentiles use the nearest-rank definition (no interpolation): the p-th
 * percentile of n sorted values is the value at 1-based rank ceil(p*n/100).
 * Undefined quantities (no interrupts, no latencies) are std::nullopt rather
 * than NaN.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irqsim/engine.hpp"

namespace irqsim {

struct CauseRatio {
    double counter_fraction = 0.0;
    double timer_fraction = 0.0;
    double per_packet_fraction = 0.0;
    double flush_fraction = 0.0;
};

std::optional<CauseRatio> cause_ratio(const SimulationResult& result);

struct LatencySummary {
    double mean = 0.0;
    Nanos p50 = 0;
    Nanos p95 = 0;
    Nanos max = 0;
};

/// Nearest-rank percentile of an ascending-sorted, non-empty sequence.
Nanos nearest_rank(std::span<const Nanos> sorted, unsigned percent);

std::optional<LatencySummary> latency_summary(std::span<const Nanos> latencies);
std::optional<LatencySummary> latency_summary(const SimulationResult& result);

/// Per-run scalars kept in a table cell.
struct ScalarMetrics {
    Nanos execution_time = 0;
    std::uint64_t interrupt_count = 0;
    std::array<std::uint64_t, kCauseCount> cause_counts{};
    Nanos stolen_isr = 0;
    Nanos stolen_rx = 0;
    std::uint64_t dropped_packets = 0;
    std::optional<CauseRatio> causes;
    std::optional<LatencySummary> latency;
};

ScalarMetrics scalars(const SimulationResult& result);

/// Mean and sample standard deviation (n - 1 denominator; 0 for n == 1).
struct Stat {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t samples = 0;
};

std::optional<Stat> summarize(std::span<const double> values);

struct Axis {
    std::string name;
    std::vector<double> values;
};

struct SweepCell {
    std::vector<double> coords;        ///< one value per table axis
    std::vector<std::uint64_t> seeds;  ///< parallel to samples; empty when no seed axis
    std::vector<ScalarMetrics> samples;

    Stat execution_time() const;
    Stat interrupt_count() const;
    /// Mean over samples whose cause ratio is defined.
    std::optional<Stat> counter_fraction() const;
    std::optional<Stat> mean_latency() const;
};

enum class SeedHandling {
    PerSeed,  ///< seed is an ordinary axis; one sample per cell
    Mean,     ///< seeds are folded into each cell's samples
};

struct SweepTable {
    std::vector<Axis> axes;
    std::vector<SweepCell> cells;  ///< row-major over axes, last axis fastest

    /// Cell at the given per-axis indices.
    const SweepCell& at(std::span<const std::size_t> index) const;
    const SweepCell& at(std::initializer_list<std::size_t> index) const {
        return at(std::span<const std::size_t>(index.begin(), index.size()));
    }
};

/// Reshapes sweep output into a table. Throws std::invalid_argument when the
/// entries do not form a complete row-major cartesian grid.
SweepTable tabulate(std::span<const SweepEntry> entries, SeedHandling seeds = SeedHandling::PerSeed);

}  // namespace irqsim
