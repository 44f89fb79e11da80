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
 * @file engine.hpp
 * @brief Discrete-event executor for one virtual CPU.
 *
 * The user workload needs `required_compute` nanoseconds of CPU. Each
 * interrupt preempts it for the ISR followed immediately by the receiver
 * task. Overlapping interrupts queue FIFO and are serviced back to back
 * without nesting. The workload completes once it has accumulated its
 * required compute outside of service windows; that instant is the
 * execution time. Interrupts after completion are still serviced and
 * counted in the interrupt and latency statistics. They do not extend the
 * execution time.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irqsim/nic.hpp"
#include "irqsim/time.hpp"
#include "irqsim/trace.hpp"

namespace irqsim {

struct WorkloadSpec {
    Nanos required_compute = 0;
};

struct SimulationOptions {
    /// Keep the full interrupt timeline in the result.
    bool record_events = false;
    /// Discard interrupts that fire at or after workload completion; their
    /// packets are counted as dropped.
    bool truncate_at_completion = false;
};

struct SimulationResult {
    Nanos execution_time = 0;
    std::uint64_t interrupt_count = 0;
    std::array<std::uint64_t, kCauseCount> cause_counts{};
    Nanos stolen_isr = 0;
    Nanos stolen_rx = 0;
    /// Service time that started before the workload completed; always
    /// equals execution_time - required_compute.
    Nanos stolen_before_completion = 0;
    std::vector<Nanos> latencies;  ///< per delivered packet, in event order
    std::uint64_t dropped_packets = 0;
    std::optional<std::vector<InterruptEvent>> events;

    std::uint64_t cause_count(InterruptCause c) const { return cause_counts[static_cast<std::size_t>(c)]; }
};

SimulationResult simulate(const Trace& trace, const NicConfig& nic, const WorkloadSpec& workload,
                          const SimulationOptions& options = {});

/// Cartesian parameter grid. An empty axis is not swept and keeps the base
/// configuration's value. Points are enumerated row-major in the order
/// threshold, delay, lambda, seed (seed varies fastest).
struct SweepGrid {
    std::vector<std::uint64_t> counter_thresholds;
    std::vector<Nanos> timer_delays;
    std::vector<double> lambdas;
    std::vector<std::uint64_t> seeds;

    std::size_t size() const noexcept;
};

struct GridPoint {
    std::size_t index = 0;
    std::optional<std::uint64_t> counter_threshold;
    std::optional<Nanos> timer_delay;
    std::optional<double> lambda;
    std::optional<std::uint64_t> seed;

    std::string describe() const;
};

std::vector<GridPoint> enumerate(const SweepGrid& grid);

/// Applies the point's threshold and delay to a copy of `base`. Throws
/// std::invalid_argument when the mode has no such field.
NicConfig apply_point(const NicConfig& base, const GridPoint& point);

/// Produces the trace for a grid point; synthetic sources regenerate from
/// (lambda, seed), file sources return their loaded trace.
using TraceProvider = std::function<Trace(const GridPoint&)>;

/// A configuration or runtime failure at one grid point.
class SweepError : public std::runtime_error {
public:
    SweepError(GridPoint point, const std::string& what);
    const GridPoint& point() const noexcept { return point_; }

private:
    GridPoint point_;
};

struct SweepEntry {
    GridPoint point;
    SimulationResult result;
};

/// Runs every grid point independently on up to `jobs` threads. Results are
/// ordered by grid index regardless of completion order; the first failing
/// point by index is rethrown as SweepError.
std::vector<SweepEntry> simulate_sweep(const TraceProvider& traces, const NicConfig& base, const SweepGrid& grid,
                                       const WorkloadSpec& workload, unsigned jobs = 1,
                                       const SimulationOptions& options = {});

}  // namespace irqsim
