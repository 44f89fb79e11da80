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

#include "irqsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

namespace irqsim {

namespace {

struct ServiceWindow {
    Nanos start;
    Nanos end;
};

// First instant at which the workload has accumulated `required` ns of CPU
// outside the (sorted, disjoint) service windows.
Nanos completion_instant(Nanos required, const std::vector<ServiceWindow>& windows) {
    Nanos now = 0;
    Nanos remaining = required;
    for (const auto& w : windows) {
        if (w.start - now >= remaining) break;
        remaining -= w.start - now;
        now = w.end;
    }
    return checked_add(now, remaining, "completion time");
}

}  // namespace

SimulationResult simulate(const Trace& trace, const NicConfig& nic, const WorkloadSpec& workload,
                          const SimulationOptions& options) {
    nic.validate();
    if (workload.required_compute < 0) throw std::invalid_argument("workload: required_compute must be >= 0");

    ModerationOutcome moderated = moderate(nic.mode, trace, nic.end_policy);

    std::vector<ServiceWindow> windows;
    std::vector<Nanos> isr_costs;
    std::vector<Nanos> rx_costs;
    windows.reserve(moderated.events.size());
    isr_costs.reserve(moderated.events.size());
    rx_costs.reserve(moderated.events.size());
    Nanos server_free = 0;
    for (const auto& ev : moderated.events) {
        const Nanos isr = isr_duration(nic.delays, ev.batch);
        const Nanos rx = rx_duration(nic.delays, ev.batch);
        const Nanos start = std::max(ev.fire_time, server_free);
        const Nanos end = checked_add(start, checked_add(isr, rx, "service"), "service end");
        windows.push_back({start, end});
        isr_costs.push_back(isr);
        rx_costs.push_back(rx);
        server_free = end;
    }

    SimulationResult result;
    result.dropped_packets = moderated.dropped;
    result.execution_time = completion_instant(workload.required_compute, windows);

    std::vector<InterruptEvent> kept;
    for (std::size_t i = 0; i < moderated.events.size(); ++i) {
        auto& ev = moderated.events[i];
        const bool before_completion = windows[i].start < result.execution_time;
        if (options.truncate_at_completion && !before_completion) {
            result.dropped_packets += ev.batch.size();
            continue;
        }
        ++result.interrupt_count;
        ++result.cause_counts[static_cast<std::size_t>(ev.cause)];
        result.stolen_isr = checked_add(result.stolen_isr, isr_costs[i], "stolen isr");
        result.stolen_rx = checked_add(result.stolen_rx, rx_costs[i], "stolen rx");
        if (before_completion) {
            result.stolen_before_completion += windows[i].end - windows[i].start;
        }
        for (const auto& p : ev.batch) result.latencies.push_back(windows[i].end - p.arrival_time);
        if (options.record_events) kept.push_back(std::move(ev));
    }
    if (options.record_events) result.events = std::move(kept);

    if (result.execution_time - workload.required_compute != result.stolen_before_completion) {
        throw InvariantViolation("stolen-time ledger does not balance");
    }
    return result;
}

std::size_t SweepGrid::size() const noexcept {
    const auto axis = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
    return axis(counter_thresholds.size()) * axis(timer_delays.size()) * axis(lambdas.size()) * axis(seeds.size());
}

std::string GridPoint::describe() const {
    std::ostringstream os;
    os << "grid point #" << index;
    if (counter_threshold) os << " counter_threshold=" << *counter_threshold;
    if (timer_delay) os << " timer_delay_ns=" << *timer_delay;
    if (lambda) os << " lambda_pps=" << *lambda;
    if (seed) os << " seed=" << *seed;
    return os.str();
}

std::vector<GridPoint> enumerate(const SweepGrid& grid) {
    std::vector<GridPoint> points;
    points.reserve(grid.size());
    const auto axis = [](const auto& values) {
        using T = typename std::decay_t<decltype(values)>::value_type;
        std::vector<std::optional<T>> out(values.begin(), values.end());
        if (out.empty()) out.emplace_back();
        return out;
    };
    for (const auto& k : axis(grid.counter_thresholds)) {
        for (const auto& d : axis(grid.timer_delays)) {
            for (const auto& l : axis(grid.lambdas)) {
                for (const auto& s : axis(grid.seeds)) {
                    points.push_back(GridPoint{points.size(), k, d, l, s});
                }
            }
        }
    }
    return points;
}

NicConfig apply_point(const NicConfig& base, const GridPoint& point) {
    NicConfig cfg = base;
    if (point.counter_threshold) {
        if (auto* c = std::get_if<mode::Counter>(&cfg.mode)) {
            c->threshold = *point.counter_threshold;
        } else if (auto* c = std::get_if<mode::Combined>(&cfg.mode)) {
            c->threshold = *point.counter_threshold;
        } else {
            throw std::invalid_argument("counter threshold swept but NIC mode is " +
                                        std::string(mode_name(cfg.mode)));
        }
    }
    if (point.timer_delay) {
        if (auto* t = std::get_if<mode::Timer>(&cfg.mode)) {
            t->delay = *point.timer_delay;
        } else if (auto* c = std::get_if<mode::Combined>(&cfg.mode)) {
            c->delay = *point.timer_delay;
        } else {
            throw std::invalid_argument("timer delay swept but NIC mode is " + std::string(mode_name(cfg.mode)));
        }
    }
    return cfg;
}

SweepError::SweepError(GridPoint point, const std::string& what)
    : std::runtime_error(point.describe() + ": " + what), point_(std::move(point)) {}

std::vector<SweepEntry> simulate_sweep(const TraceProvider& traces, const NicConfig& base, const SweepGrid& grid,
                                       const WorkloadSpec& workload, unsigned jobs,
                                       const SimulationOptions& options) {
    const std::vector<GridPoint> points = enumerate(grid);
    std::vector<std::optional<SimulationResult>> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());

    const auto run_point = [&](std::size_t i) {
        try {
            const NicConfig cfg = apply_point(base, points[i]);
            cfg.validate();
            results[i] = simulate(traces(points[i]), cfg, workload, options);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) run_point(i);
            });
        }
    }

    std::vector<SweepEntry> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const InvariantViolation&) {
                throw;
            } catch (const TimeOverflow&) {
                throw;
            } catch (const std::exception& e) {
                throw SweepError(points[i], e.what());
            }
        }
        out.push_back(SweepEntry{points[i], std::move(*results[i])});
    }
    return out;
}

}  // namespace irqsim
