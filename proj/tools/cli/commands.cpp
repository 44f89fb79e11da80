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

#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "irqsim/engine.hpp"
#include "irqsim/pcap.hpp"
#include "report.hpp"

namespace irqsim::cli {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "irqsim: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SweepError& e) {
        err << "irqsim: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const LoadError& e) {
        err << "irqsim: load error: " << e.what() << '\n';
        return kExitLoad;
    } catch (const PcapError& e) {
        err << "irqsim: load error: " << e.what() << '\n';
        return kExitLoad;
    } catch (const TraceFormatError& e) {
        err << "irqsim: load error: " << e.what() << '\n';
        return kExitLoad;
    } catch (const InvariantViolation& e) {
        err << "irqsim: internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const TimeOverflow& e) {
        err << "irqsim: internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        err << "irqsim: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "irqsim: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

Trace load_file_trace(const LoadSource& load) {
    try {
        if (const auto* t = std::get_if<TraceFileLoad>(&load)) return read_trace_file(t->path);
        if (const auto* p = std::get_if<PcapFileLoad>(&load)) return read_pcap_file(p->path).trace;
    } catch (const PcapError&) {
        throw;
    } catch (const TraceFormatError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw LoadError(e.what());
    }
    throw InvariantViolation("load_file_trace called for a synthetic load");
}

/// Writes the table to the configured destination; reports whether it went
/// to `out` (stdout) so the caller can route the summary elsewhere.
bool emit(const ExperimentConfig& cfg, const Table& table, std::ostream& out) {
    if (!cfg.output_path || cfg.output_path->string() == "-") {
        write_table(out, table, cfg.format);
        return true;
    }
    std::ostringstream buffer;
    write_table(buffer, table, cfg.format);
    std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw LoadError("cannot open output '" + cfg.output_path->string() + "' for writing");
    file << buffer.str();
    file.flush();
    if (!file) throw LoadError("write to '" + cfg.output_path->string() + "' failed");
    return false;
}

ExperimentConfig configured(const std::filesystem::path& config, const Overrides& flags) {
    if (config.empty()) throw ConfigError("--config <path> is required");
    ExperimentConfig cfg = load_config(config);
    apply_overrides(cfg, flags);
    return cfg;
}

}  // namespace

void apply_overrides(ExperimentConfig& cfg, const Overrides& flags) {
    if (flags.trace && flags.pcap) throw ConfigError("exactly one load source: --trace and --pcap both given");
    if (flags.trace) cfg.load = TraceFileLoad{*flags.trace};
    if (flags.pcap) cfg.load = PcapFileLoad{*flags.pcap};
    if ((flags.trace || flags.pcap) && cfg.sweep.lambda) {
        throw ConfigError("sweep.lambda_pps: only valid with a poisson load");
    }
    if (flags.seed) cfg.seeds = {*flags.seed};
    if (flags.out) cfg.output_path = *flags.out;
    if (flags.format) cfg.format = *flags.format;
    if (flags.jobs == 0) throw ConfigError("--jobs must be >= 1");
}

TraceProvider make_provider(const ExperimentConfig& cfg) {
    if (const auto* u = std::get_if<UniformLoadSpec>(&cfg.load)) {
        auto trace = std::make_shared<const Trace>(generate_uniform(*u));
        return [trace](const GridPoint&) { return *trace; };
    }
    if (const auto* p = std::get_if<PoissonLoadSpec>(&cfg.load)) {
        const PoissonLoadSpec base = *p;
        return [base](const GridPoint& point) {
            auto spec = base;
            if (point.seed) spec.seed = *point.seed;
            if (point.lambda) spec.lambda = *point.lambda;
            return generate_poisson(spec);
        };
    }
    auto trace = std::make_shared<const Trace>(load_file_trace(cfg.load));
    return [trace](const GridPoint&) { return *trace; };
}

SweepGrid build_grid(const ExperimentConfig& cfg) {
    SweepGrid grid;
    if (cfg.sweep.counter_threshold) grid.counter_thresholds = *cfg.sweep.counter_threshold;
    if (cfg.sweep.timer_delay) grid.timer_delays = *cfg.sweep.timer_delay;
    if (cfg.sweep.lambda) grid.lambdas = *cfg.sweep.lambda;
    grid.seeds = effective_seeds(cfg);
    return grid;
}

std::vector<SweepEntry> run_sweep(const ExperimentConfig& cfg, unsigned jobs) {
    return simulate_sweep(make_provider(cfg), cfg.nic, build_grid(cfg), cfg.workload, jobs,
                          {.truncate_at_completion = cfg.truncate_at_completion});
}

int cmd_run(const std::filesystem::path& config, const Overrides& flags, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig cfg = configured(config, flags);
        const std::uint64_t seed = effective_seeds(cfg).front();
        GridPoint point;
        point.seed = seed;
        const Trace trace = make_provider(cfg)(point);
        const SimulationResult result =
            simulate(trace, cfg.nic, cfg.workload, {.truncate_at_completion = cfg.truncate_at_completion});

        Table table{result_columns({}), {result_row({}, point, seed, result)}};
        const bool to_stdout = emit(cfg, table, out);
        (to_stdout ? err : out) << summary_line(result) << '\n';
        return int{kExitOk};
    });
}

int cmd_sweep(const std::filesystem::path& config, const Overrides& flags, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig cfg = configured(config, flags);
        const SweepGrid grid = build_grid(cfg);
        const auto entries = run_sweep(cfg, flags.jobs);
        Table table{result_columns(cfg.sweep), {}};
        table.rows.reserve(entries.size());
        for (const auto& e : entries) table.rows.push_back(result_row(cfg.sweep, e.point, *e.point.seed, e.result));
        const bool to_stdout = emit(cfg, table, out);
        (to_stdout ? err : out) << "sweep: " << entries.size() << " runs over " << grid.size() / grid.seeds.size()
                                << " grid points x " << grid.seeds.size() << " seeds\n";
        return int{kExitOk};
    });
}

int cmd_gen(const std::filesystem::path& config, const Overrides& flags, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig cfg = configured(config, flags);
        Trace trace;
        if (const auto* u = std::get_if<UniformLoadSpec>(&cfg.load)) {
            trace = generate_uniform(*u);
        } else if (const auto* p = std::get_if<PoissonLoadSpec>(&cfg.load)) {
            auto spec = *p;
            spec.seed = effective_seeds(cfg).front();
            trace = generate_poisson(spec);
        } else {
            throw ConfigError("gen: load must be uniform or poisson");
        }
        if (!flags.out || flags.out->string() == "-") {
            write_trace(out, trace);
            return int{kExitOk};
        }
        try {
            write_trace_file(*flags.out, trace);
        } catch (const std::runtime_error& e) {
            throw LoadError(e.what());
        }
        out << "gen: wrote " << trace.size() << " packets to " << flags.out->string() << '\n';
        return int{kExitOk};
    });
}

std::vector<Nanos> default_histogram_edges() {
    std::vector<Nanos> edges;
    for (Nanos e = 1; e <= 10 * kNanosPerSecond; e *= 10) edges.push_back(e);
    return edges;
}

int cmd_inspect_pcap(const std::filesystem::path& capture, const std::vector<Nanos>& edges,
                     const Overrides& flags, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::vector<Nanos> bins = edges.empty() ? default_histogram_edges() : edges;
        Histogram hist;
        try {
            hist = interarrival_histogram(Trace{}, bins);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--edges: ") + e.what());
        }
        ParsedPcap parsed;
        try {
            parsed = read_pcap_file(capture);
        } catch (const PcapError&) {
            throw;
        } catch (const std::runtime_error& e) {
            throw LoadError(e.what());
        }
        const auto summary = pcap_summary(parsed.meta, parsed.trace);
        hist = interarrival_histogram(parsed.trace, bins);

        std::ostringstream text;
        text << "# capture: " << capture.string() << '\n';
        text << "# endianness: " << (parsed.meta.endianness == Endianness::Little ? "little" : "big") << '\n';
        text << "# time_resolution: "
             << (parsed.meta.time_resolution == TimeResolution::Microsecond ? "microsecond" : "nanosecond") << '\n';
        text << "# link_type: " << parsed.meta.link_type << '\n';
        text << "# snaplen: " << parsed.meta.snaplen << '\n';
        text << "# packet_count: " << summary.packet_count << '\n';
        text << "# skipped_zero_length_count: " << parsed.skipped_zero_length << '\n';
        text << "# reordered_count: " << parsed.reordered << '\n';
        text << "# duration_ns: " << summary.duration << '\n';
        text << "# mean_rate_pps: " << (summary.mean_rate_pps ? format_double(*summary.mean_rate_pps) : "undefined")
             << '\n';
        if (summary.packet_count > 0) {
            text << "# length_min_bytes: " << summary.min_length << '\n';
            text << "# length_mean_bytes: " << format_double(summary.mean_length) << '\n';
            text << "# length_max_bytes: " << summary.max_length << '\n';
        }
        text << "bin_lo_ns,bin_hi_ns,gap_count\n";
        text << "0," << bins.front() << ',' << hist.underflow << '\n';
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
            text << bins[b] << ',' << bins[b + 1] << ',' << hist.counts[b] << '\n';
        }
        text << bins.back() << ",," << hist.overflow << '\n';

        if (!flags.out || flags.out->string() == "-") {
            out << text.str();
        } else {
            std::ofstream file(*flags.out, std::ios::binary | std::ios::trunc);
            if (!file) throw LoadError("cannot open output '" + flags.out->string() + "' for writing");
            file << text.str();
        }
        return int{kExitOk};
    });
}

}  // namespace irqsim::cli
