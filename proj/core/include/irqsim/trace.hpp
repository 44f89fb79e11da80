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
 * @file trace.hpp
 * @brief Packets, traces, and the synthetic load generators.
 *
 * A trace is the load scenario driving a simulation: packet arrivals sorted
 * by virtual time, each carrying the wire length that the interrupt cost
 * model charges for. Generators are pure functions of their spec, so equal
 * specs always yield identical traces.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "irqsim/time.hpp"

namespace irqsim {

struct Packet {
    Nanos arrival_time = 0;
    std::uint32_t length = 1;  ///< bytes on the wire

    friend bool operator==(const Packet&, const Packet&) = default;
};

struct UniformLoadSpec {
    Nanos period = 1;
    std::uint64_t count = 0;
    std::uint32_t length = 64;
    Nanos start_offset = 0;

    /// Throws std::invalid_argument when the parameters are out of range.
    void validate() const;

    friend bool operator==(const UniformLoadSpec&, const UniformLoadSpec&) = default;
};

struct PoissonLoadSpec {
    double lambda = 1.0;  ///< packets per second
    std::uint64_t count = 0;
    std::uint32_t length = 64;
    std::uint64_t seed = 0;

    void validate() const;

    friend bool operator==(const PoissonLoadSpec&, const PoissonLoadSpec&) = default;
};

/// Provenance of a trace read from disk (canonical text file or capture).
struct FileSource {
    enum class Kind { TraceText, Pcap };
    Kind kind = Kind::TraceText;
    std::string path;

    friend bool operator==(const FileSource&, const FileSource&) = default;
};

using TraceSource = std::variant<std::monostate, UniformLoadSpec, PoissonLoadSpec, FileSource>;

/// Ordered packet sequence. Construction enforces the ordering and length
/// invariants; an empty trace is legal.
class Trace {
public:
    Trace() = default;
    Trace(std::vector<Packet> packets, TraceSource source);

    std::span<const Packet> packets() const noexcept { return packets_; }
    const TraceSource& source() const noexcept { return source_; }
    std::size_t size() const noexcept { return packets_.size(); }
    bool empty() const noexcept { return packets_.empty(); }
    const Packet& operator[](std::size_t i) const { return packets_[i]; }

    /// Packet-sequence equality; provenance is not compared.
    friend bool operator==(const Trace& a, const Trace& b) { return a.packets_ == b.packets_; }

private:
    std::vector<Packet> packets_;
    TraceSource source_;
};

Trace generate_uniform(const UniformLoadSpec& spec);

/// Exponential inter-arrival gap for a uniform draw u in (0, 1], rounded
/// half-up to whole nanoseconds: round(-ln(u) / lambda * 1e9).
Nanos poisson_gap(double u, double lambda);

/// Arrival i is the running sum of gaps 0..i, so the first packet lands one
/// gap after time zero.
Trace generate_poisson(const PoissonLoadSpec& spec);

/// Gap counts over half-open bins [edges[k], edges[k+1]).
struct Histogram {
    std::vector<Nanos> edges;
    std::vector<std::uint64_t> counts;  ///< edges.size() - 1 entries
    std::uint64_t underflow = 0;        ///< gaps below edges.front()
    std::uint64_t overflow = 0;         ///< gaps at or above edges.back()

    std::uint64_t total() const noexcept;
};

Histogram interarrival_histogram(const Trace& trace, std::span<const Nanos> bin_edges);

/// Log-spaced edges covering [first, last] with `bins` bins; rounded to
/// whole nanoseconds and de-duplicated.
std::vector<Nanos> log_spaced_edges(Nanos first, Nanos last, std::size_t bins);

// Canonical text format: one `<arrival_ns>,<length_bytes>` line per packet,
// sorted, with `#` comment lines allowed.

class TraceFormatError : public std::runtime_error {
public:
    TraceFormatError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in, TraceSource source = {});

void write_trace_file(const std::filesystem::path& path, const Trace& trace);
Trace read_trace_file(const std::filesystem::path& path);

/// One-line human-readable provenance, e.g. "poisson lambda_pps=1000 ...".
std::string describe(const TraceSource& source);

}  // namespace irqsim
