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

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "irqsim/trace.hpp"

namespace irqsim {

TraceFormatError::TraceFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}

void write_trace(std::ostream& out, const Trace& trace) {
    out << "# irqsim trace v1\n";
    out << "# source: " << describe(trace.source()) << '\n';
    out << "# arrival_ns,length_bytes\n";
    for (const auto& p : trace.packets()) out << p.arrival_time << ',' << p.length << '\n';
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* name) {
    field = trim(field);
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw TraceFormatError(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

Trace read_trace(std::istream& in, TraceSource source) {
    std::vector<Packet> packets;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) throw TraceFormatError(line_no, "expected '<arrival_ns>,<length_bytes>'");
        const auto arrival = parse_field<Nanos>(line.substr(0, comma), line_no, "arrival_ns");
        const auto length = parse_field<std::uint32_t>(line.substr(comma + 1), line_no, "length_bytes");
        if (arrival < 0) throw TraceFormatError(line_no, "negative arrival time");
        if (length < 1) throw TraceFormatError(line_no, "length must be >= 1");
        if (!packets.empty() && arrival < packets.back().arrival_time) {
            throw TraceFormatError(line_no, "arrival times not sorted");
        }
        packets.push_back({arrival, length});
    }
    return Trace(std::move(packets), std::move(source));
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_trace(out, trace);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Trace read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace file '" + path.string() + "'");
    return read_trace(in, FileSource{FileSource::Kind::TraceText, path.string()});
}

}  // namespace irqsim
