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
 * @file pcap.hpp
 * @brief Classic libpcap capture files as replayable traces.
 *
 * Layout (all fields in the byte order implied by the magic number):
 *
 *     global header, 24 bytes
 *       u32 magic  u16 version_major  u16 version_minor
 *       i32 thiszone  u32 sigfigs  u32 snaplen  u32 network
 *     per record, 16 bytes + incl_len bytes of data
 *       u32 ts_sec  u32 ts_frac  u32 incl_len  u32 orig_len
 *
 * Magic 0xA1B2C3D4 means microsecond timestamps, 0xA1B23C4D nanosecond.
 * pcapng files are recognised and rejected.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irqsim/trace.hpp"

namespace irqsim {

enum class Endianness { Little, Big };
enum class TimeResolution { Microsecond, Nanosecond };

struct PcapMeta {
    Endianness endianness = Endianness::Little;
    TimeResolution time_resolution = TimeResolution::Microsecond;
    std::uint32_t link_type = 1;
    std::uint32_t snaplen = 65535;
    std::uint16_t version_major = 2;
    std::uint16_t version_minor = 4;

    friend bool operator==(const PcapMeta&, const PcapMeta&) = default;
};

enum class PcapErrorKind { UnknownMagic, TruncatedHeader, TruncatedRecord };

class PcapError : public std::runtime_error {
public:
    PcapError(PcapErrorKind kind, std::string message, bool pcapng = false,
              std::size_t record_index = 0, std::size_t byte_offset = 0);

    PcapErrorKind kind() const noexcept { return kind_; }
    /// Set for UnknownMagic when the input is a pcapng section header block.
    bool is_pcapng() const noexcept { return pcapng_; }
    std::size_t record_index() const noexcept { return record_index_; }
    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    PcapErrorKind kind_;
    bool pcapng_;
    std::size_t record_index_;
    std::size_t byte_offset_;
};

struct ParsedPcap {
    PcapMeta meta;
    Trace trace;
    std::size_t records = 0;             ///< record headers read, including skipped ones
    std::size_t skipped_zero_length = 0; ///< records with orig_len == 0
    std::size_t reordered = 0;           ///< records timestamped before an earlier record
};

/// Parses a complete file image. Packet length is orig_len; arrival times are
/// relative to the earliest timestamp so the trace starts at 0.
ParsedPcap parse_pcap(std::span<const std::byte> bytes, std::string origin = {});
ParsedPcap read_pcap_file(const std::filesystem::path& path);

/// Serialises a trace as a classic capture. Records carry no payload
/// (incl_len = 0); orig_len holds the packet length. Microsecond output
/// truncates sub-microsecond arrival digits.
std::vector<std::byte> write_pcap(const Trace& trace, const PcapMeta& meta, Nanos epoch = 0);

struct PcapSummary {
    std::size_t packet_count = 0;
    Nanos duration = 0;
    std::optional<double> mean_rate_pps;  ///< empty when count < 2 or duration == 0
    std::uint32_t min_length = 0;
    double mean_length = 0.0;
    std::uint32_t max_length = 0;
};

PcapSummary pcap_summary(const PcapMeta& meta, const Trace& trace);

}  // namespace irqsim
