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

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

using namespace irqsim;
using namespace irqsim::cli;

namespace {

std::vector<Nanos> parse_edges(const std::string& text) {
    std::vector<Nanos> edges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad edge '" + item + "'");
        edges.push_back(v);
    }
    return edges;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"irqsim: NIC interrupt interference simulator"};
    app.require_subcommand(0, 1);

    std::string config;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool print_schema = false;

    app.add_option("--config", config, "Experiment configuration (JSON)");
    app.add_option("--out", out, "Output path ('-' for stdout)");
    app.add_option("--format", format, "Result format")->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", seed, "Override the seed list with a single seed");
    app.add_option("--jobs", jobs, "Parallel sweep workers")->check(CLI::PositiveNumber);
    app.add_flag("--print-schema", print_schema, "Print the configuration JSON schema and exit");

    std::string trace_path;
    std::string pcap_path;
    auto* run = app.add_subcommand("run", "Simulate one configuration")->fallthrough();
    run->add_option("--trace", trace_path, "Replay a canonical trace file instead of the configured load");
    run->add_option("--pcap", pcap_path, "Replay a classic pcap capture instead of the configured load");

    auto* sweep = app.add_subcommand("sweep", "Simulate every point of the configured sweep grid")->fallthrough();
    sweep->add_option("--trace", trace_path, "Replay a canonical trace file instead of the configured load");
    sweep->add_option("--pcap", pcap_path, "Replay a classic pcap capture instead of the configured load");

    auto* gen = app.add_subcommand("gen", "Write the configured synthetic load as a trace file")->fallthrough();

    std::string capture;
    std::string edges_text;
    auto* inspect = app.add_subcommand("inspect-pcap", "Summarise a capture and histogram its gaps")->fallthrough();
    inspect->add_option("file", capture, "Classic pcap file")->required();
    inspect->add_option("--edges", edges_text, "Comma-separated ascending histogram bin edges in ns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (print_schema) {
        std::cout << config_schema();
        return kExitOk;
    }

    Overrides flags;
    if (!out.empty()) flags.out = out;
    if (!format.empty()) flags.format = parse_format(format);
    if (seed_opt->count() > 0) flags.seed = seed;
    if (!trace_path.empty()) flags.trace = trace_path;
    if (!pcap_path.empty()) flags.pcap = pcap_path;
    flags.jobs = jobs;

    if (run->parsed()) return cmd_run(config, flags, std::cout, std::cerr);
    if (sweep->parsed()) return cmd_sweep(config, flags, std::cout, std::cerr);
    if (gen->parsed()) return cmd_gen(config, flags, std::cout, std::cerr);
    if (inspect->parsed()) {
        std::vector<Nanos> edges;
        try {
            if (!edges_text.empty()) edges = parse_edges(edges_text);
        } catch (const std::exception& e) {
            std::cerr << "irqsim: config error: --edges: " << e.what() << '\n';
            return kExitConfig;
        }
        return cmd_inspect_pcap(capture, edges, flags, std::cout, std::cerr);
    }
    std::cerr << app.help();
    return kExitConfig;
}
