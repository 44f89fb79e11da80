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

#include "config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace irqsim::cli {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> known) {
    const std::set<std::string_view> allowed(known);
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) throw ConfigError(where + ": unknown field '" + key + "'");
    }
}

template <typename T>
T get_integer(const json& j, const std::string& key, const std::string& where, std::optional<T> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(where + ": missing field '" + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) {
            const auto u = v.get<std::uint64_t>();
            if (u > std::numeric_limits<T>::max()) throw ConfigError(where + "." + key + ": out of range");
            return static_cast<T>(u);
        }
        if (v.get<std::int64_t>() < 0) throw ConfigError(where + "." + key + ": must be >= 0");
        const auto u = static_cast<std::uint64_t>(v.get<std::int64_t>());
        if (u > std::numeric_limits<T>::max()) throw ConfigError(where + "." + key + ": out of range");
        return static_cast<T>(u);
    } else {
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
            throw ConfigError(where + "." + key + ": out of range");
        }
        return static_cast<T>(v.get<std::int64_t>());
    }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

std::string get_string(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

LoadSource parse_load(const json& j, const std::filesystem::path& base_dir) {
    require_object(j, "load");
    if (j.size() != 1) {
        throw ConfigError("load: exactly one load source required (uniform, poisson, trace_file or pcap_file)");
    }
    const std::string kind = j.begin().key();
    const json& body = j.begin().value();
    const auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    if (kind == "uniform") {
        require_object(body, "load.uniform");
        reject_unknown(body, "load.uniform", {"period_ns", "count", "length_bytes", "start_offset_ns"});
        UniformLoadSpec s;
        s.period = get_integer<Nanos>(body, "period_ns", "load.uniform");
        s.count = get_integer<std::uint64_t>(body, "count", "load.uniform");
        s.length = get_integer<std::uint32_t>(body, "length_bytes", "load.uniform", 64u);
        s.start_offset = get_integer<Nanos>(body, "start_offset_ns", "load.uniform", Nanos{0});
        try {
            s.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return s;
    }
    if (kind == "poisson") {
        require_object(body, "load.poisson");
        reject_unknown(body, "load.poisson", {"lambda_pps", "count", "length_bytes", "seed"});
        PoissonLoadSpec s;
        s.lambda = get_number(body, "lambda_pps", "load.poisson");
        s.count = get_integer<std::uint64_t>(body, "count", "load.poisson");
        s.length = get_integer<std::uint32_t>(body, "length_bytes", "load.poisson", 64u);
        s.seed = get_integer<std::uint64_t>(body, "seed", "load.poisson", std::uint64_t{0});
        try {
            s.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return s;
    }
    if (kind == "trace_file") {
        if (!body.is_string()) throw ConfigError("load.trace_file: expected a path string");
        return TraceFileLoad{resolve(body.get<std::string>())};
    }
    if (kind == "pcap_file") {
        if (!body.is_string()) throw ConfigError("load.pcap_file: expected a path string");
        return PcapFileLoad{resolve(body.get<std::string>())};
    }
    throw ConfigError("load: unknown load source '" + kind + "'");
}

NicConfig parse_nic(const json& j) {
    require_object(j, "nic");
    reject_unknown(j, "nic",
                   {"mode", "counter_threshold", "timer_delay_ns", "isr_per_byte_ns", "isr_constant_ns",
                    "rx_per_byte_ns", "rx_constant_ns", "end_policy", "allow_zero_cost"});
    NicConfig nic;
    const std::string mode = get_string(j, "mode", "nic");
    const bool wants_k = mode == "counter" || mode == "combined";
    const bool wants_d = mode == "timer" || mode == "combined";
    if (mode != "simple" && !wants_k && !wants_d) {
        throw ConfigError("nic.mode: expected simple, counter, timer or combined");
    }
    if (!wants_k && j.contains("counter_threshold")) {
        throw ConfigError("nic.counter_threshold: not valid for mode '" + mode + "'");
    }
    if (!wants_d && j.contains("timer_delay_ns")) {
        throw ConfigError("nic.timer_delay_ns: not valid for mode '" + mode + "'");
    }
    if (mode == "simple") nic.mode = mode::Simple{};
    if (mode == "counter") nic.mode = mode::Counter{get_integer<std::uint64_t>(j, "counter_threshold", "nic")};
    if (mode == "timer") nic.mode = mode::Timer{get_integer<Nanos>(j, "timer_delay_ns", "nic")};
    if (mode == "combined") {
        nic.mode = mode::Combined{get_integer<std::uint64_t>(j, "counter_threshold", "nic"),
                                  get_integer<Nanos>(j, "timer_delay_ns", "nic")};
    }
    nic.delays.isr_per_byte = get_integer<Nanos>(j, "isr_per_byte_ns", "nic", Nanos{0});
    nic.delays.isr_constant = get_integer<Nanos>(j, "isr_constant_ns", "nic", Nanos{0});
    nic.delays.rx_per_byte = get_integer<Nanos>(j, "rx_per_byte_ns", "nic", Nanos{0});
    nic.delays.rx_constant = get_integer<Nanos>(j, "rx_constant_ns", "nic", Nanos{0});
    if (j.contains("end_policy")) {
        const auto p = get_string(j, "end_policy", "nic");
        if (p == "flush") {
            nic.end_policy = EndPolicy::Flush;
        } else if (p == "drop") {
            nic.end_policy = EndPolicy::Drop;
        } else {
            throw ConfigError("nic.end_policy: expected flush or drop");
        }
    }
    if (j.contains("allow_zero_cost")) {
        if (!j.at("allow_zero_cost").is_boolean()) throw ConfigError("nic.allow_zero_cost: expected a boolean");
        nic.allow_zero_cost = j.at("allow_zero_cost").get<bool>();
    }
    try {
        nic.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("nic: ") + e.what());
    }
    return nic;
}

template <typename T>
std::vector<T> parse_axis(const json& j, const std::string& key) {
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw ConfigError("sweep." + key + ": expected a list");
    if (arr.empty()) throw ConfigError("sweep." + key + ": axis list is empty");
    std::vector<T> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        json wrapper = {{"v", arr[i]}};
        if constexpr (std::is_floating_point_v<T>) {
            out.push_back(get_number(wrapper, "v", "sweep." + key + "[" + std::to_string(i) + "]"));
        } else {
            out.push_back(get_integer<T>(wrapper, "v", "sweep." + key + "[" + std::to_string(i) + "]"));
        }
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_object(root, "config");
    reject_unknown(root, "config", {"load", "nic", "workload", "sweep", "seeds", "truncate_at_completion", "output"});

    ExperimentConfig cfg;
    if (!root.contains("load")) throw ConfigError("config: missing field 'load'");
    cfg.load = parse_load(root.at("load"), base_dir);
    if (!root.contains("nic")) throw ConfigError("config: missing field 'nic'");
    cfg.nic = parse_nic(root.at("nic"));

    if (!root.contains("workload")) throw ConfigError("config: missing field 'workload'");
    const auto& w = root.at("workload");
    require_object(w, "workload");
    reject_unknown(w, "workload", {"required_compute_ns"});
    cfg.workload.required_compute = get_integer<Nanos>(w, "required_compute_ns", "workload");
    if (cfg.workload.required_compute < 0) throw ConfigError("workload.required_compute_ns: must be >= 0");

    if (root.contains("sweep")) {
        const auto& s = root.at("sweep");
        require_object(s, "sweep");
        reject_unknown(s, "sweep", {"counter_threshold", "timer_delay_ns", "lambda_pps"});
        if (s.contains("counter_threshold")) {
            if (!counter_threshold(cfg.nic.mode)) {
                throw ConfigError("sweep.counter_threshold: NIC mode has no counter threshold");
            }
            cfg.sweep.counter_threshold = parse_axis<std::uint64_t>(s, "counter_threshold");
        }
        if (s.contains("timer_delay_ns")) {
            if (!timer_delay(cfg.nic.mode)) throw ConfigError("sweep.timer_delay_ns: NIC mode has no timer");
            cfg.sweep.timer_delay = parse_axis<Nanos>(s, "timer_delay_ns");
        }
        if (s.contains("lambda_pps")) {
            if (!std::holds_alternative<PoissonLoadSpec>(cfg.load)) {
                throw ConfigError("sweep.lambda_pps: only valid with a poisson load");
            }
            cfg.sweep.lambda = parse_axis<double>(s, "lambda_pps");
            for (double l : *cfg.sweep.lambda) {
                if (!(l > 0.0)) throw ConfigError("sweep.lambda_pps: rates must be positive");
            }
        }
    }

    if (root.contains("seeds")) {
        const auto& s = root.at("seeds");
        if (!s.is_array()) throw ConfigError("seeds: expected a list");
        for (std::size_t i = 0; i < s.size(); ++i) {
            json wrapper = {{"v", s[i]}};
            cfg.seeds.push_back(get_integer<std::uint64_t>(wrapper, "v", "seeds[" + std::to_string(i) + "]"));
        }
    }

    if (root.contains("truncate_at_completion")) {
        if (!root.at("truncate_at_completion").is_boolean()) {
            throw ConfigError("truncate_at_completion: expected a boolean");
        }
        cfg.truncate_at_completion = root.at("truncate_at_completion").get<bool>();
    }

    if (root.contains("output")) {
        const auto& o = root.at("output");
        require_object(o, "output");
        reject_unknown(o, "output", {"path", "format"});
        if (o.contains("path")) cfg.output_path = get_string(o, "path", "output");
        if (o.contains("format")) cfg.format = parse_format(get_string(o, "format", "output"));
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

std::vector<std::uint64_t> effective_seeds(const ExperimentConfig& cfg) {
    if (!cfg.seeds.empty()) return cfg.seeds;
    if (const auto* p = std::get_if<PoissonLoadSpec>(&cfg.load)) return {p->seed};
    return {0};
}

std::string_view format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("output format must be csv or json");
}

std::string_view config_schema() {
    static constexpr std::string_view kSchema = R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "irqsim experiment configuration",
  "type": "object",
  "additionalProperties": false,
  "required": ["load", "nic", "workload"],
  "properties": {
    "load": {
      "description": "Exactly one load source.",
      "type": "object",
      "minProperties": 1,
      "maxProperties": 1,
      "properties": {
        "uniform": {
          "type": "object",
          "additionalProperties": false,
          "required": ["period_ns", "count"],
          "properties": {
            "period_ns": {"type": "integer", "minimum": 1},
            "count": {"type": "integer", "minimum": 0},
            "length_bytes": {"type": "integer", "minimum": 1, "default": 64},
            "start_offset_ns": {"type": "integer", "minimum": 0, "default": 0}
          }
        },
        "poisson": {
          "type": "object",
          "additionalProperties": false,
          "required": ["lambda_pps", "count"],
          "properties": {
            "lambda_pps": {"type": "number", "exclusiveMinimum": 0, "description": "mean arrival rate, packets per second"},
            "count": {"type": "integer", "minimum": 0},
            "length_bytes": {"type": "integer", "minimum": 1, "default": 64},
            "seed": {"type": "integer", "minimum": 0, "default": 0}
          }
        },
        "trace_file": {"type": "string", "description": "canonical trace text file, relative to the config file"},
        "pcap_file": {"type": "string", "description": "classic pcap capture, relative to the config file"}
      },
      "additionalProperties": false
    },
    "nic": {
      "type": "object",
      "additionalProperties": false,
      "required": ["mode"],
      "properties": {
        "mode": {"enum": ["simple", "counter", "timer", "combined"]},
        "counter_threshold": {"type": "integer", "minimum": 1, "description": "counter and combined modes"},
        "timer_delay_ns": {"type": "integer", "minimum": 1, "description": "timer and combined modes"},
        "isr_per_byte_ns": {"type": "integer", "minimum": 0, "default": 0},
        "isr_constant_ns": {"type": "integer", "minimum": 0, "default": 0},
        "rx_per_byte_ns": {"type": "integer", "minimum": 0, "default": 0},
        "rx_constant_ns": {"type": "integer", "minimum": 0, "default": 0},
        "end_policy": {"enum": ["flush", "drop"], "default": "flush"},
        "allow_zero_cost": {"type": "boolean", "default": false}
      }
    },
    "workload": {
      "type": "object",
      "additionalProperties": false,
      "required": ["required_compute_ns"],
      "properties": {
        "required_compute_ns": {"type": "integer", "minimum": 0}
      }
    },
    "sweep": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "counter_threshold": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        "timer_delay_ns": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        "lambda_pps": {"type": "array", "minItems": 1, "items": {"type": "number", "exclusiveMinimum": 0}}
      }
    },
    "seeds": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    "truncate_at_completion": {"type": "boolean", "default": false},
    "output": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "path": {"type": "string"},
        "format": {"enum": ["csv", "json"], "default": "csv"}
      }
    }
  }
}
)";
    return kSchema;
}

}  // namespace irqsim::cli
