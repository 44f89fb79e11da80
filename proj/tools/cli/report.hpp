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

// Result rows and their CSV / JSON renderings. Every column name carries a
// unit suffix (_ns, _count, _frac, _pps, _id).

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"
#include "irqsim/engine.hpp"
#include "irqsim/metrics.hpp"
#include "irqsim/trace.hpp"

namespace irqsim::cli {

/// A cell value: integer, real, or empty when undefined.
using Field = std::variant<std::monostate, std::int64_t, std::uint64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Field>> rows;
};

/// Columns for the swept axes present in `axes`, then the per-run metrics.
std::vector<std::string> result_columns(const SweepAxes& axes);

/// One row for a grid point (axis values taken from the point).
std::vector<Field> result_row(const SweepAxes& axes, const GridPoint& point, std::uint64_t seed,
                              const SimulationResult& result);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Shortest round-trip decimal rendering.
std::string format_double(double v);

std::string summary_line(const SimulationResult& result);

}  // namespace irqsim::cli
