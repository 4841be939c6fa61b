// Copyright 2026 The channel-mixer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "chmix/csv_io.h"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "chmix/error.h"

namespace chmix {

namespace {

constexpr std::size_t kCountsColumns = 1 + kNumCounts + 2;

std::vector<std::string_view> split(std::string_view row, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = row.find(sep, start);
        fields.push_back(row.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return fields;
        }
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_field(std::string_view field) {
    field = trim(field);
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(ErrorKind::IoError, "cannot parse field '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.15g}", value); }

std::string format_optional(const std::optional<double> &value) {
    return value ? format_number(*value) : std::string();
}

std::string counts_csv_header() {
    std::string h = "t";
    for (int nu = 1; nu <= kNumCounts; ++nu) {
        h += fmt::format(",n{}", nu);
    }
    return h + ",shots,seed";
}

std::string counts_to_csv_row(double t, const CountsVector &counts) {
    std::string row = format_number(t);
    for (double n : counts.n) {
        row += ',';
        row += format_number(n);
    }
    return row + fmt::format(",{},{}", counts.shots, counts.seed);
}

TimedCounts counts_from_csv_row(std::string_view row) {
    auto fields = split(trim(row), ',');
    if (fields.size() != kCountsColumns) {
        throw Error(ErrorKind::IoError,
                    fmt::format("counts row has {} columns, expected {}", fields.size(), kCountsColumns));
    }
    TimedCounts tc;
    tc.t = parse_field<double>(fields[0]);
    for (int nu = 0; nu < kNumCounts; ++nu) {
        tc.counts.n[nu] = parse_field<double>(fields[1 + nu]);
    }
    tc.counts.shots = parse_field<std::int64_t>(fields[1 + kNumCounts]);
    tc.counts.seed = parse_field<std::uint64_t>(fields[2 + kNumCounts]);
    if (tc.counts.shots < 1) {
        throw Error(ErrorKind::IoError, "shots must be positive");
    }
    return tc;
}

std::vector<TimedCounts> read_counts_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    std::vector<TimedCounts> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#' || view.front() == 't') {
            continue;
        }
        rows.push_back(counts_from_csv_row(view));
    }
    return rows;
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    }
    out << contents;
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed for " + path.string());
    }
}

}  // namespace chmix
