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


// Plain-text CSV helpers. Numbers use 15 significant digits so files are
// byte-stable across runs; '#' lines are comments.

#ifndef CHMIX_CSV_IO_H
#define CHMIX_CSV_IO_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chmix/reconstruction.h"

namespace chmix {

std::string format_number(double value);
/// Empty string when unset.
std::string format_optional(const std::optional<double> &value);

/// "t,n1,...,n16,shots,seed"
std::string counts_csv_header();
std::string counts_to_csv_row(double t, const CountsVector &counts);

struct TimedCounts {
    double t = 0.0;
    CountsVector counts;
};

/// Parses one data row. Throws IoError on malformed input.
TimedCounts counts_from_csv_row(std::string_view row);

/// Reads every data row, skipping comments and the header. Throws IoError.
std::vector<TimedCounts> read_counts_csv(const std::filesystem::path &path);

/// Throws IoError.
void write_text_file(const std::filesystem::path &path, const std::string &contents);

}  // namespace chmix

#endif
