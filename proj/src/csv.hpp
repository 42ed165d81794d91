// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pitchlex::detail {

using CsvRow = std::vector<std::string>;

// RFC 4180: quoted fields may contain commas, doubled quotes and newlines.
// Throws Error(Parse) on an unterminated quoted field.
std::vector<CsvRow> parse_csv(std::string_view text);

void append_csv_field(std::string& out, std::string_view field);
void append_csv_row(std::string& out, const CsvRow& row);

}  // namespace pitchlex::detail
