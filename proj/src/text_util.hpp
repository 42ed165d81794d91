// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pitchlex::detail {

// Decodes one code point starting at `pos` and advances it. Malformed
// sequences decode to U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos) noexcept;
void append_utf8(std::string& out, char32_t cp);

bool is_letter(char32_t cp) noexcept;
char32_t to_lower(char32_t cp) noexcept;
std::string to_lower_utf8(std::string_view s);

std::string_view strip_bom(std::string_view s) noexcept;
std::string normalize_newlines(std::string_view s);
std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split_lines(std::string_view s);

std::string read_file(const std::filesystem::path& path);
// Writes through a sibling temporary and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace pitchlex::detail
