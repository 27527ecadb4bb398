// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oval {

// Fatal, user-facing failure. The message is printed as-is (it already
// carries file:line context where applicable).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s);
std::string_view rtrim(std::string_view s);

// Splits on newlines; a trailing newline does not produce an empty last
// element. A '\r' before the newline is dropped.
std::vector<std::string> split_lines(std::string_view text);

// Splits on runs of blanks and tabs; no empty elements.
std::vector<std::string> split_ws(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// getenv, mapping unset or empty to nullopt.
std::optional<std::string> env_value(const char* name);

// Minimal decimal rendering: 5 -> "5", 2.5 -> "2.5".
std::string format_decimal(double v);

// Plain decimal parse: optional sign, decimal point, exponent. Surrounding
// blanks are ignored; hex, inf and nan forms are not accepted.
std::optional<double> parse_decimal(std::string_view text);

bool is_executable_file(const std::filesystem::path& path);

} // namespace oval
