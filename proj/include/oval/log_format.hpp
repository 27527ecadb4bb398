// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// Structured log sections. A section is a header block fenced by two rule
// lines, then one blank line, then the body. Every header line carries the
// `[oval <kind>] ` prefix.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace oval {

enum class SectionKind { build, run, diff };

// '=' count after the prefix in a rule line.
inline constexpr int kSectionRuleWidth = 29;

struct LogSection {
    SectionKind kind = SectionKind::build;
    std::vector<std::string> header_lines; // without the prefix
    std::string body;
};

std::string_view section_prefix(SectionKind kind); // e.g. "[oval run] "
std::string section_rule_line(SectionKind kind);

// Renders the section, trailing newline included. An empty body renders the
// header block alone; otherwise one blank line separates header and body.
std::string format_section(const LogSection& section);

// True for a rule line of any kind / of one specific kind.
bool is_section_rule_line(std::string_view line);
bool is_section_rule_line(std::string_view line, SectionKind kind);

// Appends to (or creates) the log, keeping sections newline-separated.
void append_section(const std::filesystem::path& log_path,
                    const LogSection& section);

// Starts the log over with this section.
void truncate_with_section(const std::filesystem::path& log_path,
                           const LogSection& section);

} // namespace oval
