// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/log_format.hpp"

#include "oval/util.hpp"

#include <fstream>

namespace oval {

std::string_view section_prefix(SectionKind kind) {
    switch (kind) {
    case SectionKind::build:
        return "[oval build] ";
    case SectionKind::run:
        return "[oval run] ";
    case SectionKind::diff:
        return "[oval diff] ";
    }
    return "";
}

std::string section_rule_line(SectionKind kind) {
    return std::string(section_prefix(kind)) +
           std::string(kSectionRuleWidth, '=');
}

std::string format_section(const LogSection& section) {
    std::string rule = section_rule_line(section.kind);
    std::string prefix(section_prefix(section.kind));
    std::string out = rule + "\n";
    for (const auto& line : section.header_lines)
        out += prefix + line + "\n";
    out += rule + "\n";
    if (!section.body.empty()) {
        out += "\n";
        out += section.body;
        if (out.back() != '\n')
            out += "\n";
    }
    return out;
}

namespace {

bool rule_line_matches(std::string_view line, std::string_view prefix) {
    if (line.substr(0, prefix.size()) != prefix)
        return false;
    std::string_view rest = line.substr(prefix.size());
    if (rest.empty())
        return false;
    for (char c : rest)
        if (c != '=')
            return false;
    return true;
}

} // namespace

bool is_section_rule_line(std::string_view line, SectionKind kind) {
    return rule_line_matches(line, section_prefix(kind));
}

bool is_section_rule_line(std::string_view line) {
    return is_section_rule_line(line, SectionKind::build) ||
           is_section_rule_line(line, SectionKind::run) ||
           is_section_rule_line(line, SectionKind::diff);
}

void append_section(const std::filesystem::path& log_path,
                    const LogSection& section) {
    bool needs_newline = false;
    {
        std::ifstream in(log_path, std::ios::binary | std::ios::ate);
        if (in && in.tellg() > 0) {
            in.seekg(-1, std::ios::end);
            char last = 0;
            in.get(last);
            needs_newline = last != '\n';
        }
    }
    std::ofstream out(log_path, std::ios::binary | std::ios::app);
    if (!out)
        throw Error("cannot write " + log_path.string());
    if (needs_newline)
        out << '\n';
    out << format_section(section);
    if (!out)
        throw Error("cannot write " + log_path.string());
}

void truncate_with_section(const std::filesystem::path& log_path,
                           const LogSection& section) {
    write_file(log_path, format_section(section));
}

} // namespace oval
