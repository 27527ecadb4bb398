// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/diff_engine.hpp"

#include "oval/util.hpp"

#include <cmath>
#include <cstdlib>
#include <regex>

namespace oval {

const std::vector<ComparisonRule>& default_rules() {
    static const std::vector<ComparisonRule> rules = {
        {ComparisonRule::Kind::line, "^OVAL:", 0}};
    return rules;
}

std::vector<ComparisonRule> rules_for(const ProgramSpec& spec) {
    return spec.rules.empty() ? default_rules() : spec.rules;
}

namespace {

// The body of the most recent run section: everything between the closing
// rule line of the last run header (plus the single blank separator) and
// the next section rule line. 0-based [first, last) into `lines`.
std::pair<size_t, size_t> latest_run_body(const std::vector<std::string>& lines) {
    size_t close = lines.size();
    for (size_t i = 0; i < lines.size(); ++i)
        if (is_section_rule_line(lines[i], SectionKind::run))
            close = i;
    if (close == lines.size())
        return {0, 0};
    size_t first = close + 1;
    if (first < lines.size() && lines[first].empty())
        ++first;
    size_t last = first;
    while (last < lines.size() && !is_section_rule_line(lines[last]))
        ++last;
    return {first, last};
}

} // namespace

std::vector<Extraction> extract(std::string_view file_text,
                                const std::vector<ComparisonRule>& rules,
                                std::vector<std::string>* warnings) {
    std::vector<std::regex> compiled;
    compiled.reserve(rules.size());
    for (const auto& rule : rules)
        compiled.emplace_back(rule.pattern, std::regex::ECMAScript);

    std::vector<std::string> lines = split_lines(file_text);
    auto [first, last] = latest_run_body(lines);
    if (first == last && first == 0 && !lines.empty() && warnings)
        warnings->push_back("no run section found; nothing to extract");

    std::vector<Extraction> out;
    for (size_t i = first; i < last; ++i) {
        const std::string& line = lines[i];
        for (size_t r = 0; r < rules.size(); ++r) {
            std::smatch m;
            if (!std::regex_search(line, m, compiled[r]))
                continue;
            Extraction ex;
            ex.rule_index = r;
            ex.source_line_number = i + 1;
            ex.raw_line = line;
            if (rules[r].kind == ComparisonRule::Kind::number) {
                ex.value = parse_decimal(m[1].str());
                if (!ex.value && warnings)
                    warnings->push_back(
                        "line " + std::to_string(i + 1) + ": capture \"" +
                        m[1].str() + "\" is not a number; comparing the line "
                        "verbatim");
            }
            out.push_back(std::move(ex));
            break; // first matching rule wins; a line never matches twice
        }
    }
    return out;
}

bool out_of_tolerance(double ref_value, double log_value,
                      double tolerance_percent) {
    if (ref_value == 0.0)
        return log_value != 0.0;
    return std::fabs(log_value - ref_value) >
           (tolerance_percent / 100.0) * std::fabs(ref_value);
}

DiffReport compare(const std::vector<Extraction>& ref,
                   const std::vector<Extraction>& log,
                   const std::vector<ComparisonRule>& rules) {
    DiffReport report;
    report.rules_used = rules;

    size_t common = std::min(ref.size(), log.size());
    for (size_t i = 0; i < common; ++i) {
        const Extraction& r = ref[i];
        const Extraction& l = log[i];
        if (r.rule_index != l.rule_index) {
            report.differences.push_back(
                {DiffKind::rule_mismatch, r, l, std::nullopt});
            continue;
        }
        const ComparisonRule& rule = rules[r.rule_index];
        if (rule.kind == ComparisonRule::Kind::number && r.value && l.value) {
            if (out_of_tolerance(*r.value, *l.value, rule.tolerance_percent))
                report.differences.push_back({DiffKind::number_out_of_tolerance,
                                              r, l, rule.tolerance_percent});
            continue;
        }
        if (rtrim(r.raw_line) != rtrim(l.raw_line))
            report.differences.push_back(
                {DiffKind::line_mismatch, r, l, std::nullopt});
    }
    for (size_t i = common; i < ref.size(); ++i)
        report.differences.push_back(
            {DiffKind::missing_in_log, ref[i], std::nullopt, std::nullopt});
    for (size_t i = common; i < log.size(); ++i)
        report.differences.push_back(
            {DiffKind::extra_in_log, std::nullopt, log[i], std::nullopt});
    return report;
}

LogSection render_report(const DiffReport& report) {
    LogSection section;
    section.kind = SectionKind::diff;
    for (const auto& rule : report.rules_used) {
        if (rule.kind == ComparisonRule::Kind::line)
            section.header_lines.push_back("diff line: /" + rule.pattern + "/");
        else
            section.header_lines.push_back(
                "diff number: /" + rule.pattern + "/ ~" +
                format_decimal(rule.tolerance_percent) + "%");
    }

    std::vector<std::string> blocks;
    for (const auto& d : report.differences) {
        std::string ref_no =
            d.ref ? "#" + std::to_string(d.ref->source_line_number) : "#<absent>";
        std::string log_no =
            d.log ? "#" + std::to_string(d.log->source_line_number) : "#<absent>";
        std::string head;
        if (d.kind == DiffKind::number_out_of_tolerance)
            head = "ref" + ref_no + " !~ log" + log_no + " (>" +
                   format_decimal(d.tolerance_percent.value_or(0)) + "%)";
        else
            head = "ref" + ref_no + " != log" + log_no;
        std::string block = head + "\n";
        block += "ref: " + (d.ref ? d.ref->raw_line : "<absent>") + "\n";
        block += "---\n";
        block += "log: " + (d.log ? d.log->raw_line : "<absent>") + "\n";
        blocks.push_back(std::move(block));
    }
    section.body = join(blocks, "\n");
    return section;
}

} // namespace oval
