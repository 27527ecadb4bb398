// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// Rule-driven extraction of comparison-relevant lines from log files and
// the positional comparison against a reference.

#pragma once

#include "oval/config_model.hpp"
#include "oval/log_format.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oval {

struct Extraction {
    size_t rule_index = 0;       // into the rule list used for extraction
    size_t source_line_number = 0; // 1-based, in the whole file
    std::string raw_line;
    std::optional<double> value; // present iff the rule is a number rule
                                 // and its capture parsed

    bool operator==(const Extraction&) const = default;
};

enum class DiffKind {
    line_mismatch,
    number_out_of_tolerance,
    missing_in_log,
    extra_in_log,
    rule_mismatch,
};

struct Difference {
    DiffKind kind = DiffKind::line_mismatch;
    std::optional<Extraction> ref;
    std::optional<Extraction> log;
    std::optional<double> tolerance_percent; // number mismatches only
};

struct DiffReport {
    std::vector<ComparisonRule> rules_used;
    std::vector<Difference> differences;

    bool clean() const { return differences.empty(); }
};

// The rules a spec compares under; [^OVAL:] when it declares none.
const std::vector<ComparisonRule>& default_rules();
std::vector<ComparisonRule> rules_for(const ProgramSpec& spec);

// Scans only the body of the most recent run section of `file_text`.
// Each body line is attributed to the first rule that matches it.
std::vector<Extraction> extract(std::string_view file_text,
                                const std::vector<ComparisonRule>& rules,
                                std::vector<std::string>* warnings = nullptr);

// Index-aligned comparison of two extraction sequences; total.
DiffReport compare(const std::vector<Extraction>& ref,
                   const std::vector<Extraction>& log,
                   const std::vector<ComparisonRule>& rules);

// True when the log value falls outside the percent tolerance around the
// reference value. A zero reference demands an exactly zero log value.
bool out_of_tolerance(double ref_value, double log_value,
                      double tolerance_percent);

// The diff section for a report, in the documented format.
LogSection render_report(const DiffReport& report);

} // namespace oval
