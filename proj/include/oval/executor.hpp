// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// Per-program lifecycle: build, run, validate. Maintains the structured
// log file of each program. A build starts the log over; run and diff
// sections are appended, so one full session reads build, run, diff in
// order.

#pragma once

#include "oval/adapters.hpp"
#include "oval/config_model.hpp"
#include "oval/log_format.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace oval {

enum class PhaseStatus { ok, failed, skipped };
enum class DiffStatus { clean, diffs, no_reference, skipped };

struct RunOutcome {
    std::string log_basename;
    PhaseStatus built = PhaseStatus::skipped;
    PhaseStatus ran = PhaseStatus::skipped;
    DiffStatus diffed = DiffStatus::skipped;
};

std::filesystem::path log_path(const ProgramSpec& spec,
                               const std::filesystem::path& workdir);
std::filesystem::path ref_path(const ProgramSpec& spec,
                               const std::filesystem::path& workdir);

// Builds a source program through the build adapter and starts its log
// with the build section. Scripts and binaries are skipped (no section).
// Adapter failures are recorded in the log, never thrown.
PhaseStatus do_build(const ProgramSpec& spec, const ToolAdapter& build_tool,
                     const std::filesystem::path& workdir);

// Materializes the auxiliary files, appends the run section (variables and
// auxiliary-file contents in the header, program output as the body).
// `written_aux` collects the materialized paths for later cleanup.
PhaseStatus do_run(const ProgramSpec& spec, const ToolAdapter& run_tool,
                   const std::filesystem::path& workdir,
                   std::vector<std::filesystem::path>* written_aux = nullptr);

// Registers the current log as the reference: a byte-identical copy.
// Throws when there is no log to validate.
void do_validate(const ProgramSpec& spec,
                 const std::filesystem::path& workdir);

// Header wrap width for long variable values.
inline constexpr size_t kHeaderWrapWidth = 60;

// `NAME = value`, wrapped when longer than kHeaderWrapWidth. Wrapped
// path-list values continue one component per line.
std::vector<std::string> wrap_header_value(const std::string& name,
                                           const std::string& value);

// The run-section header: variables, then auxiliary files with their
// content indented two spaces.
std::vector<std::string> run_header_lines(const ProgramSpec& spec);

// Build output cleanup: blank runs collapsed, long lines re-wrapped with a
// two-space continuation indent.
std::string reformat_build_output(std::string_view raw);

} // namespace oval
