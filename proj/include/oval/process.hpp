// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oval {

struct ProcessOptions {
    std::filesystem::path cwd;                                   // empty: inherit
    std::vector<std::pair<std::string, std::string>> env;       // setenv overrides
    std::optional<std::string> stdin_text;                      // nullopt: inherit stdin
    bool capture_output = true;                                  // merged stdout+stderr
};

struct ProcessResult {
    int exit_code = 0; // 128+signal when terminated by a signal, 127 when unlaunchable
    std::string output;
};

// Runs argv[0] with the given arguments. Never throws for child failures:
// an unlaunchable command yields exit 127 with the reason in `output`.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& opts = {});

} // namespace oval
