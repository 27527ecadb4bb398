// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: dispatch, target selection, directory recursion,
// the prod session, watcher notification, and site commands.

#pragma once

#include "oval/config_model.hpp"
#include "oval/site.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace oval {

struct Invocation {
    std::string command;
    std::vector<std::string> targets; // empty = all programs
    bool clean_aux = false;
    bool no_recurse = false;
    bool strict = false;
    std::filesystem::path start_dir;
    std::vector<std::string> rest; // raw argv after the command token
};

struct SessionSummary {
    struct DirBlock {
        std::string relpath; // "." for the start directory
        std::vector<std::string> lines;
    };
    std::vector<DirBlock> blocks;
    int exit_status = 0; // 0 clean, 1 diffs, 2 failures

    std::string to_text() const;
};

struct SiteCommand {
    std::string name; // filename stem
    std::filesystem::path path;
};

// Executables under the Commands directories, site/version/flavor
// precedence first. Non-executable entries are skipped with a warning.
std::vector<SiteCommand>
discover_site_commands(const SiteContext& ctx,
                       std::vector<std::string>* warnings = nullptr);

// Pipes the summary text to the configured mail command once per watcher,
// the address appended as the final argument. No-op unless both the
// "mail instruction" and "watchers" config entries are present. Command
// failures are warnings; the session status never changes.
void notify_watchers(const SessionSummary& summary,
                     const EffectiveConfig& effective);

int dispatch(int argc, char* argv[]);
int dispatch(const std::vector<std::string>& args,
             const std::filesystem::path& start_dir);

} // namespace oval
