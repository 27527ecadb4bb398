// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// Version dispatch, flavor handling, and most-specialized-file resolution
// against an installed tree rooted at OVAL_DIR.

#pragma once

#include "oval/config_model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oval {

inline constexpr std::string_view kOvalVersion = "3_0_0";
inline constexpr const char* kEnvOvalDir = "OVAL_DIR";
inline constexpr const char* kEnvOvalVersion = "OVAL_VERSION";
inline constexpr const char* kEnvOvalFlavor = "OVAL_FLAVOR";
inline constexpr const char* kEnvDispatchGuard = "OVAL_DISPATCHED";

struct SiteContext {
    std::filesystem::path oval_dir; // install root; empty disables site lookups
    std::string version;
    std::optional<std::string> flavor;

    std::filesystem::path site_dir() const { return oval_dir / "site"; }
    bool has_site() const { return !oval_dir.empty(); }
};

struct VersionDecision {
    bool run_in_place = true;
    std::filesystem::path delegate_path; // set when !run_in_place
};

// Picks between running this executable and delegating to an installed one.
// The requested version is the OvalFile's, else the environment's, else our
// own. Throws when the requested version is not installed or when a
// delegation loop is detected (guard marker already set).
VersionDecision determine_version(const std::string& executable_version,
                                  const std::optional<std::string>& env_requested,
                                  const std::optional<std::string>& ovalfile_requested,
                                  const std::filesystem::path& oval_dir,
                                  const std::string& tool_name,
                                  bool already_dispatched);

// The probe order for a site-customizable file, most specialized first.
// Flavor-bearing entries are omitted when no flavor is set.
std::vector<std::filesystem::path>
customizable_file_candidates(const std::string& basename, const SiteContext& ctx);

// First existing candidate, or nullopt.
std::optional<std::filesystem::path>
resolve_customizable_file(const std::string& basename, const SiteContext& ctx);

// Site-level default OvalFile, or an empty node when none is installed.
// Parse errors are fatal: a broken site file must not be silently ignored.
ConfigNode load_site_defaults(const SiteContext& ctx);

} // namespace oval
