// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// Abstract tool interfaces ("build", "run") mapped to concrete adapters.
// Adapters are external executables speaking a small argv protocol:
//
//   <adapter> build <target-stem>
//   <adapter> run <target-stem> <program-args...>
//
// with the program's variables plus OVAL_TARGET and OVAL_ENVIRONMENT
// exported, exit status 0 meaning success. Two adapters are built in:
// "make" (build only, runs `make <target-stem>`) and "oval" (build is a
// no-op, run launches the program itself).

#pragma once

#include "oval/config_model.hpp"
#include "oval/site.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oval {

enum class ToolInterface { build, run };

struct InterfaceMap {
    std::string build_tool = "make";
    std::string run_tool = "oval";
};

// Reads the "build tool" / "run tool" config entries; missing ones keep
// the defaults above.
InterfaceMap resolve_interface_map(const EffectiveConfig& effective);

struct ToolAdapter {
    std::string name;
    std::optional<std::filesystem::path> location; // nullopt: built-in

    bool builtin() const { return !location.has_value(); }
    bool supports(ToolInterface iface) const;
};

// Site/version/flavor override order for adapter lookup.
std::vector<std::filesystem::path>
adapter_candidates(const std::string& name, const SiteContext& ctx);

// First existing executable candidate wins; the built-ins only back the
// names "make" and "oval". Unknown names are fatal, listing every probed
// path.
ToolAdapter discover_adapter(const std::string& name, const SiteContext& ctx);

struct BuildResult {
    std::string command_line; // the exact delegated command, for the log header
    int exit_status = 0;
    std::string output; // merged stdout+stderr
};

struct RunResult {
    int exit_status = 0;
    std::string output;
};

BuildResult adapter_build(const ToolAdapter& adapter, const ProgramSpec& spec,
                          const std::filesystem::path& workdir);
RunResult adapter_run(const ToolAdapter& adapter, const ProgramSpec& spec,
                      const std::filesystem::path& workdir);

// Environment exported to adapter and program children: the spec's
// variables (winning over ambient values) plus the protocol variables.
std::vector<std::pair<std::string, std::string>>
child_environment(const ProgramSpec& spec);

} // namespace oval
