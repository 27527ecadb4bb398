// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/adapters.hpp"

#include "oval/process.hpp"
#include "oval/util.hpp"

namespace oval {

InterfaceMap resolve_interface_map(const EffectiveConfig& effective) {
    InterfaceMap map;
    if (auto v = effective.config_value("build tool"))
        map.build_tool = *v;
    if (auto v = effective.config_value("run tool"))
        map.run_tool = *v;
    return map;
}

bool ToolAdapter::supports(ToolInterface iface) const {
    if (!builtin())
        return true;
    if (name == "oval")
        return true; // default implementation for all interfaces
    return iface == ToolInterface::build; // built-in "make"
}

std::vector<std::filesystem::path>
adapter_candidates(const std::string& name, const SiteContext& ctx) {
    std::vector<std::filesystem::path> out;
    if (!ctx.has_site())
        return out;
    out.push_back(ctx.site_dir() / ctx.version / "Interfaces" / name);
    if (ctx.flavor)
        out.push_back(ctx.site_dir() / *ctx.flavor / "Interfaces" / name);
    out.push_back(ctx.site_dir() / "Interfaces" / name);
    out.push_back(ctx.oval_dir / ctx.version / "share" / "Interfaces" / name);
    return out;
}

ToolAdapter discover_adapter(const std::string& name, const SiteContext& ctx) {
    auto candidates = adapter_candidates(name, ctx);
    for (const auto& p : candidates)
        if (is_executable_file(p))
            return {name, p};
    if (name == "make" || name == "oval")
        return {name, std::nullopt};
    std::string msg = "unknown tool \"" + name + "\"; probed:";
    for (const auto& p : candidates)
        msg += "\n  " + p.string();
    if (candidates.empty())
        msg += " (no site directory; set " + std::string(kEnvOvalDir) + ")";
    throw Error(msg);
}

std::vector<std::pair<std::string, std::string>>
child_environment(const ProgramSpec& spec) {
    std::vector<std::pair<std::string, std::string>> env = spec.variables;
    env.emplace_back("OVAL_TARGET", spec.target);
    env.emplace_back("OVAL_ENVIRONMENT", spec.environment.value_or(""));
    return env;
}

namespace {

std::string join_command(const std::vector<std::string>& argv) {
    return join(argv, " ");
}

} // namespace

BuildResult adapter_build(const ToolAdapter& adapter, const ProgramSpec& spec,
                          const std::filesystem::path& workdir) {
    const std::string stem = target_stem(spec.target);
    BuildResult result;

    if (adapter.builtin() && adapter.name == "oval") {
        result.command_line = "oval build " + stem;
        return result; // no-op success
    }

    std::vector<std::string> argv;
    if (adapter.builtin()) // "make"
        argv = {"make", stem};
    else
        argv = {adapter.location->string(), "build", stem};
    result.command_line = join_command(argv);

    ProcessOptions opts;
    opts.cwd = workdir;
    opts.env = child_environment(spec);
    ProcessResult pr = run_process(argv, opts);
    result.exit_status = pr.exit_code;
    result.output = std::move(pr.output);
    return result;
}

RunResult adapter_run(const ToolAdapter& adapter, const ProgramSpec& spec,
                      const std::filesystem::path& workdir) {
    const std::string stem = target_stem(spec.target);

    std::vector<std::string> argv;
    if (adapter.builtin() && adapter.name == "oval") {
        if (spec.kind == ProgramKind::script)
            argv.push_back("./" + spec.target);
        else
            argv.push_back("./" + stem);
        argv.insert(argv.end(), spec.args.begin(), spec.args.end());
    } else if (adapter.builtin()) {
        throw Error("tool \"" + adapter.name +
                    "\" does not implement the run interface");
    } else {
        argv = {adapter.location->string(), "run", stem};
        argv.insert(argv.end(), spec.args.begin(), spec.args.end());
    }

    ProcessOptions opts;
    opts.cwd = workdir;
    opts.env = child_environment(spec);
    ProcessResult pr = run_process(argv, opts);
    return {pr.exit_code, std::move(pr.output)};
}

} // namespace oval
