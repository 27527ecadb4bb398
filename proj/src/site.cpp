// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/site.hpp"

#include "oval/util.hpp"

namespace oval {

VersionDecision determine_version(const std::string& executable_version,
                                  const std::optional<std::string>& env_requested,
                                  const std::optional<std::string>& ovalfile_requested,
                                  const std::filesystem::path& oval_dir,
                                  const std::string& tool_name,
                                  bool already_dispatched) {
    std::string requested = ovalfile_requested.value_or(
        env_requested.value_or(executable_version));
    if (requested == executable_version)
        return {};
    if (already_dispatched)
        throw Error("delegation loop: this executable is version " +
                    executable_version + " but version " + requested +
                    " is requested after a dispatch already happened");
    if (oval_dir.empty())
        throw Error("version " + requested + " requested but " + kEnvOvalDir +
                    " is not set");
    std::filesystem::path exe = oval_dir / requested / "bin" / tool_name;
    if (!std::filesystem::exists(exe))
        throw Error("oval version " + requested + " is not installed (missing " +
                    exe.string() + ")");
    VersionDecision d;
    d.run_in_place = false;
    d.delegate_path = exe;
    return d;
}

std::vector<std::filesystem::path>
customizable_file_candidates(const std::string& basename,
                             const SiteContext& ctx) {
    std::vector<std::filesystem::path> out;
    if (!ctx.has_site())
        return out;
    const std::filesystem::path site = ctx.site_dir();
    const std::string& v = ctx.version;
    if (ctx.flavor) {
        const std::string& f = *ctx.flavor;
        out.push_back(site / v / f / basename);
        out.push_back(site / (basename + "." + v + "." + f));
    }
    out.push_back(site / v / basename);
    out.push_back(site / (basename + "." + v));
    if (ctx.flavor) {
        const std::string& f = *ctx.flavor;
        out.push_back(site / f / basename);
        out.push_back(site / (basename + "." + f));
    }
    out.push_back(site / basename);
    return out;
}

std::optional<std::filesystem::path>
resolve_customizable_file(const std::string& basename, const SiteContext& ctx) {
    for (const auto& p : customizable_file_candidates(basename, ctx)) {
        std::error_code ec;
        if (std::filesystem::exists(p, ec))
            return p;
    }
    return std::nullopt;
}

ConfigNode load_site_defaults(const SiteContext& ctx) {
    auto path = resolve_customizable_file("OvalFile", ctx);
    if (!path)
        return ConfigNode{};
    return parse_ovalfile_at(*path);
}

} // namespace oval
