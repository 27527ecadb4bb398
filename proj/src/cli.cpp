// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/cli.hpp"

#include "oval/adapters.hpp"
#include "oval/diff_engine.hpp"
#include "oval/executor.hpp"
#include "oval/process.hpp"
#include "oval/util.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <set>

namespace oval {

namespace fs = std::filesystem;

namespace {

constexpr const char* kToolName = "oval";

const std::vector<std::string>& builtin_commands() {
    static const std::vector<std::string> cmds = {"build", "run", "validate",
                                                  "diff", "prod", "help"};
    return cmds;
}

bool is_builtin(const std::string& name) {
    const auto& cmds = builtin_commands();
    return std::find(cmds.begin(), cmds.end(), name) != cmds.end();
}

void warn(const std::string& msg) {
    std::cerr << "oval: warning: " << msg << "\n";
}

void warn_all(const std::vector<std::string>& msgs) {
    for (const auto& m : msgs)
        warn(m);
}

void print_usage(std::ostream& os, const std::vector<SiteCommand>& site_cmds) {
    os << "usage: oval <command> [targets...] [--no-recurse] [--clean-aux]"
          " [--strict]\n"
          "\n"
          "commands:\n"
          "  build      compile the declared test programs through the build"
          " tool\n"
          "  run        execute the programs and capture their output to log"
          " files\n"
          "  validate   register the current log files as reference outputs\n"
          "  diff       compare the latest run output against the references\n"
          "  prod       build, run and diff every program holding a"
          " reference\n"
          "  help       show this message\n";
    if (!site_cmds.empty()) {
        os << "site commands:\n";
        for (const auto& c : site_cmds)
            os << "  " << c.name << "  (" << c.path.string() << ")\n";
    }
    os << "\nenvironment: OVAL_DIR, OVAL_VERSION, OVAL_FLAVOR\n";
}

Invocation parse_args(const std::vector<std::string>& args,
                      const fs::path& start_dir) {
    Invocation inv;
    inv.start_dir = start_dir;
    bool have_command = false;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (have_command)
            inv.rest.push_back(a);
        if (a == "--no-recurse")
            inv.no_recurse = true;
        else if (a == "--clean-aux")
            inv.clean_aux = true;
        else if (a == "--strict")
            inv.strict = true;
        else if (a.rfind("--", 0) == 0)
            throw Error("unknown option \"" + a + "\"");
        else if (!have_command) {
            inv.command = a;
            have_command = true;
        } else {
            inv.targets.push_back(a);
        }
    }
    return inv;
}

// Applies <options command=...> tokens from the effective configuration on
// top of the explicit flags.
void apply_command_options(Invocation& inv, const EffectiveConfig& effective) {
    auto value = effective.options_value(inv.command);
    if (!value)
        return;
    for (const auto& tok : split_ws(*value)) {
        if (tok == "--no-recurse")
            inv.no_recurse = true;
        else if (tok == "--clean-aux")
            inv.clean_aux = true;
        else if (tok == "--strict")
            inv.strict = true;
        else
            warn("ignoring unknown option \"" + tok + "\" configured for "
                 "command \"" + inv.command + "\"");
    }
}

bool has_ovalfile(const fs::path& dir) {
    std::error_code ec;
    return fs::is_regular_file(dir / "OvalFile", ec);
}

// Directories holding an OvalFile, from the root-most of the contiguous
// chain down to (and including) start. Empty when start has none.
std::vector<fs::path> ovalfile_chain_dirs(const fs::path& start) {
    std::vector<fs::path> dirs;
    fs::path cur = start;
    while (has_ovalfile(cur)) {
        dirs.push_back(cur);
        fs::path parent = cur.parent_path();
        if (parent == cur)
            break;
        cur = parent;
    }
    std::reverse(dirs.begin(), dirs.end());
    return dirs;
}

bool spec_matches_target(const ProgramSpec& spec, const std::string& t) {
    return t == spec.target || t == target_stem(spec.target) ||
           t == spec.log_basename;
}

int worst(int a, int b) { return std::max(a, b); }

struct Session {
    Invocation inv;
    SiteContext ctx;
    ConfigNode site_node;
    int status = 0;
    std::set<std::string> matched_targets;
    SessionSummary summary;
    std::set<std::string> visited;
};

std::vector<ProgramSpec> select_specs(Session& s,
                                      const std::vector<ProgramSpec>& all) {
    if (s.inv.targets.empty())
        return all;
    std::vector<ProgramSpec> out;
    for (const auto& spec : all) {
        for (const auto& t : s.inv.targets) {
            if (spec_matches_target(spec, t)) {
                s.matched_targets.insert(t);
                out.push_back(spec);
                break;
            }
        }
    }
    return out;
}

void remove_aux(const std::vector<fs::path>& written) {
    for (const auto& p : written) {
        std::error_code ec;
        fs::remove(p, ec);
    }
}

// Discovers the two adapters lazily; `need_run` also enforces that the run
// tool actually implements the run interface.
struct AdapterSet {
    std::optional<ToolAdapter> build_tool;
    std::optional<ToolAdapter> run_tool;

    const ToolAdapter& build(const InterfaceMap& map, const SiteContext& ctx) {
        if (!build_tool)
            build_tool = discover_adapter(map.build_tool, ctx);
        return *build_tool;
    }
    const ToolAdapter& run(const InterfaceMap& map, const SiteContext& ctx) {
        if (!run_tool) {
            run_tool = discover_adapter(map.run_tool, ctx);
            if (!run_tool->supports(ToolInterface::run))
                throw Error("tool \"" + map.run_tool +
                            "\" does not implement the run interface");
        }
        return *run_tool;
    }
};

int cmd_build(Session& s, const std::vector<ProgramSpec>& specs,
              const InterfaceMap& map, const fs::path& dir) {
    int status = 0;
    AdapterSet adapters;
    for (const auto& spec : specs) {
        if (spec.kind != ProgramKind::source)
            continue;
        PhaseStatus built = do_build(spec, adapters.build(map, s.ctx), dir);
        if (built == PhaseStatus::failed) {
            std::cerr << "oval: build failed for " << spec.log_basename
                      << " (see " << log_path(spec, dir).string() << ")\n";
            status = 2;
        }
    }
    return status;
}

int cmd_run(Session& s, const std::vector<ProgramSpec>& specs,
            const InterfaceMap& map, const fs::path& dir) {
    int status = 0;
    AdapterSet adapters;
    for (const auto& spec : specs) {
        std::vector<fs::path> written;
        PhaseStatus ran = do_run(spec, adapters.run(map, s.ctx), dir, &written);
        if (s.inv.clean_aux)
            remove_aux(written);
        if (ran == PhaseStatus::failed) {
            std::cerr << "oval: run failed for " << spec.log_basename
                      << " (see " << log_path(spec, dir).string() << ")\n";
            status = 2;
        }
    }
    return status;
}

int cmd_validate(const std::vector<ProgramSpec>& specs, const fs::path& dir) {
    int status = 0;
    for (const auto& spec : specs) {
        try {
            do_validate(spec, dir);
        } catch (const Error& e) {
            std::cerr << "oval: error: " << e.what() << "\n";
            status = 2;
        }
    }
    return status;
}

// Extracts both files, appends the diff section to the log, and returns
// the report.
DiffReport diff_against_reference(const ProgramSpec& spec,
                                  const fs::path& dir) {
    std::vector<ComparisonRule> rules = rules_for(spec);
    std::vector<std::string> warnings;
    auto ref_ex = extract(read_file(ref_path(spec, dir)), rules, &warnings);
    auto log_ex = extract(read_file(log_path(spec, dir)), rules, &warnings);
    warn_all(warnings);
    DiffReport report = compare(ref_ex, log_ex, rules);
    append_section(log_path(spec, dir), render_report(report));
    return report;
}

int cmd_diff(const std::vector<ProgramSpec>& specs, const fs::path& dir) {
    int status = 0;
    for (const auto& spec : specs) {
        if (!fs::exists(ref_path(spec, dir))) {
            std::cerr << "oval: error: no reference for " << spec.log_basename
                      << " (expected " << ref_path(spec, dir).string()
                      << ")\n";
            status = worst(status, 2);
            continue;
        }
        if (!fs::exists(log_path(spec, dir))) {
            std::cerr << "oval: error: no log for " << spec.log_basename
                      << " (expected " << log_path(spec, dir).string()
                      << "; run it first)\n";
            status = worst(status, 2);
            continue;
        }
        DiffReport report = diff_against_reference(spec, dir);
        std::cout << format_section(render_report(report));
        if (!report.clean())
            status = worst(status, 1);
    }
    return status;
}

int cmd_prod(Session& s, const std::vector<ProgramSpec>& specs,
             const InterfaceMap& map, const fs::path& dir,
             const std::string& relpath) {
    int status = 0;
    std::vector<std::string> lines;
    AdapterSet adapters;
    for (const auto& spec : specs) {
        if (!fs::exists(ref_path(spec, dir))) {
            if (s.inv.strict)
                warn("no reference for " + spec.log_basename + ", skipped");
            continue;
        }
        PhaseStatus built =
            do_build(spec,
                     spec.kind == ProgramKind::source
                         ? adapters.build(map, s.ctx)
                         : ToolAdapter{"oval", std::nullopt},
                     dir);
        if (built == PhaseStatus::failed) {
            lines.push_back("  " + spec.log_basename + ": build (FAILED).");
            status = worst(status, 2);
            continue;
        }
        std::vector<fs::path> written;
        PhaseStatus ran = do_run(spec, adapters.run(map, s.ctx), dir, &written);
        if (s.inv.clean_aux)
            remove_aux(written);
        if (ran == PhaseStatus::failed) {
            lines.push_back("  " + spec.log_basename +
                            ": build, run (FAILED).");
            status = worst(status, 2);
            continue;
        }
        DiffReport report = diff_against_reference(spec, dir);
        if (report.clean()) {
            lines.push_back("  " + spec.log_basename + ": build, run, diff.");
        } else {
            lines.push_back("  " + spec.log_basename +
                            ": build, run, diff (DIFFS).");
            status = worst(status, 1);
        }
    }
    if (!lines.empty()) {
        if (relpath != ".")
            std::cout << relpath << ":\n";
        for (const auto& l : lines)
            std::cout << l << "\n";
        s.summary.blocks.push_back({relpath, lines});
    }
    return status;
}

void process_directory(Session& s, const fs::path& dir,
                       const std::vector<ConfigNode>& ancestors,
                       const ConfigNode& leaf, const std::string& relpath) {
    EffectiveConfig effective = merge_configs(ancestors, leaf);
    std::vector<std::string> warnings;
    std::vector<ProgramSpec> specs =
        resolve_program_specs(effective, dir, &warnings);
    warn_all(warnings);
    std::vector<ProgramSpec> selected = select_specs(s, specs);

    InterfaceMap map = resolve_interface_map(effective);
    const std::string& cmd = s.inv.command;
    if (cmd == "build")
        s.status = worst(s.status, cmd_build(s, selected, map, dir));
    else if (cmd == "run")
        s.status = worst(s.status, cmd_run(s, selected, map, dir));
    else if (cmd == "validate")
        s.status = worst(s.status, cmd_validate(selected, dir));
    else if (cmd == "diff")
        s.status = worst(s.status, cmd_diff(selected, dir));
    else if (cmd == "prod")
        s.status = worst(s.status, cmd_prod(s, selected, map, dir, relpath));
}

void walk(Session& s, const fs::path& dir,
          std::vector<ConfigNode> ancestors, bool has_own_node,
          const std::string& relpath) {
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(dir, ec);
    std::string key = (ec ? dir : canon).string();
    if (!s.visited.insert(key).second)
        return;

    ConfigNode leaf;
    if (has_own_node)
        leaf = parse_ovalfile_at(dir / "OvalFile");
    warn_all(leaf.warnings);
    process_directory(s, dir, ancestors, leaf, relpath);

    if (s.inv.no_recurse)
        return;
    if (has_own_node)
        ancestors.push_back(leaf);

    std::vector<fs::path> children;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_directory() && has_ovalfile(entry.path()))
            children.push_back(entry.path());
    }
    std::sort(children.begin(), children.end());
    for (const auto& child : children) {
        std::string child_rel =
            relpath == "." ? child.filename().string()
                           : relpath + "/" + child.filename().string();
        walk(s, child, ancestors, true, child_rel);
    }
}

int run_builtin(Session& s, const std::vector<ConfigNode>& chain_nodes,
                bool start_has_node, const EffectiveConfig& start_effective) {
    std::vector<ConfigNode> ancestors;
    ancestors.push_back(s.site_node);
    for (size_t i = 0; i + (start_has_node ? 1 : 0) < chain_nodes.size(); ++i)
        ancestors.push_back(chain_nodes[i]);

    walk(s, s.inv.start_dir, ancestors, start_has_node, ".");

    for (const auto& t : s.inv.targets) {
        if (!s.matched_targets.count(t)) {
            std::cerr << "oval: error: target \"" << t
                      << "\" is not declared in any OvalFile\n";
            s.status = 2;
        }
    }
    s.summary.exit_status = s.status;
    if (s.inv.command == "prod")
        notify_watchers(s.summary, start_effective);
    return s.status;
}

} // namespace

std::string SessionSummary::to_text() const {
    std::string out;
    for (const auto& block : blocks) {
        if (block.relpath != ".")
            out += block.relpath + ":\n";
        for (const auto& line : block.lines)
            out += line + "\n";
    }
    return out;
}

std::vector<SiteCommand>
discover_site_commands(const SiteContext& ctx,
                       std::vector<std::string>* warnings) {
    std::vector<SiteCommand> out;
    if (!ctx.has_site())
        return out;
    std::vector<fs::path> dirs;
    dirs.push_back(ctx.site_dir() / ctx.version / "Commands");
    if (ctx.flavor)
        dirs.push_back(ctx.site_dir() / *ctx.flavor / "Commands");
    dirs.push_back(ctx.site_dir() / "Commands");
    dirs.push_back(ctx.oval_dir / ctx.version / "share" / "Commands");

    for (const auto& dir : dirs) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec))
            continue;
        std::vector<fs::path> entries;
        for (const auto& entry : fs::directory_iterator(dir, ec))
            if (entry.is_regular_file())
                entries.push_back(entry.path());
        std::sort(entries.begin(), entries.end());
        for (const auto& p : entries) {
            if (!is_executable_file(p)) {
                if (warnings)
                    warnings->push_back("ignoring non-executable " +
                                        p.string() + " in Commands");
                continue;
            }
            std::string name = p.stem().string();
            bool taken = std::any_of(
                out.begin(), out.end(),
                [&name](const SiteCommand& c) { return c.name == name; });
            if (!taken)
                out.push_back({name, p});
        }
    }
    return out;
}

void notify_watchers(const SessionSummary& summary,
                     const EffectiveConfig& effective) {
    auto instruction = effective.config_value("mail instruction");
    auto watchers = effective.config_value("watchers");
    if (!instruction || !watchers)
        return;
    std::vector<std::string> base = split_ws(*instruction);
    if (base.empty())
        return;
    std::string text = summary.to_text();
    for (const auto& addr : split_ws(*watchers)) {
        std::vector<std::string> argv = base;
        argv.push_back(addr);
        ProcessOptions opts;
        opts.stdin_text = text;
        ProcessResult r = run_process(argv, opts);
        if (r.exit_code != 0)
            warn("mail command failed for " + addr + " (exit " +
                 std::to_string(r.exit_code) + ")");
    }
}

int dispatch(const std::vector<std::string>& args,
             const std::filesystem::path& start_dir) {
    try {
        Invocation inv;
        try {
            inv = parse_args(args, start_dir);
        } catch (const Error& e) {
            std::cerr << "oval: error: " << e.what() << "\n";
            print_usage(std::cerr, {});
            return 2;
        }

        // Version dispatch comes first; only project OvalFiles take part.
        std::vector<fs::path> chain_dirs = ovalfile_chain_dirs(inv.start_dir);
        std::vector<ConfigNode> chain_nodes;
        for (const auto& d : chain_dirs) {
            chain_nodes.push_back(parse_ovalfile_at(d / "OvalFile"));
            if (d != inv.start_dir) // the walk reports the leaf's warnings
                warn_all(chain_nodes.back().warnings);
        }

        std::optional<std::string> file_version;
        for (const auto& node : chain_nodes) {
            for (const auto& d : node.directives) {
                if (const auto* v = std::get_if<VersionDecl>(&d)) {
                    if (!file_version)
                        file_version = v->version;
                    else
                        warn("ignoring <oval version=\"" + v->version +
                             "\"> in " + node.source_path.string() +
                             " (version already set to \"" + *file_version +
                             "\")");
                }
            }
        }

        fs::path oval_dir = env_value(kEnvOvalDir).value_or("");
        bool dispatched = env_value(kEnvDispatchGuard).has_value();
        VersionDecision decision = determine_version(
            std::string(kOvalVersion), env_value(kEnvOvalVersion),
            file_version, oval_dir, kToolName, dispatched);
        if (!decision.run_in_place) {
            std::vector<std::string> argv;
            argv.push_back(decision.delegate_path.string());
            argv.insert(argv.end(), args.begin(), args.end());
            ProcessOptions opts;
            opts.capture_output = false;
            opts.env.emplace_back(kEnvDispatchGuard, "1");
            return run_process(argv, opts).exit_code;
        }

        Session session;
        session.inv = inv;
        session.ctx = SiteContext{oval_dir, std::string(kOvalVersion),
                                  env_value(kEnvOvalFlavor)};
        session.site_node = load_site_defaults(session.ctx);
        warn_all(session.site_node.warnings);

        std::vector<std::string> warnings;
        std::vector<SiteCommand> site_cmds =
            discover_site_commands(session.ctx, &warnings);
        warn_all(warnings);

        if (inv.command.empty()) {
            print_usage(std::cerr, site_cmds);
            return 2;
        }

        auto site_it =
            std::find_if(site_cmds.begin(), site_cmds.end(),
                         [&inv](const SiteCommand& c) {
                             return c.name == inv.command;
                         });
        if (site_it != site_cmds.end()) {
            if (is_builtin(inv.command))
                warn("site command " + site_it->path.string() +
                     " overrides the built-in \"" + inv.command + "\"");
            std::vector<std::string> argv;
            argv.push_back(site_it->path.string());
            argv.insert(argv.end(), inv.rest.begin(), inv.rest.end());
            ProcessOptions opts;
            opts.capture_output = false;
            opts.env.emplace_back(kEnvOvalDir, oval_dir.string());
            opts.env.emplace_back(kEnvOvalVersion, session.ctx.version);
            opts.env.emplace_back(kEnvOvalFlavor,
                                  session.ctx.flavor.value_or(""));
            std::vector<std::string> config_files;
            if (auto site_file =
                    resolve_customizable_file("OvalFile", session.ctx))
                config_files.push_back(site_file->string());
            for (const auto& d : chain_dirs)
                config_files.push_back((d / "OvalFile").string());
            opts.env.emplace_back("OVAL_CONFIG_FILES",
                                  join(config_files, ":"));
            return run_process(argv, opts).exit_code;
        }

        if (inv.command == "help") {
            print_usage(std::cout, site_cmds);
            return 0;
        }
        if (!is_builtin(inv.command)) {
            std::cerr << "oval: error: unknown command \"" << inv.command
                      << "\"\n";
            print_usage(std::cerr, site_cmds);
            return 2;
        }

        bool start_has_node = !chain_dirs.empty() &&
                              chain_dirs.back() == inv.start_dir;
        std::vector<ConfigNode> all_nodes;
        all_nodes.push_back(session.site_node);
        all_nodes.insert(all_nodes.end(), chain_nodes.begin(),
                         chain_nodes.end());
        EffectiveConfig start_effective = merge_configs(all_nodes, ConfigNode{});
        apply_command_options(session.inv, start_effective);

        return run_builtin(session, chain_nodes, start_has_node,
                           start_effective);
    } catch (const Error& e) {
        std::cerr << "oval: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "oval: error: " << e.what() << "\n";
        return 2;
    }
}

int dispatch(int argc, char* argv[]) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::error_code ec;
    fs::path cwd = fs::current_path(ec);
    if (ec) {
        std::cerr << "oval: error: cannot determine the current directory\n";
        return 2;
    }
    return dispatch(args, cwd);
}

} // namespace oval
