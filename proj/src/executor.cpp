// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/executor.hpp"

#include "oval/util.hpp"

#include <filesystem>
#include <system_error>

namespace oval {

std::filesystem::path log_path(const ProgramSpec& spec,
                               const std::filesystem::path& workdir) {
    return workdir / (spec.log_basename + ".log");
}

std::filesystem::path ref_path(const ProgramSpec& spec,
                               const std::filesystem::path& workdir) {
    return workdir / (spec.log_basename + ".ref");
}

std::vector<std::string> wrap_header_value(const std::string& name,
                                           const std::string& value) {
    std::string whole = name + " = " + value;
    if (whole.size() <= kHeaderWrapWidth)
        return {whole};

    std::vector<std::string> lines = {name + " ="};
    auto emit = [&lines](std::string text) {
        // One-space continuation indent; oversize chunks are hard-split.
        while (text.size() > kHeaderWrapWidth - 1) {
            lines.push_back(" " + text.substr(0, kHeaderWrapWidth - 1));
            text = text.substr(kHeaderWrapWidth - 1);
        }
        lines.push_back(" " + text);
    };

    if (value.find(':') != std::string::npos) {
        // Path-list value: one component per line, the separator leading
        // each continuation and the first component padded into its column.
        size_t pos = 0;
        bool first = true;
        while (pos <= value.size()) {
            size_t sep = value.find(':', first ? pos : pos + 1);
            std::string comp = value.substr(pos, sep == std::string::npos
                                                     ? std::string::npos
                                                     : sep - pos);
            emit(first ? " " + comp : comp);
            first = false;
            if (sep == std::string::npos)
                break;
            pos = sep;
        }
    } else {
        emit(" " + value);
    }
    return lines;
}

std::vector<std::string> run_header_lines(const ProgramSpec& spec) {
    std::vector<std::string> lines;
    for (const auto& [name, value] : spec.variables) {
        auto wrapped = wrap_header_value(name, value);
        lines.insert(lines.end(), wrapped.begin(), wrapped.end());
    }
    for (const auto& aux : spec.aux_files) {
        const std::string& filename = aux.first;
        lines.push_back(filename + ":");
        std::string content = assemble_aux_file(filename, spec);
        if (!content.empty() && content.back() == '\n')
            content.pop_back();
        for (const auto& line : split_lines(content))
            lines.push_back("  " + line);
    }
    return lines;
}

std::string reformat_build_output(std::string_view raw) {
    if (raw.empty())
        return {};
    std::vector<std::string> out;
    for (const auto& line : split_lines(raw)) {
        // Collapse blank runs, drop trailing blanks.
        std::string collapsed;
        bool in_blank = false;
        for (char c : line) {
            if (c == ' ' || c == '\t') {
                in_blank = true;
                continue;
            }
            if (in_blank && !collapsed.empty())
                collapsed += ' ';
            in_blank = false;
            collapsed += c;
        }
        if (collapsed.size() <= kHeaderWrapWidth) {
            out.push_back(std::move(collapsed));
            continue;
        }
        std::vector<std::string> tokens = split_ws(collapsed);
        std::string cur;
        for (const auto& tok : tokens) {
            if (cur.empty()) {
                cur = tok;
            } else if (cur.size() + 1 + tok.size() <= kHeaderWrapWidth) {
                cur += ' ';
                cur += tok;
            } else {
                out.push_back(cur);
                cur = "  " + tok;
            }
        }
        out.push_back(cur);
    }
    return join(out, "\n") + "\n";
}

PhaseStatus do_build(const ProgramSpec& spec, const ToolAdapter& build_tool,
                     const std::filesystem::path& workdir) {
    if (spec.kind != ProgramKind::source)
        return PhaseStatus::skipped;

    BuildResult result = adapter_build(build_tool, spec, workdir);

    LogSection section;
    section.kind = SectionKind::build;
    section.header_lines = {result.command_line};
    section.body = reformat_build_output(result.output);
    truncate_with_section(log_path(spec, workdir), section);

    return result.exit_status == 0 ? PhaseStatus::ok : PhaseStatus::failed;
}

PhaseStatus do_run(const ProgramSpec& spec, const ToolAdapter& run_tool,
                   const std::filesystem::path& workdir,
                   std::vector<std::filesystem::path>* written_aux) {
    LogSection section;
    section.kind = SectionKind::run;
    section.header_lines = run_header_lines(spec);

    for (const auto& aux : spec.aux_files) {
        const std::string& filename = aux.first;
        try {
            write_file(workdir / filename, assemble_aux_file(filename, spec));
            if (written_aux)
                written_aux->push_back(workdir / filename);
        } catch (const Error& e) {
            section.body =
                std::string("oval: cannot write auxiliary file: ") + e.what() +
                "\n";
            append_section(log_path(spec, workdir), section);
            return PhaseStatus::failed;
        }
    }

    RunResult result = adapter_run(run_tool, spec, workdir);
    section.body = result.output;
    append_section(log_path(spec, workdir), section);
    return result.exit_status == 0 ? PhaseStatus::ok : PhaseStatus::failed;
}

void do_validate(const ProgramSpec& spec,
                 const std::filesystem::path& workdir) {
    std::filesystem::path log = log_path(spec, workdir);
    if (!std::filesystem::exists(log))
        throw Error("nothing to validate for \"" + spec.log_basename +
                    "\" (expected " + log.string() + ")");
    std::error_code ec;
    std::filesystem::copy_file(
        log, ref_path(spec, workdir),
        std::filesystem::copy_options::overwrite_existing, ec);
    if (ec)
        throw Error("cannot write " + ref_path(spec, workdir).string() + ": " +
                    ec.message());
}

} // namespace oval
