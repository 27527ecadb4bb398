// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0
//
// The OvalFile configuration model: parsing, hierarchical merging, and
// resolution into runnable program specifications.
//
// OvalFiles are read by a lenient line-oriented tag reader, not a strict
// XML parser. A tag opens with `<name` and closes at the matching `>`,
// possibly on a later line. `<environment>` and `<file>` are block tags;
// `<file>` content is captured verbatim (no tag interpretation inside).
// Everything else is a self-contained directive. Unknown tags are skipped
// with a warning.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace oval {

struct ProgramDecl {
    std::string name;
    std::vector<std::string> args; // pre-split on blanks
    bool operator==(const ProgramDecl&) const = default;
};

struct VarDecl {
    std::string name;
    std::string value;
    bool operator==(const VarDecl&) const = default;
};

// One <file> block. `content` is the dedented text between the tags,
// without a trailing newline.
struct AuxFilePart {
    std::string filename;
    std::string content;
    bool operator==(const AuxFilePart&) const = default;
};

struct LineRule {
    std::string pattern;
    bool operator==(const LineRule&) const = default;
};

struct NumberRule {
    std::string pattern; // exactly one capture group
    double tolerance_percent = 0;
    bool operator==(const NumberRule&) const = default;
};

struct OptionsDecl {
    std::string command;
    std::string value;
    bool operator==(const OptionsDecl&) const = default;
};

struct ConfigDecl {
    std::string name;
    std::string value;
    bool operator==(const ConfigDecl&) const = default;
};

struct VersionDecl {
    std::string version;
    bool operator==(const VersionDecl&) const = default;
};

using Directive = std::variant<ProgramDecl, VarDecl, AuxFilePart, LineRule,
                               NumberRule, OptionsDecl, ConfigDecl, VersionDecl>;

struct EnvironmentBlock {
    std::string name;
    std::vector<Directive> directives;
    bool operator==(const EnvironmentBlock&) const = default;
};

// One parsed OvalFile. Directive order is preserved exactly as written;
// environment names are unique within the file.
struct ConfigNode {
    std::filesystem::path source_path;
    std::vector<Directive> directives;
    std::vector<EnvironmentBlock> environments;
    std::vector<std::string> warnings; // collected while parsing

    bool same_model(const ConfigNode& other) const {
        return directives == other.directives &&
               environments == other.environments;
    }
};

// Throws oval::Error with file:line context; the parse fails atomically.
ConfigNode parse_ovalfile(std::string_view text,
                          const std::filesystem::path& path);
ConfigNode parse_ovalfile_at(const std::filesystem::path& path);

// Canonical writer; parse(to_ovalfile_text(n)) reproduces n's model.
std::string to_ovalfile_text(const ConfigNode& node);

struct ComparisonRule {
    enum class Kind { line, number };
    Kind kind = Kind::line;
    std::string pattern;
    double tolerance_percent = 0; // number rules only
    bool operator==(const ComparisonRule&) const = default;
};

enum class ProgramKind { source, script, binary };

// One runnable occurrence of a test program, with everything it sees.
struct ProgramSpec {
    std::string target;
    ProgramKind kind = ProgramKind::source;
    std::vector<std::string> args;
    std::optional<std::string> environment;
    int occurrence_index = 1; // 1-based among occurrences of this target
    std::vector<std::pair<std::string, std::string>> variables; // ordered, names unique
    std::vector<std::pair<std::string, std::vector<std::string>>> aux_files; // name -> parts
    std::vector<ComparisonRule> rules;
    std::string log_basename; // unique within one directory
};

// Filename without its final extension (".orcarc" has none and is kept whole).
std::string target_stem(const std::string& target);

// Merged view of a chain of OvalFiles. Directive lists concatenate
// root-to-leaf; same-named environments merge their directive lists in the
// same order. Scalar lookups resolve nearest-wins (last occurrence).
struct EffectiveConfig {
    std::vector<Directive> directives;
    std::vector<EnvironmentBlock> environments;

    std::optional<std::string> config_value(std::string_view name) const;
    std::optional<std::string> options_value(std::string_view command) const;
    std::optional<std::string> version() const;
};

EffectiveConfig merge_configs(const std::vector<ConfigNode>& ancestors,
                              const ConfigNode& leaf);

// One ProgramSpec per ProgramDecl occurrence. Top-level declarations see
// only top-level variables/rules/aux parts; environment-scoped ones
// additionally see that environment's directives, with variables following
// outer-then-inner override. `dir` is probed to classify targets.
std::vector<ProgramSpec>
resolve_program_specs(const EffectiveConfig& cfg,
                      const std::filesystem::path& dir,
                      std::vector<std::string>* warnings = nullptr);

// Concatenates the parts registered for `filename`, one newline between
// parts, trailing newline guaranteed. The filename must be present.
std::string assemble_aux_file(const std::string& filename,
                              const ProgramSpec& spec);

} // namespace oval
