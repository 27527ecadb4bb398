// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#include "oval/config_model.hpp"

#include "oval/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace oval {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line,
                       const std::string& msg) {
    throw Error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == ':' ||
           c == '.';
}

struct TagAttr {
    std::string name;
    std::string value;
};

struct RawTag {
    std::string name;
    bool closing = false;
    std::vector<TagAttr> attrs;
    int line = 1;

    const std::string* attr(std::string_view n) const {
        for (const auto& a : attrs)
            if (a.name == n)
                return &a.value;
        return nullptr;
    }
};

// Character-level scanner over an OvalFile. Tracks line numbers and knows
// how to capture verbatim block content for <file>.
class TagScanner {
public:
    TagScanner(std::string_view text, const std::filesystem::path& path)
        : text_(text), path_(path) {}

    int line() const { return line_; }
    const std::filesystem::path& path() const { return path_; }

    // Next tag in the stream; text between tags is ignored.
    std::optional<RawTag> next() {
        while (!eof() && peek() != '<')
            advance();
        if (eof())
            return std::nullopt;
        return read_tag();
    }

    // Verbatim lines following the current position, up to a line whose
    // trimmed content is </name>. Consumes the closing line.
    std::vector<std::string> block_content(const std::string& name,
                                           int open_line) {
        const std::string closer = "</" + name + ">";
        std::vector<std::string> lines;

        // Remainder of the opening tag's line may carry inline content.
        std::string rest = read_rest_of_line();
        if (auto at = rest.find(closer); at != std::string::npos) {
            std::string before = rest.substr(0, at);
            if (!trim(before).empty())
                lines.push_back(before);
            return lines;
        }
        if (!trim(rest).empty())
            lines.push_back(rest);

        while (!eof()) {
            std::string l = read_rest_of_line();
            if (trim(l) == closer)
                return lines;
            lines.push_back(std::move(l));
        }
        fail(path_, open_line,
             "unterminated block tag <" + name + "> (missing " + closer + ")");
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n')
            ++line_;
        ++pos_;
    }

    // Consumes up to and including the next newline; returns the text
    // before it with any '\r' stripped.
    std::string read_rest_of_line() {
        std::string out;
        while (!eof() && peek() != '\n') {
            out += peek();
            advance();
        }
        if (!eof())
            advance();
        if (!out.empty() && out.back() == '\r')
            out.pop_back();
        return out;
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                          peek() == '\r'))
            advance();
    }

    RawTag read_tag() {
        RawTag tag;
        tag.line = line_;
        advance(); // '<'
        if (!eof() && peek() == '/') {
            tag.closing = true;
            advance();
        }
        if (eof() || !is_name_start(peek()))
            fail(path_, tag.line, "malformed tag: expected a tag name after '<'");
        while (!eof() && is_name_char(peek())) {
            tag.name += peek();
            advance();
        }
        // Attributes until the matching '>'.
        for (;;) {
            skip_ws();
            if (eof())
                fail(path_, tag.line, "unterminated tag <" + tag.name +
                                          ">: no closing '>' before end of file");
            char c = peek();
            if (c == '>') {
                advance();
                return tag;
            }
            if (c == '/') {
                advance();
                skip_ws();
                if (!eof() && peek() == '>') {
                    advance();
                    return tag;
                }
                fail(path_, tag.line, "malformed tag <" + tag.name + ">");
            }
            if (c == '<')
                fail(path_, tag.line, "malformed tag <" + tag.name +
                                          ">: '<' before the closing '>'");
            if (!is_name_start(c))
                fail(path_, tag.line, "malformed tag <" + tag.name +
                                          ">: unexpected character '" +
                                          std::string(1, c) + "'");
            TagAttr attr;
            while (!eof() && is_name_char(peek())) {
                attr.name += peek();
                advance();
            }
            skip_ws();
            if (!eof() && peek() == '=') {
                advance();
                skip_ws();
                if (eof())
                    fail(path_, tag.line,
                         "unterminated tag <" + tag.name +
                             ">: no closing '>' before end of file");
                if (peek() == '"') {
                    advance();
                    while (!eof() && peek() != '"') {
                        attr.value += peek();
                        advance();
                    }
                    if (eof())
                        fail(path_, tag.line,
                             "unterminated tag <" + tag.name +
                                 ">: attribute value never closed");
                    advance(); // closing quote
                } else {
                    while (!eof() && peek() != ' ' && peek() != '\t' &&
                           peek() != '\n' && peek() != '\r' && peek() != '>' &&
                           peek() != '<') {
                        attr.value += peek();
                        advance();
                    }
                }
            }
            tag.attrs.push_back(std::move(attr));
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    std::filesystem::path path_;
};

const std::string& required_attr(const RawTag& tag, std::string_view name,
                                 const std::filesystem::path& path) {
    if (const std::string* v = tag.attr(name))
        return *v;
    fail(path, tag.line, "<" + tag.name + "> requires a \"" +
                             std::string(name) + "\" attribute");
}

// The supported dialect is the portable ECMAScript subset; PERL-only
// constructs are rejected here so the failure names the pattern instead of
// surfacing later as an obscure engine error.
size_t validate_pattern(const std::string& pattern,
                        const std::filesystem::path& path, int line) {
    for (std::string_view bad : {"(?<", "(?R", "(?P", "(?'"}) {
        if (pattern.find(bad) != std::string::npos)
            fail(path, line, "unsupported regular-expression construct \"" +
                                 std::string(bad) + "\" in \"" + pattern +
                                 "\"");
    }
    try {
        std::regex re(pattern, std::regex::ECMAScript);
        return re.mark_count();
    } catch (const std::regex_error& e) {
        fail(path, line,
             "invalid regular expression \"" + pattern + "\": " + e.what());
    }
}

double parse_tolerance(const std::string& raw,
                       const std::filesystem::path& path, int line) {
    std::string s(trim(raw));
    if (!s.empty() && s.back() == '%')
        s.pop_back();
    std::optional<double> v = parse_decimal(s);
    if (!v)
        fail(path, line, "invalid tolerance \"" + raw + "\"");
    if (*v < 0)
        fail(path, line, "tolerance must be >= 0, got \"" + raw + "\"");
    return *v;
}

// Strips the longest common leading-whitespace prefix of the non-blank
// lines, then joins with single newlines (no trailing newline).
std::string dedent_join(const std::vector<std::string>& lines) {
    std::string prefix;
    bool first = true;
    for (const auto& l : lines) {
        if (trim(l).empty())
            continue;
        size_t ws = l.find_first_not_of(" \t");
        std::string lead = l.substr(0, ws == std::string::npos ? 0 : ws);
        if (first) {
            prefix = lead;
            first = false;
        } else {
            size_t i = 0;
            while (i < prefix.size() && i < lead.size() && prefix[i] == lead[i])
                ++i;
            prefix.resize(i);
        }
    }
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const auto& l : lines) {
        if (l.rfind(prefix, 0) == 0)
            out.push_back(l.substr(prefix.size()));
        else
            out.emplace_back(trim(l)); // shorter blank line
    }
    return join(out, "\n");
}

Directive make_directive(const RawTag& tag, const std::filesystem::path& path) {
    if (tag.name == "program") {
        ProgramDecl d;
        d.name = required_attr(tag, "name", path);
        if (const std::string* args = tag.attr("args"))
            d.args = split_ws(*args);
        return d;
    }
    if (tag.name == "var") {
        return VarDecl{required_attr(tag, "name", path),
                       required_attr(tag, "value", path)};
    }
    if (tag.name == "diffline") {
        const std::string& expr = required_attr(tag, "expr", path);
        validate_pattern(expr, path, tag.line);
        return LineRule{expr};
    }
    if (tag.name == "diffnumber") {
        const std::string& expr = required_attr(tag, "expr", path);
        size_t groups = validate_pattern(expr, path, tag.line);
        if (groups != 1)
            fail(path, tag.line,
                 "<diffnumber> pattern must contain exactly one capture group "
                 "(found " +
                     std::to_string(groups) + ")");
        double tol =
            parse_tolerance(required_attr(tag, "tolerance", path), path, tag.line);
        return NumberRule{expr, tol};
    }
    if (tag.name == "options") {
        return OptionsDecl{required_attr(tag, "command", path),
                           required_attr(tag, "value", path)};
    }
    if (tag.name == "config") {
        return ConfigDecl{required_attr(tag, "name", path),
                          required_attr(tag, "value", path)};
    }
    if (tag.name == "oval") {
        return VersionDecl{required_attr(tag, "version", path)};
    }
    fail(path, tag.line, "internal: unhandled tag <" + tag.name + ">");
}

bool is_directive_tag(const std::string& name) {
    static const std::set<std::string> known = {
        "program", "var", "diffline", "diffnumber", "options", "config", "oval"};
    return known.count(name) > 0;
}

} // namespace

ConfigNode parse_ovalfile(std::string_view text,
                          const std::filesystem::path& path) {
    ConfigNode node;
    node.source_path = path;
    TagScanner scan(text, path);

    EnvironmentBlock* open_env = nullptr;
    int env_open_line = 0;

    auto warn = [&](int line, const std::string& msg) {
        node.warnings.push_back(path.string() + ":" + std::to_string(line) +
                                ": " + msg);
    };

    while (auto tag = scan.next()) {
        if (tag->closing) {
            if (tag->name == "environment" && open_env != nullptr) {
                open_env = nullptr;
                continue;
            }
            warn(tag->line, "stray closing tag </" + tag->name + "> skipped");
            continue;
        }
        if (tag->name == "environment") {
            if (open_env != nullptr)
                fail(path, tag->line,
                     "nested <environment> blocks are not permitted");
            EnvironmentBlock env;
            env.name = required_attr(*tag, "name", path);
            for (const auto& existing : node.environments)
                if (existing.name == env.name)
                    fail(path, tag->line,
                         "duplicate environment name \"" + env.name + "\"");
            node.environments.push_back(std::move(env));
            open_env = &node.environments.back();
            env_open_line = tag->line;
            continue;
        }
        if (tag->name == "file") {
            AuxFilePart part;
            part.filename = required_attr(*tag, "name", path);
            part.content = dedent_join(scan.block_content("file", tag->line));
            if (open_env)
                open_env->directives.emplace_back(std::move(part));
            else
                node.directives.emplace_back(std::move(part));
            continue;
        }
        if (!is_directive_tag(tag->name)) {
            warn(tag->line, "unknown tag <" + tag->name + "> skipped");
            continue;
        }
        Directive d = make_directive(*tag, path);
        if (open_env)
            open_env->directives.push_back(std::move(d));
        else
            node.directives.push_back(std::move(d));
    }

    if (open_env != nullptr)
        fail(path, env_open_line,
             "unterminated block tag <environment> (missing </environment>)");
    return node;
}

ConfigNode parse_ovalfile_at(const std::filesystem::path& path) {
    return parse_ovalfile(read_file(path), path);
}

namespace {

std::string quote_attr(const std::string& v) { return "\"" + v + "\""; }

void write_directive(std::ostringstream& os, const Directive& d) {
    if (const auto* p = std::get_if<ProgramDecl>(&d)) {
        os << "<program name=" << quote_attr(p->name);
        if (!p->args.empty())
            os << " args=" << quote_attr(join(p->args, " "));
        os << ">\n";
    } else if (const auto* v = std::get_if<VarDecl>(&d)) {
        os << "<var name=" << quote_attr(v->name) << " value="
           << quote_attr(v->value) << ">\n";
    } else if (const auto* f = std::get_if<AuxFilePart>(&d)) {
        os << "<file name=" << quote_attr(f->filename) << ">\n";
        if (!f->content.empty())
            os << f->content << "\n";
        os << "</file>\n";
    } else if (const auto* l = std::get_if<LineRule>(&d)) {
        os << "<diffline expr=" << quote_attr(l->pattern) << ">\n";
    } else if (const auto* n = std::get_if<NumberRule>(&d)) {
        os << "<diffnumber expr=" << quote_attr(n->pattern) << " tolerance="
           << quote_attr(format_decimal(n->tolerance_percent) + "%") << ">\n";
    } else if (const auto* o = std::get_if<OptionsDecl>(&d)) {
        os << "<options command=" << quote_attr(o->command) << " value="
           << quote_attr(o->value) << ">\n";
    } else if (const auto* c = std::get_if<ConfigDecl>(&d)) {
        os << "<config name=" << quote_attr(c->name) << " value="
           << quote_attr(c->value) << ">\n";
    } else if (const auto* ver = std::get_if<VersionDecl>(&d)) {
        os << "<oval version=" << quote_attr(ver->version) << ">\n";
    }
}

} // namespace

std::string to_ovalfile_text(const ConfigNode& node) {
    std::ostringstream os;
    for (const auto& d : node.directives)
        write_directive(os, d);
    for (const auto& env : node.environments) {
        os << "<environment name=" << quote_attr(env.name) << ">\n";
        for (const auto& d : env.directives)
            write_directive(os, d);
        os << "</environment>\n";
    }
    return os.str();
}

std::string target_stem(const std::string& target) {
    return std::filesystem::path(target).stem().string();
}

std::optional<std::string>
EffectiveConfig::config_value(std::string_view name) const {
    std::optional<std::string> out;
    for (const auto& d : directives)
        if (const auto* c = std::get_if<ConfigDecl>(&d))
            if (c->name == name)
                out = c->value; // nearest wins
    return out;
}

std::optional<std::string>
EffectiveConfig::options_value(std::string_view command) const {
    std::optional<std::string> out;
    for (const auto& d : directives)
        if (const auto* o = std::get_if<OptionsDecl>(&d))
            if (o->command == command)
                out = o->value;
    return out;
}

std::optional<std::string> EffectiveConfig::version() const {
    std::optional<std::string> out;
    for (const auto& d : directives)
        if (const auto* v = std::get_if<VersionDecl>(&d))
            out = v->version;
    return out;
}

EffectiveConfig merge_configs(const std::vector<ConfigNode>& ancestors,
                              const ConfigNode& leaf) {
    EffectiveConfig out;
    auto absorb = [&out](const ConfigNode& node) {
        out.directives.insert(out.directives.end(), node.directives.begin(),
                              node.directives.end());
        for (const auto& env : node.environments) {
            auto it = std::find_if(
                out.environments.begin(), out.environments.end(),
                [&env](const EnvironmentBlock& e) { return e.name == env.name; });
            if (it == out.environments.end()) {
                out.environments.push_back(env);
            } else {
                it->directives.insert(it->directives.end(),
                                      env.directives.begin(),
                                      env.directives.end());
            }
        }
    };
    for (const auto& node : ancestors)
        absorb(node);
    absorb(leaf);
    return out;
}

namespace {

using VarList = std::vector<std::pair<std::string, std::string>>;
using AuxList = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Override in place: the name keeps its first position, the value is the
// most recent one.
void set_var(VarList& vars, const std::string& name, const std::string& value) {
    for (auto& [n, v] : vars) {
        if (n == name) {
            v = value;
            return;
        }
    }
    vars.emplace_back(name, value);
}

void add_aux_part(AuxList& aux, const std::string& filename,
                  const std::string& content) {
    for (auto& [f, parts] : aux) {
        if (f == filename) {
            parts.push_back(content);
            return;
        }
    }
    aux.push_back({filename, {content}});
}

struct ScopeView {
    VarList vars;
    AuxList aux;
    std::vector<ComparisonRule> rules;
};

void absorb_scope(ScopeView& scope, const std::vector<Directive>& directives) {
    for (const auto& d : directives) {
        if (const auto* v = std::get_if<VarDecl>(&d))
            set_var(scope.vars, v->name, v->value);
        else if (const auto* f = std::get_if<AuxFilePart>(&d))
            add_aux_part(scope.aux, f->filename, f->content);
        else if (const auto* l = std::get_if<LineRule>(&d))
            scope.rules.push_back({ComparisonRule::Kind::line, l->pattern, 0});
        else if (const auto* n = std::get_if<NumberRule>(&d))
            scope.rules.push_back(
                {ComparisonRule::Kind::number, n->pattern, n->tolerance_percent});
    }
}

bool is_source_extension(const std::string& ext) {
    static const std::set<std::string> exts = {".cpp", ".cc", ".c",
                                               ".cxx", ".C",  ".f"};
    return exts.count(ext) > 0;
}

ProgramKind classify_target(const std::string& target,
                            const std::filesystem::path& dir,
                            std::vector<std::string>* warnings) {
    std::string ext = std::filesystem::path(target).extension().string();
    if (is_source_extension(ext))
        return ProgramKind::source;
    std::filesystem::path p = dir / target;
    if (is_executable_file(p)) {
        std::ifstream in(p, std::ios::binary);
        char sig[2] = {0, 0};
        in.read(sig, 2);
        if (in.gcount() == 2 && sig[0] == '#' && sig[1] == '!')
            return ProgramKind::script;
        return ProgramKind::binary;
    }
    if (warnings)
        warnings->push_back("cannot classify \"" + target +
                            "\" (no known source extension, no executable "
                            "file); assuming source");
    return ProgramKind::source;
}

} // namespace

std::vector<ProgramSpec>
resolve_program_specs(const EffectiveConfig& cfg,
                      const std::filesystem::path& dir,
                      std::vector<std::string>* warnings) {
    ScopeView top;
    absorb_scope(top, cfg.directives);

    std::vector<ProgramSpec> specs;
    auto emit = [&](const ProgramDecl& decl, const ScopeView& scope,
                    const std::optional<std::string>& env) {
        ProgramSpec spec;
        spec.target = decl.name;
        spec.args = decl.args;
        spec.environment = env;
        spec.kind = classify_target(decl.name, dir, warnings);
        spec.variables = scope.vars;
        spec.aux_files = scope.aux;
        spec.rules = scope.rules;
        specs.push_back(std::move(spec));
    };

    for (const auto& d : cfg.directives)
        if (const auto* p = std::get_if<ProgramDecl>(&d))
            emit(*p, top, std::nullopt);

    for (const auto& env : cfg.environments) {
        ScopeView scoped = top;
        absorb_scope(scoped, env.directives);
        for (const auto& d : env.directives)
            if (const auto* p = std::get_if<ProgramDecl>(&d))
                emit(*p, scoped, env.name);
    }

    // Occurrence index: 1-based per target, in resolution order.
    std::map<std::string, int> seen;
    for (auto& spec : specs)
        spec.occurrence_index = ++seen[spec.target];

    // Log basenames: plain stem when unique; colliding stems take the
    // environment suffix, then the occurrence index if still ambiguous.
    std::map<std::string, int> stem_count;
    for (auto& spec : specs)
        ++stem_count[target_stem(spec.target)];
    std::map<std::string, int> cand_count;
    std::vector<std::string> cands;
    for (auto& spec : specs) {
        std::string stem = target_stem(spec.target);
        std::string cand = stem;
        if (stem_count[stem] > 1 && spec.environment)
            cand += "." + *spec.environment;
        cands.push_back(cand);
        ++cand_count[cand];
    }
    std::set<std::string> taken;
    for (size_t i = 0; i < specs.size(); ++i) {
        std::string base = cands[i];
        if (cand_count[base] > 1)
            base += "." + std::to_string(specs[i].occurrence_index);
        while (taken.count(base))
            base += "." + std::to_string(i + 1);
        taken.insert(base);
        specs[i].log_basename = base;
    }
    return specs;
}

std::string assemble_aux_file(const std::string& filename,
                              const ProgramSpec& spec) {
    for (const auto& [name, parts] : spec.aux_files) {
        if (name == filename)
            return join(parts, "\n") + "\n";
    }
    throw Error("no auxiliary-file parts registered for \"" + filename +
                "\" in program \"" + spec.target + "\"");
}

} // namespace oval
