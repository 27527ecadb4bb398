// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oval/adapters.hpp"
#include "oval/util.hpp"

#include "test_support.hpp"

using namespace oval;
using ovtest::TempDir;

namespace {

EffectiveConfig config_with(const std::string& text) {
    return merge_configs({}, parse_ovalfile(text, "OvalFile"));
}

ProgramSpec source_spec(const std::string& target) {
    ProgramSpec spec;
    spec.target = target;
    spec.kind = ProgramKind::source;
    spec.log_basename = target_stem(target);
    return spec;
}

} // namespace

TEST_CASE("interface map defaults to make and oval") {
    InterfaceMap map = resolve_interface_map(config_with(""));
    CHECK(map.build_tool == "make");
    CHECK(map.run_tool == "oval");
}

TEST_CASE("interface map honors both config entries") {
    InterfaceMap map = resolve_interface_map(
        config_with("<config name=\"build tool\" value=\"scram\">\n"
                    "<config name=\"run tool\" value=\"scram\">\n"));
    CHECK(map.build_tool == "scram");
    CHECK(map.run_tool == "scram");
}

TEST_CASE("partial override keeps the other default") {
    InterfaceMap map = resolve_interface_map(
        config_with("<config name=\"run tool\" value=\"scram\">\n"));
    CHECK(map.build_tool == "make");
    CHECK(map.run_tool == "scram");
}

TEST_CASE("flavor-scoped adapter is only visible with that flavor") {
    TempDir tree;
    ovtest::write_executable(tree / "site/salty/Interfaces/cmt",
                             "#!/bin/sh\nexit 0\n");
    SiteContext salty{tree.path(), "3_0_0", "salty"};
    ToolAdapter adapter = discover_adapter("cmt", salty);
    CHECK(adapter.location == tree.path() / "site" / "salty" / "Interfaces" /
                                  "cmt");

    SiteContext plain{tree.path(), "3_0_0", std::nullopt};
    CHECK_THROWS_AS(discover_adapter("cmt", plain), Error);
}

TEST_CASE("version-scoped site adapter hides the built-in") {
    TempDir tree;
    ovtest::write_executable(tree / "site/3_0_0/Interfaces/make",
                             "#!/bin/sh\nexit 0\n");
    SiteContext ctx{tree.path(), "3_0_0", std::nullopt};
    ToolAdapter adapter = discover_adapter("make", ctx);
    REQUIRE_FALSE(adapter.builtin());
    CHECK(*adapter.location ==
          tree.path() / "site" / "3_0_0" / "Interfaces" / "make");

    SiteContext other{tree.path(), "2_0_0", std::nullopt};
    CHECK(discover_adapter("make", other).builtin());
}

TEST_CASE("unknown tool is fatal and lists the probed paths") {
    TempDir tree;
    SiteContext ctx{tree.path(), "3_0_0", std::nullopt};
    try {
        discover_adapter("nonexistent", ctx);
        FAIL("expected an error");
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("nonexistent") != std::string::npos);
        CHECK(msg.find((tree.path() / "site" / "Interfaces" / "nonexistent")
                           .string()) != std::string::npos);
    }
}

TEST_CASE("discovery is stable across probes") {
    TempDir tree;
    ovtest::write_executable(tree / "site/Interfaces/thing",
                             "#!/bin/sh\nexit 0\n");
    SiteContext ctx{tree.path(), "3_0_0", std::nullopt};
    ToolAdapter a = discover_adapter("thing", ctx);
    ToolAdapter b = discover_adapter("thing", ctx);
    CHECK(a.location == b.location);
    CHECK(a.name == b.name);
}

TEST_CASE("built-in interface support") {
    ToolAdapter oval_builtin{"oval", std::nullopt};
    CHECK(oval_builtin.supports(ToolInterface::build));
    CHECK(oval_builtin.supports(ToolInterface::run));
    ToolAdapter make_builtin{"make", std::nullopt};
    CHECK(make_builtin.supports(ToolInterface::build));
    CHECK_FALSE(make_builtin.supports(ToolInterface::run));
}

TEST_CASE("built-in make delegates as `make <stem>`") {
    TempDir dir;
    ovtest::write(dir / "Makefile",
                  "Electrons:\n\t@echo built Electrons\n");
    BuildResult r = adapter_build({"make", std::nullopt},
                                  source_spec("Electrons.cpp"), dir.path());
    CHECK(r.command_line == "make Electrons");
    CHECK(r.exit_status == 0);
    CHECK(r.output.find("built Electrons") != std::string::npos);
}

TEST_CASE("built-in oval build is a successful no-op") {
    TempDir dir;
    BuildResult r = adapter_build({"oval", std::nullopt},
                                  source_spec("Electrons.cpp"), dir.path());
    CHECK(r.exit_status == 0);
    CHECK(r.output.empty());
}

TEST_CASE("external adapter failures are reported, not thrown") {
    TempDir dir;
    ovtest::write_executable(dir / "adapter",
                             "#!/bin/sh\necho no rule\nexit 2\n");
    ToolAdapter adapter{"custom", dir / "adapter"};
    BuildResult r = adapter_build(adapter, source_spec("X.cpp"), dir.path());
    CHECK(r.exit_status == 2);
    CHECK(r.output == "no rule\n");
    CHECK(r.command_line ==
          (dir / "adapter").string() + " build X");
}

TEST_CASE("external adapter sees the protocol argv for run") {
    TempDir dir;
    ovtest::write_executable(dir / "adapter", "#!/bin/sh\necho \"$@\"\n");
    ProgramSpec spec = source_spec("Electrons.cpp");
    spec.args = {"-geo", "detailed"};
    RunResult r = adapter_run({"custom", dir / "adapter"}, spec, dir.path());
    CHECK(r.exit_status == 0);
    CHECK(r.output == "run Electrons -geo detailed\n");
}

TEST_CASE("built-in run launches the program with its arguments") {
    TempDir dir;
    ovtest::write_executable(dir / "Electrons",
                             "#!/bin/sh\necho \"argv: $@\"\n");
    ProgramSpec spec = source_spec("Electrons.cpp");
    spec.args = {"-geo", "detailed"};
    RunResult r = adapter_run({"oval", std::nullopt}, spec, dir.path());
    CHECK(r.exit_status == 0);
    CHECK(r.output == "argv: -geo detailed\n");
}

TEST_CASE("a silent program yields empty output and status zero") {
    TempDir dir;
    ovtest::write_executable(dir / "Quiet", "#!/bin/sh\nexit 0\n");
    RunResult r =
        adapter_run({"oval", std::nullopt}, source_spec("Quiet.cpp"),
                    dir.path());
    CHECK(r.exit_status == 0);
    CHECK(r.output.empty());
}

TEST_CASE("spec variables reach the child and beat ambient values") {
    TempDir dir;
    ovtest::write_executable(
        dir / "EchoVars",
        "#!/bin/sh\necho \"FEDERATION=$FEDERATION\"\n"
        "echo \"OVAL_TARGET=$OVAL_TARGET\"\n"
        "echo \"OVAL_ENVIRONMENT=$OVAL_ENVIRONMENT\"\n");
    ::setenv("FEDERATION", "ambient", 1);
    ProgramSpec spec = source_spec("EchoVars.cpp");
    spec.variables = {{"FEDERATION", "cmsuf01"}};
    spec.environment = "pt15";
    RunResult r = adapter_run({"oval", std::nullopt}, spec, dir.path());
    ::unsetenv("FEDERATION");
    CHECK(r.output == "FEDERATION=cmsuf01\n"
                      "OVAL_TARGET=EchoVars.cpp\n"
                      "OVAL_ENVIRONMENT=pt15\n");
}

TEST_CASE("scripts run as themselves, not as the stem") {
    TempDir dir;
    ovtest::write_executable(dir / "check.sh", "#!/bin/sh\necho from-script\n");
    ProgramSpec spec;
    spec.target = "check.sh";
    spec.kind = ProgramKind::script;
    spec.log_basename = "check";
    RunResult r = adapter_run({"oval", std::nullopt}, spec, dir.path());
    CHECK(r.output == "from-script\n");
}

TEST_CASE("a missing executable is a recorded failure") {
    TempDir dir;
    RunResult r = adapter_run({"oval", std::nullopt},
                              source_spec("Ghost.cpp"), dir.path());
    CHECK(r.exit_status != 0);
    CHECK(r.output.find("Ghost") != std::string::npos);
}

TEST_CASE("built-in make cannot serve the run interface") {
    TempDir dir;
    CHECK_THROWS_AS(adapter_run({"make", std::nullopt},
                                source_spec("X.cpp"), dir.path()),
                    Error);
}
