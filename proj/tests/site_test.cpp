// Copyright 2026 The Oval Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oval/site.hpp"
#include "oval/util.hpp"

#include "test_support.hpp"

using namespace oval;
using ovtest::TempDir;

namespace {

SiteContext make_ctx(const std::filesystem::path& oval_dir,
                     const std::string& version = "3_0_0",
                     std::optional<std::string> flavor = std::nullopt) {
    return SiteContext{oval_dir, version, std::move(flavor)};
}

} // namespace

TEST_CASE("no version requested runs in place") {
    VersionDecision d = determine_version("3_0_0", std::nullopt, std::nullopt,
                                          "/nowhere", "oval", false);
    CHECK(d.run_in_place);
}

TEST_CASE("matching requested version runs in place") {
    VersionDecision d = determine_version("3_0_0", std::string("3_0_0"),
                                          std::nullopt, "/nowhere", "oval",
                                          false);
    CHECK(d.run_in_place);
}

TEST_CASE("ovalfile version delegates to the installed tree") {
    TempDir tree;
    ovtest::write_executable(tree / "2_1_0/bin/oval", "#!/bin/sh\nexit 0\n");
    VersionDecision d =
        determine_version("3_0_0", std::nullopt, std::string("2_1_0"),
                          tree.path(), "oval", false);
    REQUIRE_FALSE(d.run_in_place);
    CHECK(d.delegate_path == tree.path() / "2_1_0" / "bin" / "oval");
}

TEST_CASE("ovalfile request beats the environment request") {
    TempDir tree;
    ovtest::write_executable(tree / "2_1_0/bin/oval", "#!/bin/sh\nexit 0\n");
    ovtest::write_executable(tree / "2_2_0/bin/oval", "#!/bin/sh\nexit 0\n");
    VersionDecision d =
        determine_version("3_0_0", std::string("2_2_0"), std::string("2_1_0"),
                          tree.path(), "oval", false);
    REQUIRE_FALSE(d.run_in_place);
    CHECK(d.delegate_path == tree.path() / "2_1_0" / "bin" / "oval");
}

TEST_CASE("missing version names the missing path") {
    TempDir tree;
    ovtest::write_executable(tree / "2_1_0/bin/oval", "#!/bin/sh\nexit 0\n");
    try {
        determine_version("3_0_0", std::string("9_9_9"), std::nullopt,
                          tree.path(), "oval", false);
        FAIL("expected an error");
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find((tree.path() / "9_9_9" / "bin").string()) !=
              std::string::npos);
    }
}

TEST_CASE("delegation loop is fatal") {
    TempDir tree;
    ovtest::write_executable(tree / "2_1_0/bin/oval", "#!/bin/sh\nexit 0\n");
    CHECK_THROWS_AS(determine_version("3_0_0", std::string("2_1_0"),
                                      std::nullopt, tree.path(), "oval", true),
                    Error);
}

TEST_CASE("probe order lists seven candidates with a flavor, three without") {
    TempDir tree;
    SiteContext with = make_ctx(tree.path(), "3_0_0", "salty");
    auto cands = customizable_file_candidates("OvalFile", with);
    REQUIRE(cands.size() == 7);
    auto site = tree.path() / "site";
    CHECK(cands[0] == site / "3_0_0" / "salty" / "OvalFile");
    CHECK(cands[1] == site / "OvalFile.3_0_0.salty");
    CHECK(cands[2] == site / "3_0_0" / "OvalFile");
    CHECK(cands[3] == site / "OvalFile.3_0_0");
    CHECK(cands[4] == site / "salty" / "OvalFile");
    CHECK(cands[5] == site / "OvalFile.salty");
    CHECK(cands[6] == site / "OvalFile");

    SiteContext without = make_ctx(tree.path());
    CHECK(customizable_file_candidates("OvalFile", without).size() == 3);
}

TEST_CASE("flavor-suffixed file is found") {
    TempDir tree;
    ovtest::write(tree / "site/OvalFile.salty", "");
    SiteContext ctx = make_ctx(tree.path(), "3_0_0", "salty");
    auto found = resolve_customizable_file("OvalFile", ctx);
    REQUIRE(found.has_value());
    CHECK(*found == tree.path() / "site" / "OvalFile.salty");
}

TEST_CASE("version-and-flavor directory wins over the plain file") {
    TempDir tree;
    ovtest::write(tree / "site/3_0_0/salty/OvalFile", "");
    ovtest::write(tree / "site/OvalFile", "");
    SiteContext ctx = make_ctx(tree.path(), "3_0_0", "salty");
    auto found = resolve_customizable_file("OvalFile", ctx);
    REQUIRE(found.has_value());
    CHECK(*found == tree.path() / "site" / "3_0_0" / "salty" / "OvalFile");
}

TEST_CASE("empty site directory resolves to nothing") {
    TempDir tree;
    SiteContext ctx = make_ctx(tree.path(), "3_0_0", "salty");
    CHECK(resolve_customizable_file("OvalFile", ctx) == std::nullopt);
}

TEST_CASE("adding a more specialized file always takes over") {
    TempDir tree;
    SiteContext ctx = make_ctx(tree.path(), "3_0_0", "salty");
    auto cands = customizable_file_candidates("OvalFile", ctx);
    for (size_t i = cands.size(); i-- > 0;) {
        ovtest::write(cands[i], "");
        auto found = resolve_customizable_file("OvalFile", ctx);
        REQUIRE(found.has_value());
        CHECK(*found == cands[i]);
    }
}

TEST_CASE("site defaults parse the resolved OvalFile") {
    TempDir tree;
    ovtest::write(tree / "site/OvalFile",
                  "<config name=\"build tool\" value=\"scram\">\n");
    ConfigNode node = load_site_defaults(make_ctx(tree.path()));
    REQUIRE(node.directives.size() == 1);
    CHECK(std::get<ConfigDecl>(node.directives[0]) ==
          ConfigDecl{"build tool", "scram"});
}

TEST_CASE("site defaults may carry command options") {
    TempDir tree;
    ovtest::write(tree / "site/OvalFile",
                  "<options command=\"expr\" value=\"-v\">\n");
    ConfigNode node = load_site_defaults(make_ctx(tree.path()));
    REQUIRE(node.directives.size() == 1);
    CHECK(std::get<OptionsDecl>(node.directives[0]) ==
          OptionsDecl{"expr", "-v"});
}

TEST_CASE("absent site file yields an empty node") {
    TempDir tree;
    ConfigNode node = load_site_defaults(make_ctx(tree.path()));
    CHECK(node.directives.empty());
    CHECK(node.environments.empty());
}

TEST_CASE("a broken site file is fatal") {
    TempDir tree;
    ovtest::write(tree / "site/OvalFile", "<config name=\"x\"");
    CHECK_THROWS_AS(load_site_defaults(make_ctx(tree.path())), Error);
}

TEST_CASE("empty oval_dir disables site lookups") {
    SiteContext ctx = make_ctx("");
    CHECK_FALSE(ctx.has_site());
    CHECK(customizable_file_candidates("OvalFile", ctx).empty());
    CHECK(resolve_customizable_file("OvalFile", ctx) == std::nullopt);
    CHECK(load_site_defaults(ctx).directives.empty());
}
