#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rhb/config.hpp"

using namespace rhb;

namespace {

const char* sample =
    "# run description\n"
    "[system]\n"
    "name = duffing\n"
    "k = 1.0\n"
    "alpha = 1\n"
    "\n"
    "[method]\n"
    "mode = rhb\n"
    "order = 3\n"
    "; alternative comment style\n"
    "verify = true\n";

}  // namespace

TEST_CASE("config parses sections, keys and types") {
    auto cfg = Config::parse(sample);

    CHECK(cfg.has_section("system"));
    CHECK(cfg.has_section("method"));
    CHECK(!cfg.has_section("output"));

    CHECK(cfg.get("system", "name") == "duffing");
    CHECK(cfg.get_double("system", "k") == 1.0);
    CHECK(cfg.get_int("method", "order") == 3);
    CHECK(cfg.get_bool("method", "verify"));

    CHECK(cfg.get_or("method", "nodes", 11) == 11);
    CHECK(cfg.get_or("system", "k", 5.0) == 1.0);
    CHECK(cfg.get_or("output", "dir", std::string("out")) == "out");

    CHECK(cfg.keys("system") == std::vector<std::string>{"name", "k", "alpha"});

    // raw text round-trips verbatim for header embedding
    CHECK(cfg.raw() == sample);
}

TEST_CASE("config errors carry line anchors") {
    SUBCASE("garbage line") {
        try {
            Config::parse("[a]\nkey = 1\nnonsense\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("entry before section") {
        try {
            Config::parse("key = 1\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("unterminated header") {
        CHECK_THROWS_AS(Config::parse("[sys\n"), ConfigError);
    }
    SUBCASE("duplicate key") {
        try {
            Config::parse("[a]\nx = 1\nx = 2\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("bad number") {
        auto cfg = Config::parse("[a]\nx = abc\n");
        try {
            cfg.get_double("a", "x");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("missing key names the section header line") {
        auto cfg = Config::parse("# intro\n[a]\nx = 1\n");
        try {
            cfg.get("a", "missing");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("missing section") {
        auto cfg = Config::parse("[a]\nx = 1\n");
        CHECK_THROWS_AS(cfg.get("b", "x"), ConfigError);
    }
}

TEST_CASE("config file loading") {
    const char* path = "test_config_tmp.ini";
    {
        std::ofstream out(path, std::ios::binary);
        out << sample;
    }
    auto cfg = Config::parse_file(path);
    CHECK(cfg.get("system", "name") == "duffing");
    CHECK(cfg.raw() == sample);
    std::remove(path);

    CHECK_THROWS_AS(Config::parse_file("does_not_exist.ini"), ConfigError);
}
