#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aerokin/config.hpp"
#include "aerokin/csv.hpp"

using namespace aerokin;

TEST_CASE("config parses sections of key = value lines") {
    const Config c = Config::parse_string(
        "# comment\n"
        "[setup]\n"
        "L = 1.5\n"
        "name = box a   ; trailing comment\n"
        "\n"
        "[sim]\n"
        "grid = 16\n"
        "seed = 12345678901234\n");
    CHECK(c.get_double("setup", "L") == doctest::Approx(1.5));
    CHECK(c.get("setup", "name") == "box a");
    CHECK(c.get_int("sim", "grid") == 16);
    CHECK(c.get_u64_or("sim", "seed", 0) == 12345678901234ull);
    CHECK(c.get_double_or("sim", "dt", 0.25) == 0.25);
    CHECK_FALSE(c.has("sim", "dt"));
}

TEST_CASE("config errors name the offending key") {
    const Config c = Config::parse_string("[s]\nx = abc\n");
    CHECK_THROWS_WITH_AS(c.get_double("s", "x"),
                         "config: key 'x' is not a number: 'abc'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(c.get("s", "missing"),
                         "config: missing key 'missing' in section [s]", std::invalid_argument);
    CHECK_THROWS_AS(Config::parse_string("[s]\nnokey\n"), std::invalid_argument);
    CHECK_THROWS_AS(Config::parse_string("[s]\nx = 1\nx = 2\n"), std::invalid_argument);
}

TEST_CASE("section prefix listing") {
    const Config c = Config::parse_string("[component.a]\nx0 = 1\n[component.b]\nx0 = 2\n[sim]\n");
    const auto names = c.section_names_with_prefix("component");
    REQUIRE(names.size() == 2);
    CHECK(names[0] == "component.a");
    CHECK(names[1] == "component.b");
}

TEST_CASE("csv doubles round-trip 64-bit values") {
    for (double v : {1.0 / 3.0, 2.963234920351308, 1e-300, -0.0, 123456.789012345678}) {
        const std::string s = csv_double(v);
        CHECK(std::stod(s) == v);
    }
}
