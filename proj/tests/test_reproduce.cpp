#include "doctest.h"

#include <fstream>
#include <sstream>

#include "fgl/reproduce.hpp"

using namespace fgl;

namespace {

std::string fixture_text()
{
    std::ifstream in(FGL_FIXTURES_PATH);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("reproduce") {

TEST_CASE("fixture file loads, ids unique and sorted")
{
    const auto fx = load_fixtures(fixture_text());
    CHECK(fx.size() >= 60);
    for (std::size_t i = 1; i < fx.size(); ++i)
        CHECK(fx[i - 1].id < fx[i].id);
}

TEST_CASE("malformed fixture files are rejected")
{
    CHECK_THROWS_AS(load_fixtures("{"), DomainError);
    CHECK_THROWS_AS(load_fixtures(R"J({"fixtures": 3})J"), DomainError);
    CHECK_THROWS_AS(load_fixtures(R"J({"fixtures": [{"id": "a"}]})J"), DomainError);
    const std::string dup =
        R"J({"fixtures": [{"id":"a","group":"g","location":"l","kind":"witt","params":{"n":1},"expected":"x + y"},
                         {"id":"a","group":"g","location":"l","kind":"witt","params":{"n":1},"expected":"x + y"}]})J";
    CHECK_THROWS_AS(load_fixtures(dup), DomainError);
}

TEST_CASE("a corrupted expectation fails with both sides shown")
{
    const auto fx = load_fixtures(
        R"J({"fixtures": [{"id":"w2","group":"morava","location":"W^(2)","kind":"witt","params":{"n":2},"expected":"x*y"}]})J");
    const auto rep = reproduce(fx, 0);
    REQUIRE(rep.total() == 1);
    CHECK(rep.passed() == 0);
    const auto text = rep.to_text();
    CHECK(text.find("FAIL w2") != std::string::npos);
    CHECK(text.find("expected: x*y") != std::string::npos);
    CHECK(text.find("computed: -x*y") != std::string::npos);
    CHECK(text.find("summary: 0/1") != std::string::npos);
}

TEST_CASE("unknown kinds and bad parameters are reported per fixture")
{
    const auto fx = load_fixtures(
        R"J({"fixtures": [{"id":"k","group":"g","location":"l","kind":"nope","params":{},"expected":"0"},
                         {"id":"p","group":"g","location":"l","kind":"witt","params":{"n":"two"},"expected":"0"}]})J");
    const auto rep = reproduce(fx, 0);
    CHECK(rep.passed() == 0);
    for (const auto& r : rep.results)
        CHECK_FALSE(r.error.empty());
}

TEST_CASE("equivalent texts compare equal")
{
    const auto fx = load_fixtures(
        R"J({"fixtures": [{"id":"m2","group":"abel","location":"m_2","kind":"abel_log","params":{"k":2},"expected":"(a1^2 - a2)/3"}]})J");
    const auto rep = reproduce(fx, 0);
    CHECK(rep.all_pass());
    CHECK(rep.results[0].expected == rep.results[0].computed);
}

}
