#include <doctest.h>

#include "bw/jsonio.hpp"

using namespace bw;

namespace {
Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::usage;
}
}  // namespace

TEST_SUITE("jsonio") {

TEST_CASE("number formatting") {
    CHECK(fmt17(0.1) == "0.10000000000000001");
    CHECK(fmt12(0.1) == "0.1");
    CHECK(dump17(json{{"a", 0.1}, {"b", 2}, {"c", json::array({1.5, true})}}) ==
          "{\n  \"a\": 0.10000000000000001,\n  \"b\": 2,\n  \"c\": [1.5, true]\n}\n");
    CHECK(dump17(json{{"x", std::numeric_limits<double>::infinity()}}) == "{\n  \"x\": \"Infinity\"\n}\n");
}

TEST_CASE("Laurent schema") {
    auto doc = parse_json_text(R"({"log": 2, "coeffs": [[1, 0.5, 0], [-2, 0, 1]]})");
    auto u = laurent_from_json(doc);
    CHECK(u.log_coefficient == 2.0);
    CHECK(u.coeffs.at(1) == cplx(0.5, 0.0));
    CHECK(u.coeffs.at(-2) == cplx(0.0, 1.0));
    auto back = laurent_from_json(parse_json_text(dump17(to_json(u))));
    CHECK(back.coeffs == u.coeffs);
}

TEST_CASE("errors carry line numbers") {
    try {
        parse_json_text("{\n  \"log\": 1,\n  \"coeffs\": [1, 2,\n}", "f.json");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::io);
        CHECK(std::string(e.what()).find("f.json:4:") == 0);
    }
    auto doc = parse_json_text("{\n  \"log\": 0,\n  \"coeffs\": [\n    [1, 0.5, 0],\n    [2, \"x\", 0]\n  ]\n}", "g.json");
    try {
        laurent_from_json(doc);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("g.json:5:") == 0);
    }
    CHECK(code_of([] { read_json_file("definitely_missing.json"); }) == Errc::io);
}

TEST_CASE("surface schema round trip") {
    const char* text = R"({"label": "Enneper", "key": "enn",
        "g": {"num": [[0, 0], [1, 0]]}, "omega": {"num": [1]}, "ends": ["inf"],
        "expected": {"total_curvature_pi": -4, "flux": false, "m": [3], "r": [2], "admissible": false}})";
    auto cat = catalogue_from_json(parse_json_text(text));
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].key == "enn");
    CHECK(cat[0].has_expected);
    auto rep = classify(cat[0]);
    CHECK(rep.discrepancies.empty());
    auto s2 = surface_from_json(parse_json_text(dump17(to_json(*cat[0].surface))));
    CHECK(s2.g.eval(cplx(0.3, 0.2)) == cat[0].surface->g.eval(cplx(0.3, 0.2)));
    CHECK(s2.ends.size() == 1);
    CHECK(s2.ends[0].infinity);
}

TEST_CASE("exit codes") {
    CHECK(exit_code(Errc::io) == 2);
    CHECK(exit_code(Errc::usage) == 64);
    CHECK(exit_code(Errc::integrality) == 1);
    CHECK(std::string(errc_name(Errc::scale)) == "scale");
}

}
