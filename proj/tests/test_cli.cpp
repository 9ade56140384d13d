#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(BWTOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

int lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify") {
    auto r = run("classify --catalog builtin --format csv");
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 13);
    auto one = run("classify --catalog builtin --only lopez-ii --format csv");
    CHECK(one.code == 0);
    CHECK(one.out.find("Lopez surface II,-8pi,No,1,5,3,Yes,computed") != std::string::npos);
    CHECK(run("classify --input missing.json").code == 2);
    auto js = nlohmann::json::parse(run("classify").out);
    CHECK(js["rows"].size() == 12);
    CHECK(js["match"] == true);
}

TEST_CASE("classify reports a mismatch with exit 1") {
    {
        std::ofstream f("cli_mismatch.json");
        f << R"({"label": "Enneper", "g": {"num": [[0, 0], [1, 0]]}, "omega": {"num": [1]}, "ends": ["inf"],
                 "expected": {"total_curvature_pi": -4, "flux": false, "m": [3], "r": [1], "admissible": true}})";
    }
    CHECK(run("classify --input cli_mismatch.json").code == 1);
    std::remove("cli_mismatch.json");
    {
        std::ofstream f("cli_broken.json");
        f << "{\n \"g\": \n";
    }
    CHECK(run("classify --input cli_broken.json").code == 2);
    std::remove("cli_broken.json");
}

TEST_CASE("verify") {
    CHECK(run("verify --lemma nosuch").code == 64);
    auto r = run("verify --lemma l21l2 --samples 4 --alpha 0.25 --seed 42");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["violations"] == 0);
    CHECK(j["per_sample_slack"].size() == 4);
}

TEST_CASE("neck, lorentz-norm, distrib, expand-end") {
    auto n = nlohmann::json::parse(run("neck --builtin monomial --theta0 3 --rmin 1e-3").out);
    CHECK(n["rounded"] == 2);
    CHECK(std::abs(n["d"].get<double>() - 2.0) < 1e-3);
    auto l = nlohmann::json::parse(run("lorentz-norm --model grad-log --p 2 --q infinity --annulus 1e-4,1").out);
    CHECK(std::abs(l["value"].get<double>() - 3.5449077018110318) < 0.005 * 3.5449077018110318);
    auto d = run("distrib --m 2 --theta0 3 --eps 0.1,0.05,0.025,0.0125");
    CHECK(d.code == 0);
    CHECK(nlohmann::json::parse(d.out).contains("limit"));
    auto e = run("expand-end --only enneper --format csv");
    CHECK(e.code == 0);
    CHECK(e.out.find("inf,3,1,2,") != std::string::npos);
    CHECK(run("neck --builtin nosuch").code == 64);
    CHECK(run("lorentz-norm --no-such-flag").code == 64);
    CHECK(run("").code == 64);
}

TEST_CASE("identical runs are byte-identical") {
    for (const char* a : {"classify --format csv", "verify --lemma schwarz --samples 5", "neck --builtin perturbed --theta0 2"})
        CHECK(run(a).out == run(a).out);
}

}
