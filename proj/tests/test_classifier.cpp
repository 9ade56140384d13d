#include <doctest.h>

#include <algorithm>

#include "bw/classifier.hpp"
#include "bw/error.hpp"

using namespace bw;

TEST_SUITE("classifier") {

TEST_CASE("table rows against the reference values") {
    auto t = figure1_table(builtin_catalogue());
    REQUIRE(t.rows.size() == 12);
    CHECK_FALSE(t.partial);
    // label, flux, d, multiplicities, residues, admissible
    struct Row {
        const char* key;
        bool flux;
        std::vector<int> m, r;
        bool yes;
    };
    std::vector<Row> fig = {
        {"catenoid", true, {1, 1}, {0, 0}, false},      {"enneper", false, {3}, {2}, false},
        {"trinoid", true, {1, 1, 1}, {0, 0, 0}, false}, {"lopez-i", false, {5}, {4}, false},
        {"lopez-ii", false, {5}, {3}, true},            {"lopez-iii", true, {2, 2}, {1, 1}, false},
        {"lopez-iv", true, {2, 2}, {1, 1}, false},      {"lopez-v", true, {2, 2}, {0, 0}, false},
        {"lopez-vi", true, {1, 3}, {0, 2}, false},      {"lopez-vii", true, {1, 3}, {0, 2}, false},
        {"lopez-viii", false, {1, 3}, {0, 1}, true},    {"lopez-ix", false, {1, 3}, {0, 1}, true},
    };
    for (std::size_t i = 0; i < fig.size(); ++i) {
        const auto& r = t.rows[i];
        CAPTURE(r.key);
        CHECK(r.key == fig[i].key);
        CHECK(r.flux_nonzero == fig[i].flux);
        std::vector<int> ms, rs;
        for (const auto& e : r.ends) {
            ms.push_back(e.m);
            rs.push_back(e.r ? *e.r : -1);
        }
        CHECK(ms == fig[i].m);
        CHECK(rs == fig[i].r);
        CHECK((r.verdict == Verdict::yes) == fig[i].yes);
        CHECK(r.discrepancies.empty());
        CHECK(-4 * r.gauss_degree == (i < 2 ? -4 : -8));
    }
}

TEST_CASE("verdict rule") {
    EndRecord a;
    a.m = 3;
    a.r = 1;
    bool viol = false;
    CHECK(verdict_rule(false, {a}, &viol) == Verdict::yes);
    a.r = 2;
    CHECK(verdict_rule(false, {a}, &viol) == Verdict::no);
    CHECK(viol);
    a.r = 1;
    CHECK(verdict_rule(true, {a}) == Verdict::no);
    a.r.reset();
    CHECK(verdict_rule(false, {a}) == Verdict::indeterminate);
    EndRecord one;
    one.m = 1;
    CHECK(verdict_rule(false, {one}) == Verdict::yes);
}

TEST_CASE("VI family at c = 0 takes r = 1 from the exception") {
    CatalogueParams p;
    p.c = 0.0;
    auto rep = classify(find_entry(builtin_catalogue(p), "lopez-vi"));
    CHECK(rep.verdict == Verdict::no);
    CHECK(rep.discrepancies.empty());
    bool remark = std::any_of(rep.ends.begin(), rep.ends.end(), [](const EndRecord& e) { return e.from_remark; });
    CHECK(remark);
}

TEST_CASE("missing rows") {
    auto cat = builtin_catalogue();
    cat.erase(cat.begin() + 4);
    CHECK_THROWS_AS(figure1_table(cat), Error);
    auto t = figure1_table(cat, true);
    CHECK(t.partial);
    REQUIRE(t.missing.size() == 1);
    CHECK(t.missing[0] == "lopez-ii");
    try {
        figure1_table({}, true);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::incomplete);
    }
}

TEST_CASE("csv layout") {
    auto t = figure1_table({find_entry(builtin_catalogue(), "lopez-ii")}, true);
    CHECK(t.to_csv() ==
          "surface,total_curvature,flux,d,multiplicities,residues,verdict,provenance\n"
          "Lopez surface II,-8pi,No,1,5,3,Yes,computed\n");
}

TEST_CASE("Li-Yau and Gauss-Bonnet bookkeeping") {
    const double pi = 3.14159265358979323846;
    for (int t = 1; t <= 6; ++t) {
        auto l = li_yau_gauss_bonnet(t);
        CHECK(l.willmore == doctest::Approx(4 * pi * t));
        CHECK(l.compact_curvature + l.open_curvature == doctest::Approx(4 * pi));
    }
    CHECK_THROWS_AS(li_yau_gauss_bonnet(0), Error);
}

}
